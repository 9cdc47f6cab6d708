#include "sloml/codegen.hpp"

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sloml/errors.hpp"

namespace sloml {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

TemplateSet TemplateSet::load(const std::string& dir) {
    TemplateSet set;
    if (!fs::is_directory(dir))
        throw CodegenError("template directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file);
        ordered_json root = ordered_json::parse(in, nullptr, false);
        if (root.is_discarded() || !root.is_object() ||
            !root.contains("catalog_provider") || !root.contains("provider") ||
            !root.contains("resources"))
            throw CodegenError("malformed template file: " + file.string());
        ProviderTemplate tmpl;
        tmpl.provider_name = root["provider"].value("name", "");
        if (tmpl.provider_name.empty())
            throw CodegenError("template missing provider.name: " + file.string());
        if (root["provider"].contains("attributes"))
            for (const auto& [k, v] : root["provider"]["attributes"].items())
                tmpl.provider_attributes.emplace_back(k, v.get<std::string>());
        for (const auto& [type, r] : root["resources"].items()) {
            ResourceTemplate rt;
            rt.block_type = r.value("block_type", "");
            if (rt.block_type.empty())
                throw CodegenError("resource template for '" + type +
                                   "' missing block_type in " + file.string());
            if (r.contains("defaults"))
                for (const auto& [k, v] : r["defaults"].items())
                    rt.defaults.emplace_back(k, v.get<std::string>());
            tmpl.resources.emplace(type, std::move(rt));
        }
        set.add(root["catalog_provider"].get<std::string>(), std::move(tmpl));
    }
    return set;
}

void TemplateSet::add(const std::string& catalog_provider, ProviderTemplate tmpl) {
    templates_[catalog_provider] = std::move(tmpl);
}

const ProviderTemplate* TemplateSet::find(const std::string& catalog_provider) const {
    auto it = templates_.find(catalog_provider);
    return it == templates_.end() ? nullptr : &it->second;
}

std::string sanitize_resource_name(const std::string& id) {
    std::string out;
    out.reserve(id.size());
    for (char c : id) {
        const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out += (std::islower(static_cast<unsigned char>(lc)) ||
                std::isdigit(static_cast<unsigned char>(lc)))
                   ? lc
                   : '_';
    }
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
        out.insert(out.begin(), '_');
    return out;
}

namespace {

std::string expand(const std::string& tmpl, const ServiceOffering& off,
                   const std::string& component_id) {
    std::string out = tmpl;
    auto replace_all = [&out](const std::string& token, const std::string& value) {
        size_t pos = 0;
        while ((pos = out.find(token, pos)) != std::string::npos) {
            out.replace(pos, token.size(), value);
            pos += value.size();
        }
    };
    replace_all("{region}", off.region);
    replace_all("{service_id}", off.service_id);
    replace_all("{component}", component_id);
    return out;
}

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace

DeploymentArtifact generate_hcl(const SelectionPlan& plan, const SloDocument& doc,
                                const TemplateSet& templates) {
    if (!plan.infeasible_components.empty() || plan.combination.assignment.empty())
        throw CodegenError("cannot generate code for an infeasible or empty plan");

    DeploymentArtifact artifact;
    artifact.generated_at = now_iso8601();

    // One provider block per distinct provider, in provider-name order.
    std::map<std::string, const ServiceOffering*> providers;
    for (const auto& [id, off] : plan.combination.assignment)
        providers.emplace(off.provider, &off);

    std::ostringstream hcl;
    hcl << "# Deployment generated from a service selection plan.\n"
        << "# Edit freely; defaults come from the provider templates.\n\n";

    for (const auto& [provider, off] : providers) {
        const ProviderTemplate* tmpl = templates.find(provider);
        if (!tmpl) throw CodegenError("no template for provider '" + provider + "'");
        hcl << "provider \"" << tmpl->provider_name << "\" {\n";
        for (const auto& [k, v] : tmpl->provider_attributes)
            hcl << "  " << k << " = \"" << expand(v, *off, "") << "\"\n";
        hcl << "}\n\n";
    }

    for (const auto& [id, off] : plan.combination.assignment) {
        const ProviderTemplate* tmpl = templates.find(off.provider);
        auto doc_it = doc.components.find(id);
        const std::string type =
            doc_it != doc.components.end() ? doc_it->second.type() : off.serves_type;
        auto res_it = tmpl->resources.find(type);
        if (res_it == tmpl->resources.end()) res_it = tmpl->resources.find("*");
        if (res_it == tmpl->resources.end())
            throw CodegenError("provider '" + off.provider +
                               "' has no resource template for type '" + type + "'");
        const ResourceTemplate& rt = res_it->second;
        const std::string name = sanitize_resource_name(id);
        hcl << "resource \"" << rt.block_type << "\" \"" << name << "\" {\n";
        hcl << "  # service: " << off.provider << " / " << off.service_id << " / "
            << off.region << "\n";
        hcl << "  region = \"" << off.region << "\"\n";
        for (const auto& [k, v] : rt.defaults)
            hcl << "  " << k << " = \"" << expand(v, off, name) << "\"\n";
        hcl << "}\n\n";

        artifact.manifest.emplace(id,
                                  ManifestEntry{off.provider, off.service_id, off.region});
    }

    artifact.hcl_text = hcl.str();
    return artifact;
}

DeployReport dry_run_deploy(const DeploymentArtifact& artifact) {
    DeployReport report;
    std::set<std::string> resource_names;

    int depth = 0;
    int line_no = 0;
    std::istringstream in(artifact.hcl_text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        // Trim.
        size_t b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        std::string body = line.substr(b, e - b + 1);
        if (body.empty() || body[0] == '#') continue;

        // Unescaped quotes must balance per line.
        int quotes = 0;
        for (size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '\\') { ++i; continue; }
            if (body[i] == '"') ++quotes;
        }
        if (quotes % 2 != 0) {
            report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                      "unbalanced quotes"});
            continue;
        }

        if (body == "}") {
            if (--depth < 0) {
                report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                          "unmatched closing brace"});
                depth = 0;
            }
            continue;
        }

        if (body.back() == '{') {
            // Block header: ident ("label")* {
            std::istringstream hs(body.substr(0, body.size() - 1));
            std::string ident;
            hs >> ident;
            std::vector<std::string> labels;
            std::string tok;
            bool header_ok = !ident.empty();
            while (hs >> tok) {
                if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
                    labels.push_back(tok.substr(1, tok.size() - 2));
                else
                    header_ok = false;
            }
            if (!header_ok) {
                report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                          "malformed block header"});
            } else if (depth == 0 && ident == "resource") {
                if (labels.size() != 2)
                    report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                              "resource block needs type and name labels"});
                else {
                    if (!resource_names.insert(labels[1]).second)
                        report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                                  "duplicate resource name '" +
                                                      labels[1] + "'"});
                    ++report.resource_blocks;
                }
            } else if (depth == 0 && ident == "provider") {
                if (labels.size() != 1)
                    report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                              "provider block needs one name label"});
                else
                    ++report.provider_blocks;
            } else if (depth == 0) {
                report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                          "unknown top-level block '" + ident + "'"});
            }
            ++depth;
            continue;
        }

        // Attribute line: ident = value
        if (depth == 0) {
            report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                      "attribute outside any block"});
            continue;
        }
        const size_t eq = body.find('=');
        bool attr_ok = eq != std::string::npos && eq > 0;
        if (attr_ok) {
            const std::string key = body.substr(0, body.find_last_not_of(" \t", eq - 1) + 1);
            for (char c : key)
                if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                    attr_ok = false;
            const size_t v = body.find_first_not_of(" \t", eq + 1);
            if (v == std::string::npos || body[v] == '=') attr_ok = false;
        }
        if (!attr_ok)
            report.defects.push_back({line_no, static_cast<int>(b) + 1,
                                      "malformed attribute line"});
    }
    if (depth != 0)
        report.defects.push_back({line_no, 1, "unbalanced braces at end of file"});

    // Manifest <-> resource correspondence, both directions.
    std::set<std::string> manifest_names;
    for (const auto& [id, entry] : artifact.manifest) {
        const std::string name = sanitize_resource_name(id);
        manifest_names.insert(name);
        if (!resource_names.count(name))
            report.defects.push_back({0, 0,
                                      "manifest component '" + id +
                                          "' has no resource block"});
    }
    for (const auto& name : resource_names)
        if (!manifest_names.count(name))
            report.defects.push_back({0, 0,
                                      "resource '" + name + "' missing from manifest"});
    return report;
}

std::string serialize_manifest(const DeploymentArtifact& artifact) {
    ordered_json root;
    root["generated_at"] = artifact.generated_at;
    ordered_json components;
    for (const auto& [id, entry] : artifact.manifest)
        components[id] = {{"provider", entry.provider},
                          {"service_id", entry.service_id},
                          {"region", entry.region}};
    root["components"] = std::move(components);
    return root.dump(4);
}

void write_artifact(const DeploymentArtifact& artifact, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream tf(fs::path(out_dir) / "main.tf", std::ios::binary);
    tf << artifact.hcl_text;
    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    mf << serialize_manifest(artifact) << "\n";
}

} // namespace sloml
