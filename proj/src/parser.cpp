#include "sloml/parser.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace sloml {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(ValidationStage stage) {
    switch (stage) {
        case ValidationStage::syntax: return "syntax";
        case ValidationStage::unit: return "unit";
        case ValidationStage::consistency: return "consistency";
    }
    return "?";
}

std::string strip_comments(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            out += c;
            if (c == '\\' && i + 1 < text.size()) {
                out += text[++i];
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
            out += c;
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            if (i < text.size()) out += '\n';
            continue;
        }
        out += c;
    }
    return out;
}

namespace {

// Listing-style documents write numbers as strings ("0.9999"); accept both.
std::optional<double> as_number(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s.empty()) return std::nullopt;
        try {
            size_t pos = 0;
            const double x = std::stod(s, &pos);
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos != s.size()) return std::nullopt;
            return x;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<SloValue> parse_value(const json& v, ValidationReport& report,
                                    const std::string& path) {
    if (v.is_array()) {
        if (v.size() != 2) {
            report.add(ValidationStage::syntax, path,
                       "interval value must have exactly two bounds");
            return std::nullopt;
        }
        auto lo = as_number(v[0]);
        auto hi = as_number(v[1]);
        if (!lo || !hi || !std::isfinite(*lo) || !std::isfinite(*hi)) {
            report.add(ValidationStage::syntax, path,
                       "interval bounds must be finite numbers");
            return std::nullopt;
        }
        if (*lo > *hi) {
            report.add(ValidationStage::syntax, path,
                       "interval lower bound exceeds upper bound");
            return std::nullopt;
        }
        return SloValue{IntervalValue{*lo, *hi}};
    }
    if (v.is_string()) {
        if (auto label = parse_category(v.get<std::string>()))
            return SloValue{CategoricalValue{*label}};
    }
    if (auto x = as_number(v)) {
        if (!std::isfinite(*x)) {
            report.add(ValidationStage::syntax, path, "value must be finite");
            return std::nullopt;
        }
        return SloValue{ScalarValue{*x}};
    }
    report.add(ValidationStage::syntax, path,
               "value must be a number, a numeric string, an interval array, "
               "or one of low/medium/high");
    return std::nullopt;
}

std::optional<SloRequirement> parse_slo_entry(const json& entry,
                                              const SloRegistry& registry,
                                              ValidationReport& report,
                                              const std::string& path) {
    if (!entry.is_object()) {
        report.add(ValidationStage::syntax, path, "SLO entry must be an object");
        return std::nullopt;
    }
    static const std::set<std::string> allowed = {"name", "value", "operator", "unit"};
    bool ok = true;
    for (const auto& [key, _] : entry.items()) {
        if (!allowed.count(key)) {
            report.add(ValidationStage::syntax, path + "." + key,
                       "invalid element key '" + key + "'");
            ok = false;
        }
    }
    for (const auto& key : allowed) {
        if (!entry.contains(key)) {
            report.add(ValidationStage::syntax, path,
                       "missing element key '" + key + "'");
            ok = false;
        }
    }
    if (!ok) return std::nullopt;

    SloRequirement req;

    if (!entry["name"].is_string()) {
        report.add(ValidationStage::syntax, path + ".name", "SLO name must be a string");
        return std::nullopt;
    }
    req.slo_name = entry["name"].get<std::string>();
    if (!registry.lookup(req.slo_name)) {
        report.add(ValidationStage::syntax, path + ".name",
                   "unknown SLO name '" + req.slo_name + "'");
        ok = false;
    }

    if (!entry["operator"].is_string()) {
        report.add(ValidationStage::syntax, path + ".operator",
                   "operator must be a string");
        ok = false;
    } else {
        const std::string token = entry["operator"].get<std::string>();
        if (auto op = parse_operator(token)) {
            req.op = *op;
        } else {
            report.add(ValidationStage::syntax, path + ".operator",
                       "invalid operator token '" + token + "'");
            ok = false;
        }
    }

    if (!entry["unit"].is_string()) {
        report.add(ValidationStage::syntax, path + ".unit", "unit must be a string");
        ok = false;
    } else {
        const std::string symbol = entry["unit"].get<std::string>();
        if (auto unit = find_unit(symbol)) {
            req.unit = *unit;
        } else {
            report.add(ValidationStage::syntax, path + ".unit",
                       "invalid SLO unit '" + symbol + "'");
            ok = false;
        }
    }

    auto value = parse_value(entry["value"], report, path + ".value");
    if (!value) return std::nullopt;
    req.value = *value;

    if (ok && !operator_accepts(req.op, req.value)) {
        report.add(ValidationStage::syntax, path + ".operator",
                   "operator '" + to_token(req.op) + "' is not applicable to this value kind");
        ok = false;
    }
    if (!ok) return std::nullopt;
    return req;
}

std::vector<SloRequirement> parse_slo_list(const json& arr, const SloRegistry& registry,
                                           ValidationReport& report,
                                           const std::string& path) {
    std::vector<SloRequirement> out;
    if (!arr.is_array()) {
        report.add(ValidationStage::syntax, path, "SLOs must be an array");
        return out;
    }
    for (size_t i = 0; i < arr.size(); ++i) {
        if (auto req = parse_slo_entry(arr[i], registry, report,
                                       path + "[" + std::to_string(i) + "]")) {
            req->source_index = static_cast<int>(i);
            out.push_back(std::move(*req));
        }
    }
    return out;
}

} // namespace

ParseResult parse_slo(const std::string& text, const SloRegistry& registry) {
    ParseResult result;
    ValidationReport& report = result.report;

    const json root = json::parse(strip_comments(text), nullptr, false);
    if (root.is_discarded()) {
        report.add(ValidationStage::syntax, "$", "malformed JSON");
        return result;
    }
    if (!root.is_object()) {
        report.add(ValidationStage::syntax, "$", "top-level value must be an object");
        return result;
    }

    SloDocument& doc = result.partial;

    for (const auto& [key, value] : root.items()) {
        const std::string path = "$." + key;
        if (key == "application") {
            if (!value.is_object() || !value.contains("SLOs")) {
                report.add(ValidationStage::syntax, path,
                           "application must be an object with an SLOs array");
                continue;
            }
            for (const auto& [akey, _] : value.items()) {
                if (akey != "SLOs")
                    report.add(ValidationStage::syntax, path + "." + akey,
                               "invalid element key '" + akey + "'");
            }
            doc.application_slos =
                parse_slo_list(value["SLOs"], registry, report, path + ".SLOs");
            continue;
        }
        if (key == "data_flow") {
            if (!value.is_array()) {
                report.add(ValidationStage::syntax, path, "data_flow must be an array");
                continue;
            }
            for (size_t i = 0; i < value.size(); ++i) {
                const std::string epath = path + "[" + std::to_string(i) + "]";
                const json& edge = value[i];
                if (!edge.is_object() || !edge.contains("from") || !edge.contains("to") ||
                    !edge["from"].is_string() || !edge["to"].is_string()) {
                    report.add(ValidationStage::syntax, epath,
                               "data_flow entry must be {\"from\": ..., \"to\": ...}");
                    continue;
                }
                doc.data_flow.push_back(
                    {edge["from"].get<std::string>(), edge["to"].get<std::string>()});
            }
            continue;
        }

        // Any other top-level key declares a component.
        if (key.empty()) {
            report.add(ValidationStage::syntax, "$", "component id must be non-empty");
            continue;
        }
        if (!value.is_object()) {
            report.add(ValidationStage::syntax, path, "component must be an object");
            continue;
        }
        ComponentSpec comp;
        bool comp_ok = true;
        for (const auto& [ckey, cval] : value.items()) {
            if (ckey == "SLOs") {
                comp.slos = parse_slo_list(cval, registry, report, path + ".SLOs");
            } else if (ckey == "config") {
                if (!cval.is_object()) {
                    report.add(ValidationStage::syntax, path + ".config",
                               "config must be an object");
                    comp_ok = false;
                    continue;
                }
                for (const auto& [k, v] : cval.items()) {
                    if (v.is_string()) comp.config[k] = v.get<std::string>();
                    else comp.config[k] = v.dump();
                }
            } else {
                report.add(ValidationStage::syntax, path + "." + ckey,
                           "invalid element key '" + ckey + "'");
                comp_ok = false;
            }
        }
        if (!comp.config.count("type") || comp.config["type"].empty()) {
            report.add(ValidationStage::syntax, path + ".config.type",
                       "component must declare a non-empty config.type");
            comp_ok = false;
        }
        if (comp_ok || !comp.slos.empty()) doc.components.emplace(key, std::move(comp));
    }

    if (doc.components.empty())
        report.add(ValidationStage::syntax, "$", "no components declared");

    for (size_t i = 0; i < doc.data_flow.size(); ++i) {
        const auto& edge = doc.data_flow[i];
        const std::string epath = "$.data_flow[" + std::to_string(i) + "]";
        if (!doc.components.count(edge.from))
            report.add(ValidationStage::syntax, epath + ".from",
                       "data_flow endpoint '" + edge.from + "' is not a declared component");
        if (!doc.components.count(edge.to))
            report.add(ValidationStage::syntax, epath + ".to",
                       "data_flow endpoint '" + edge.to + "' is not a declared component");
    }

    if (report.is_valid()) result.document = result.partial;
    return result;
}

namespace {

ordered_json value_to_json(const SloValue& value) {
    if (const auto* s = std::get_if<ScalarValue>(&value)) return s->value;
    if (const auto* iv = std::get_if<IntervalValue>(&value))
        return ordered_json::array({iv->lower, iv->upper});
    return to_string(std::get<CategoricalValue>(value).label);
}

ordered_json slo_to_json(const SloRequirement& req) {
    ordered_json j;
    j["unit"] = req.unit.symbol;
    j["name"] = req.slo_name;
    j["value"] = value_to_json(req.value);
    j["operator"] = to_token(req.op);
    return j;
}

} // namespace

std::string serialize(const SloDocument& doc) {
    ordered_json root;
    for (const auto& [id, comp] : doc.components) {
        ordered_json c;
        ordered_json slos = ordered_json::array();
        for (const auto& req : comp.slos) slos.push_back(slo_to_json(req));
        c["SLOs"] = std::move(slos);
        ordered_json config;
        for (const auto& [k, v] : comp.config) config[k] = v;
        c["config"] = std::move(config);
        root[id] = std::move(c);
    }
    if (!doc.application_slos.empty()) {
        ordered_json slos = ordered_json::array();
        for (const auto& req : doc.application_slos) slos.push_back(slo_to_json(req));
        root["application"]["SLOs"] = std::move(slos);
    }
    if (!doc.data_flow.empty()) {
        ordered_json edges = ordered_json::array();
        for (const auto& edge : doc.data_flow)
            edges.push_back({{"from", edge.from}, {"to", edge.to}});
        root["data_flow"] = std::move(edges);
    }
    return root.dump(4);
}

ValidationReport validate_units(const SloDocument& doc, const SloRegistry& registry) {
    ValidationReport report;
    auto check = [&](const SloRequirement& req, const std::string& path) {
        const SloDefinition* def = registry.lookup(req.slo_name);
        if (!def) return; // unknown names are a syntax-stage concern
        if (req.unit.kind != def->allowed_unit_kind) {
            report.add(ValidationStage::unit, path + ".unit",
                       "the unit '" + req.unit.symbol + "' (" + to_string(req.unit.kind) +
                       ") cannot be used with the '" + req.slo_name + "' SLO (expects " +
                       to_string(def->allowed_unit_kind) + ")");
        }
    };
    auto index_of = [](const SloRequirement& req, size_t fallback) {
        return std::to_string(req.source_index >= 0
                                  ? static_cast<size_t>(req.source_index)
                                  : fallback);
    };
    for (const auto& [id, comp] : doc.components)
        for (size_t i = 0; i < comp.slos.size(); ++i)
            check(comp.slos[i], "$." + id + ".SLOs[" + index_of(comp.slos[i], i) + "]");
    for (size_t i = 0; i < doc.application_slos.size(); ++i)
        check(doc.application_slos[i],
              "$.application.SLOs[" + index_of(doc.application_slos[i], i) + "]");
    return report;
}

ValidationReport validate_consistency(const SloDocument& doc, const TopologyModel& topo) {
    ValidationReport report;
    std::set<std::string> topo_ids;
    for (const auto& c : topo.components) topo_ids.insert(c.id);

    for (const auto& [id, comp] : doc.components) {
        if (!topo_ids.count(id))
            report.add(ValidationStage::consistency, "$." + id,
                       "component '" + id + "' not in topology");
    }
    std::set<std::pair<std::string, std::string>> topo_edges;
    for (const auto& e : topo.edges) topo_edges.insert({e.from, e.to});
    for (size_t i = 0; i < doc.data_flow.size(); ++i) {
        const auto& e = doc.data_flow[i];
        if (!topo_edges.count({e.from, e.to}))
            report.add(ValidationStage::consistency,
                       "$.data_flow[" + std::to_string(i) + "]",
                       "data flow '" + e.from + "' -> '" + e.to +
                       "' has no matching topology edge");
    }
    for (const auto& c : topo.components) {
        auto it = doc.components.find(c.id);
        if (it == doc.components.end() || it->second.slos.empty())
            report.add(ValidationStage::consistency, "$." + c.id,
                       "topology component '" + c.id +
                       "' has no SLOs; it will be deployable with no constraints",
                       Severity::warning);
    }
    return report;
}

TopologyModel derive_topology(const SloDocument& doc) {
    TopologyModel topo;
    for (const auto& [id, comp] : doc.components) {
        auto it = comp.config.find("type");
        topo.components.push_back({id, it == comp.config.end() ? "" : it->second});
    }
    topo.edges = doc.data_flow;
    return topo;
}

TopologyParseResult parse_topology(const std::string& text) {
    TopologyParseResult result;
    const json root = json::parse(strip_comments(text), nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        result.report.add(ValidationStage::syntax, "$", "malformed topology JSON");
        return result;
    }
    TopologyModel topo;
    std::set<std::string> seen;
    if (root.contains("components") && root["components"].is_array()) {
        for (size_t i = 0; i < root["components"].size(); ++i) {
            const json& c = root["components"][i];
            const std::string path = "$.components[" + std::to_string(i) + "]";
            if (!c.is_object() || !c.contains("id") || !c["id"].is_string()) {
                result.report.add(ValidationStage::syntax, path,
                                  "topology component must have a string id");
                continue;
            }
            const std::string id = c["id"].get<std::string>();
            if (!seen.insert(id).second) {
                result.report.add(ValidationStage::syntax, path,
                                  "duplicate topology component id '" + id + "'");
                continue;
            }
            std::string kind;
            if (c.contains("type") && c["type"].is_string())
                kind = c["type"].get<std::string>();
            topo.components.push_back({id, kind});
        }
    } else {
        result.report.add(ValidationStage::syntax, "$.components",
                          "topology must declare a components array");
    }
    if (root.contains("edges")) {
        if (!root["edges"].is_array()) {
            result.report.add(ValidationStage::syntax, "$.edges",
                              "edges must be an array");
        } else {
            for (size_t i = 0; i < root["edges"].size(); ++i) {
                const json& e = root["edges"][i];
                const std::string path = "$.edges[" + std::to_string(i) + "]";
                if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
                    !e["from"].is_string() || !e["to"].is_string()) {
                    result.report.add(ValidationStage::syntax, path,
                                      "edge must be {\"from\": ..., \"to\": ...}");
                    continue;
                }
                topo.edges.push_back(
                    {e["from"].get<std::string>(), e["to"].get<std::string>()});
            }
        }
    }
    if (result.report.is_valid()) result.topology = std::move(topo);
    return result;
}

ValidationReport validate_all(const std::string& text, const SloRegistry& registry,
                              const TopologyModel* topology) {
    ParseResult parsed = parse_slo(text, registry);
    ValidationReport report = parsed.report;
    const SloDocument& doc = parsed.document ? *parsed.document : parsed.partial;
    report.merge(validate_units(doc, registry));
    const TopologyModel derived = derive_topology(doc);
    report.merge(validate_consistency(doc, topology ? *topology : derived));
    return report;
}

} // namespace sloml
