#include "sloml/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sloml/errors.hpp"
#include "sloml/parser.hpp"

namespace sloml {

using nlohmann::json;
using nlohmann::ordered_json;

Catalog parse_catalog(const std::string& text, const SloRegistry& registry,
                      const std::string& source_path) {
    const json root = json::parse(strip_comments(text), nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw CatalogError("malformed catalog JSON in " + source_path);
    if (!root.contains("offerings") || !root["offerings"].is_array())
        throw CatalogError("catalog has no offerings array: " + source_path);

    Catalog catalog;
    catalog.source_path = source_path;
    if (root.contains("version")) catalog.version = root["version"].dump();

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (const json& o : root["offerings"]) {
        ServiceOffering off;
        auto str = [&](const char* field) -> std::string {
            if (!o.contains(field) || !o[field].is_string())
                throw CatalogError("offering missing string field '" +
                                   std::string(field) + "' in " + source_path);
            return o[field].get<std::string>();
        };
        off.provider = str("provider");
        off.service_id = str("service_id");
        off.region = str("region");
        off.serves_type = str("serves_type");
        const std::string label =
            off.provider + "/" + off.service_id + "/" + off.region;
        if (!seen.insert({off.provider, off.service_id, off.region}).second)
            throw CatalogError("duplicate offering " + label);
        if (o.contains("egress_price_per_gb")) {
            if (!o["egress_price_per_gb"].is_number())
                throw CatalogError("non-numeric egress_price_per_gb in " + label);
            off.egress_price_per_gb = o["egress_price_per_gb"].get<double>();
        }
        if (o.contains("slos")) {
            if (!o["slos"].is_object())
                throw CatalogError("slos must be an object in " + label);
            for (const auto& [name, sv] : o["slos"].items()) {
                const SloDefinition* def = registry.lookup(name);
                if (!def)
                    throw CatalogError("unknown SLO name '" + name + "' in " + label);
                if (!sv.is_object() || !sv.contains("value") || !sv["value"].is_number() ||
                    !sv.contains("unit") || !sv["unit"].is_string())
                    throw CatalogError("SLO '" + name + "' in " + label +
                                       " must be {\"value\": number, \"unit\": string}");
                const double value = sv["value"].get<double>();
                if (!std::isfinite(value))
                    throw CatalogError("non-finite SLO value for '" + name + "' in " + label);
                const std::string symbol = sv["unit"].get<std::string>();
                const auto unit = find_unit(symbol);
                if (!unit)
                    throw CatalogError("unknown unit '" + symbol + "' for SLO '" +
                                       name + "' in " + label);
                if (unit->kind != def->allowed_unit_kind)
                    throw CatalogError("unit '" + symbol + "' has the wrong kind for SLO '" +
                                       name + "' in " + label);
                off.offered_slos[name] = to_base(value, *unit);
            }
        }
        catalog.offerings.push_back(std::move(off));
    }
    if (catalog.offerings.empty())
        throw CatalogError("catalog is empty: " + source_path);
    return catalog;
}

Catalog load_catalog(const std::string& path, const SloRegistry& registry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError("cannot open catalog file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), registry, path);
}

std::string base_unit_symbol(UnitKind kind) {
    switch (kind) {
        case UnitKind::time: return "s";
        case UnitKind::data_size: return "GB";
        case UnitKind::currency: return "$";
        case UnitKind::percentage: return "%";
        case UnitKind::dimensionless: return "";
    }
    return "";
}

std::string serialize_catalog(const Catalog& catalog, const SloRegistry& registry) {
    ordered_json root;
    root["version"] = json::parse(catalog.version.empty() ? "\"1\"" : catalog.version);
    ordered_json offerings = ordered_json::array();
    for (const auto& off : catalog.offerings) {
        ordered_json o;
        o["provider"] = off.provider;
        o["service_id"] = off.service_id;
        o["region"] = off.region;
        o["serves_type"] = off.serves_type;
        o["egress_price_per_gb"] = off.egress_price_per_gb;
        ordered_json slos = ordered_json::object();
        for (const auto& [name, value] : off.offered_slos) {
            const SloDefinition* def = registry.lookup(name);
            const UnitKind kind = def ? def->allowed_unit_kind : UnitKind::dimensionless;
            slos[name] = {{"value", value}, {"unit", base_unit_symbol(kind)}};
        }
        o["slos"] = std::move(slos);
        offerings.push_back(std::move(o));
    }
    root["offerings"] = std::move(offerings);
    root["monitoring"] = ordered_json::array(); // schema reserved
    return root.dump(4);
}

std::vector<ServiceOffering> candidates_for(const Catalog& catalog,
                                            const ComponentSpec& component) {
    std::vector<ServiceOffering> out;
    const std::string& type = component.type();
    for (const auto& off : catalog.offerings)
        if (off.serves_type == type) out.push_back(off);
    std::sort(out.begin(), out.end(),
              [](const ServiceOffering& a, const ServiceOffering& b) {
                  return a.key() < b.key();
              });
    return out;
}

double percentile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values.front();
    const double h = p * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(h));
    const size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

SloRequirement resolve_categorical(const SloRequirement& req,
                                   const std::vector<ServiceOffering>& candidates,
                                   const SloRegistry& registry) {
    const auto& cat = std::get<CategoricalValue>(req.value);
    std::vector<double> pool;
    for (const auto& off : candidates) {
        auto it = off.offered_slos.find(req.slo_name);
        if (it != off.offered_slos.end()) pool.push_back(it->second);
    }
    if (pool.empty()) throw UnresolvableCategory(req.slo_name);

    double p = 0.5;
    if (cat.label == CategoryLabel::low) p = 0.25;
    else if (cat.label == CategoryLabel::high) p = 0.75;

    const SloDefinition* def = registry.lookup(req.slo_name);
    SloRequirement out = req;
    // Threshold is computed over base-unit pool values; keep the result in
    // base units so required_in_base() stays correct.
    out.value = ScalarValue{percentile(pool, p)};
    out.unit = Unit{out.unit.symbol, out.unit.kind, 1.0};
    out.op = (def && def->direction == Direction::lower_is_better) ? Operator::LEQ
                                                                   : Operator::GEQ;
    return out;
}

} // namespace sloml
