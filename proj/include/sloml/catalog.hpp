#pragma once

#include <map>
#include <string>
#include <vector>

#include "sloml/document.hpp"
#include "sloml/slo_model.hpp"

namespace sloml {

/// One catalog entry. Offered SLO values are normalized to base units at
/// load time. An absent SLO means "no SLA support", never a default.
struct ServiceOffering {
    std::string provider;
    std::string service_id;
    std::string region;
    std::string serves_type;
    std::map<std::string, double> offered_slos; // slo name -> value in base unit
    double egress_price_per_gb{0.0};

    auto key() const { return std::tie(provider, service_id, region); }
};

struct Catalog {
    std::vector<ServiceOffering> offerings;
    std::string source_path;
    std::string version;
};

/// Loads and checks a catalog file. Throws CatalogError on an empty
/// offerings list, a duplicate (provider, service_id, region) triple, an
/// unknown SLO name, or an unknown/mismatched unit.
Catalog load_catalog(const std::string& path, const SloRegistry& registry);

/// Same, from in-memory JSON text.
Catalog parse_catalog(const std::string& text, const SloRegistry& registry,
                      const std::string& source_path = "<memory>");

/// Offered values are stored in base units, so re-serialization emits base
/// unit symbols; load -> serialize -> load is idempotent.
std::string serialize_catalog(const Catalog& catalog, const SloRegistry& registry);

/// Symbol of the base unit of a kind ("s", "GB", "$", "%", "").
std::string base_unit_symbol(UnitKind kind);

/// Offerings serving the component's config.type, in (provider, service_id,
/// region) lexicographic order. Empty result is not an error.
std::vector<ServiceOffering> candidates_for(const Catalog& catalog,
                                            const ComponentSpec& component);

/// Percentile with linear interpolation between order statistics
/// (0 <= p <= 1). Precondition: values non-empty.
double percentile(std::vector<double> values, double p);

/// Rewrites a categorical requirement as a scalar one. low/medium/high map
/// to the 25th/50th/75th percentile of the candidate pool's offered values
/// for that SLO; the operator becomes GEQ for higher-is-better SLOs and LEQ
/// for lower-is-better. Throws UnresolvableCategory when no candidate offers
/// the SLO.
SloRequirement resolve_categorical(const SloRequirement& req,
                                   const std::vector<ServiceOffering>& candidates,
                                   const SloRegistry& registry);

} // namespace sloml
