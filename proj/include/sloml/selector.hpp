#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "sloml/catalog.hpp"
#include "sloml/document.hpp"

namespace sloml {

/// Utility of one offered SLO against one required SLO.
/// utility = 1 - e^(-margin) when the requirement is met (margin >= 0),
/// exactly -1 otherwise. The margin is the direction-adjusted slack:
/// offered - required for higher-is-better, required - offered for
/// lower-is-better, 0 for a value inside an IN interval.
struct SloUtility {
    std::string slo_name;
    double offered{0.0};
    double required{0.0};
    double margin{0.0};
    double utility{0.0};
    bool offered_present{true};
};

struct ServiceUtility {
    ServiceOffering offering;
    std::vector<SloUtility> slo_utilities;
    double total{0.0};

    bool feasible() const {
        for (const auto& u : slo_utilities)
            if (u.utility < 0.0) return false;
        return true;
    }
};

struct AppSloUtility {
    std::string slo_name;
    double aggregated_value{0.0};
    double utility{0.0};
};

/// One assignment of offerings to components, scored.
struct CombinationUtility {
    std::map<std::string, ServiceOffering> assignment;
    std::map<std::string, ServiceUtility> component_utilities;
    std::vector<AppSloUtility> per_app_slo;
    double total{0.0};
    double bandwidth_cost{0.0};

    bool feasible() const {
        for (const auto& [id, su] : component_utilities)
            if (!su.feasible()) return false;
        for (const auto& u : per_app_slo)
            if (u.utility < 0.0) return false;
        return true;
    }
};

struct SelectionPlan {
    CombinationUtility combination;
    long long alternatives_considered{0};
    std::chrono::duration<double, std::milli> elapsed{0};
    std::vector<std::string> infeasible_components; // empty on success
    std::vector<std::string> warnings;
};

struct SelectOptions {
    long long budget{10'000'000}; // max combinations to enumerate
};

/// Utility of one offered value against one requirement.
/// Precondition: offered in the requirement's base unit; categorical
/// requirements already resolved.
SloUtility slo_utility(double offered, const SloRequirement& req,
                       const SloRegistry& registry);

/// Sums the per-SLO utilities in document order. An SLO the offering does
/// not support folds to utility -1 (no SLA support is never satisfaction).
ServiceUtility service_utility(const ServiceOffering& offering,
                               const ComponentSpec& component,
                               const SloRegistry& registry);

/// Expected monthly data-transfer cost: for each data_flow edge, the source
/// component's required egress volume (GB) times the price of the offering
/// assigned to the source. Sources without an egress SLO contribute 0 and
/// produce a warning.
double bandwidth_cost(const SloDocument& doc,
                      const std::map<std::string, ServiceOffering>& assignment,
                      std::vector<std::string>* warnings = nullptr);

/// Utility-maximizing selection. Prunes each component's candidate list to
/// the feasible offerings, then either picks per-component maxima (no
/// application SLOs) or enumerates the cross product and maximizes the
/// combination utility. Ties break to the lexicographically smallest
/// (provider, service_id, region) tuple sequence in component-id order.
/// Throws InfeasibleSelection or BudgetExceeded.
SelectionPlan select(const SloDocument& doc, const Catalog& catalog,
                     const SloRegistry& registry, const SelectOptions& options = {});

/// Scores a combination (utilities, aggregates, bandwidth cost) without any
/// search. Exposed for accuracy computation and the CLI.
CombinationUtility score_combination(const SloDocument& doc,
                                     const std::map<std::string, ServiceOffering>& assignment,
                                     const SloRegistry& registry);

/// Lowest total among all feasible combinations; used as the accuracy
/// floor. Throws InfeasibleSelection when none is feasible.
double worst_feasible_total(const SloDocument& doc, const Catalog& catalog,
                            const SloRegistry& registry, const SelectOptions& options = {});

/// Distance-to-optimal score in [0, 1]: 0 for any infeasible pick, 1 at the
/// optimum, linear in utility across the feasible range in between.
double accuracy(const CombinationUtility& selected, const CombinationUtility& optimal,
                double floor_total);

std::string serialize_plan(const SelectionPlan& plan);

} // namespace sloml
