#include "sloml/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "sloml/errors.hpp"

namespace sloml {

using nlohmann::ordered_json;

namespace {

const std::string kEgressSlo = "Monthly_egress_bandwidth";
const std::string kBandwidthCostSlo = "Monthly_bandwidth_cost";

double direction_margin(double offered, double required, Direction dir) {
    return dir == Direction::higher_is_better ? offered - required : required - offered;
}

} // namespace

SloUtility slo_utility(double offered, const SloRequirement& req,
                       const SloRegistry& registry) {
    if (req.is_categorical())
        throw Error("categorical requirement '" + req.slo_name +
                    "' must be resolved before utility computation");

    SloUtility u;
    u.slo_name = req.slo_name;
    u.offered = offered;

    const bool satisfied = satisfies(offered, req);

    if (req.op == Operator::IN) {
        const auto iv = req.interval_in_base();
        u.required = iv.lower;
        // No published utility rule for intervals; membership counts as
        // exact satisfaction (margin 0).
        u.margin = satisfied ? 0.0
                             : -std::min(std::abs(offered - iv.lower),
                                         std::abs(offered - iv.upper));
    } else {
        const SloDefinition* def = registry.lookup(req.slo_name);
        const Direction dir = def ? def->direction : Direction::higher_is_better;
        u.required = req.required_in_base();
        if (req.op == Operator::EQ) {
            u.margin = satisfied ? 0.0 : -std::abs(offered - u.required);
        } else {
            u.margin = direction_margin(offered, u.required, dir);
        }
    }

    u.utility = satisfied ? 1.0 - std::exp(-u.margin) : -1.0;
    return u;
}

ServiceUtility service_utility(const ServiceOffering& offering,
                               const ComponentSpec& component,
                               const SloRegistry& registry) {
    ServiceUtility su;
    su.offering = offering;
    for (const auto& req : component.slos) {
        auto it = offering.offered_slos.find(req.slo_name);
        if (it == offering.offered_slos.end()) {
            SloUtility missing;
            missing.slo_name = req.slo_name;
            missing.utility = -1.0;
            missing.margin = -1.0;
            missing.offered_present = false;
            su.slo_utilities.push_back(std::move(missing));
        } else {
            su.slo_utilities.push_back(slo_utility(it->second, req, registry));
        }
    }
    su.total = 0.0;
    for (const auto& u : su.slo_utilities) su.total += u.utility;
    return su;
}

double bandwidth_cost(const SloDocument& doc,
                      const std::map<std::string, ServiceOffering>& assignment,
                      std::vector<std::string>* warnings) {
    double cost = 0.0;
    for (const auto& edge : doc.data_flow) {
        auto comp_it = doc.components.find(edge.from);
        auto off_it = assignment.find(edge.from);
        if (comp_it == doc.components.end() || off_it == assignment.end()) continue;
        const SloRequirement* egress = nullptr;
        for (const auto& req : comp_it->second.slos)
            if (req.slo_name == kEgressSlo &&
                std::holds_alternative<ScalarValue>(req.value))
                egress = &req;
        if (!egress) {
            if (warnings)
                warnings->push_back("component '" + edge.from +
                                    "' has no " + kEgressSlo +
                                    " SLO; its data flow contributes no cost");
            continue;
        }
        cost += egress->required_in_base() * off_it->second.egress_price_per_gb;
    }
    return cost;
}

namespace {

// Application-level utilities for one assignment. Aggregates each app SLO
// with the registry's aggregation function; the bandwidth-cost SLO
// aggregates through the data-flow cost instead of the offered values.
std::vector<AppSloUtility> app_utilities(const SloDocument& doc,
                                         const std::map<std::string, ServiceOffering>& assignment,
                                         const SloRegistry& registry,
                                         double bw_cost) {
    std::vector<AppSloUtility> out;
    for (const auto& req : doc.application_slos) {
        AppSloUtility au;
        au.slo_name = req.slo_name;
        if (req.slo_name == kBandwidthCostSlo) {
            au.aggregated_value = bw_cost;
            au.utility = slo_utility(bw_cost, req, registry).utility;
            out.push_back(au);
            continue;
        }
        const SloDefinition* def = registry.lookup(req.slo_name);
        const Aggregation agg = def ? def->aggregation : Aggregation::MIN;
        bool missing = false;
        double value = agg == Aggregation::SUM ? 0.0 : 0.0;
        bool first = true;
        for (const auto& [id, off] : assignment) {
            auto it = off.offered_slos.find(req.slo_name);
            if (it == off.offered_slos.end()) {
                missing = true;
                break;
            }
            if (agg == Aggregation::SUM) {
                value += it->second;
            } else if (first) {
                value = it->second;
            } else if (agg == Aggregation::MIN) {
                value = std::min(value, it->second);
            } else {
                value = std::max(value, it->second);
            }
            first = false;
        }
        if (missing || first) {
            au.aggregated_value = 0.0;
            au.utility = -1.0; // no SLA support is never satisfaction
        } else {
            au.aggregated_value = value;
            au.utility = slo_utility(value, req, registry).utility;
        }
        out.push_back(au);
    }
    return out;
}

} // namespace

CombinationUtility score_combination(const SloDocument& doc,
                                     const std::map<std::string, ServiceOffering>& assignment,
                                     const SloRegistry& registry) {
    CombinationUtility combo;
    combo.assignment = assignment;
    combo.total = 0.0;
    for (const auto& [id, off] : assignment) {
        auto it = doc.components.find(id);
        if (it == doc.components.end()) continue;
        ServiceUtility su = service_utility(off, it->second, registry);
        combo.total += su.total;
        combo.component_utilities.emplace(id, std::move(su));
    }
    combo.bandwidth_cost = bandwidth_cost(doc, assignment, nullptr);
    combo.per_app_slo = app_utilities(doc, assignment, registry, combo.bandwidth_cost);
    for (const auto& au : combo.per_app_slo) combo.total += au.utility;
    return combo;
}

namespace {

struct Enumeration {
    SloDocument resolved_doc;
    std::vector<std::string> comp_ids;             // sorted
    std::vector<std::vector<ServiceUtility>> feasible; // per component, sorted by key
    std::vector<std::string> warnings;
};

Enumeration prepare(const SloDocument& doc, const Catalog& catalog,
                    const SloRegistry& registry) {
    Enumeration e;
    e.resolved_doc = doc;
    std::vector<std::string> infeasible;
    for (auto& [id, comp] : e.resolved_doc.components) {
        auto cands = candidates_for(catalog, comp);
        for (auto& req : comp.slos)
            if (req.is_categorical())
                req = resolve_categorical(req, cands, registry);
        std::vector<ServiceUtility> feasible;
        for (const auto& off : cands) {
            ServiceUtility su = service_utility(off, comp, registry);
            if (su.feasible()) feasible.push_back(std::move(su));
        }
        if (feasible.empty()) infeasible.push_back(id);
        e.comp_ids.push_back(id);
        e.feasible.push_back(std::move(feasible));
    }
    if (!infeasible.empty()) throw InfeasibleSelection(std::move(infeasible));
    return e;
}

std::map<std::string, ServiceOffering> assignment_of(const Enumeration& e,
                                                     const std::vector<size_t>& idx) {
    std::map<std::string, ServiceOffering> assignment;
    for (size_t i = 0; i < e.comp_ids.size(); ++i)
        assignment.emplace(e.comp_ids[i], e.feasible[i][idx[i]].offering);
    return assignment;
}

long long combination_count(const Enumeration& e, long long budget) {
    long long combos = 1;
    for (const auto& f : e.feasible) {
        combos *= static_cast<long long>(f.size());
        if (combos > budget) return combos;
    }
    return combos;
}

/// Walks the cross product of feasible sets in lexicographic index order,
/// invoking fn(idx, base_total) for each combination.
template <typename Fn>
void for_each_combination(const Enumeration& e, Fn&& fn) {
    const size_t n = e.comp_ids.size();
    std::vector<size_t> idx(n, 0);
    while (true) {
        double base_total = 0.0;
        for (size_t i = 0; i < n; ++i) base_total += e.feasible[i][idx[i]].total;
        fn(idx, base_total);
        size_t i = n;
        while (i > 0) {
            --i;
            if (++idx[i] < e.feasible[i].size()) break;
            idx[i] = 0;
            if (i == 0) return;
        }
    }
}

} // namespace

SelectionPlan select(const SloDocument& doc, const Catalog& catalog,
                     const SloRegistry& registry, const SelectOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    SelectionPlan plan;
    Enumeration e = prepare(doc, catalog, registry);
    const size_t n = e.comp_ids.size();

    if (e.resolved_doc.application_slos.empty()) {
        std::vector<size_t> best(n, 0);
        long long considered = 0;
        for (size_t i = 0; i < n; ++i) {
            considered += static_cast<long long>(e.feasible[i].size());
            for (size_t j = 1; j < e.feasible[i].size(); ++j)
                if (e.feasible[i][j].total > e.feasible[i][best[i]].total) best[i] = j;
        }
        auto assignment = assignment_of(e, best);
        CombinationUtility combo;
        combo.assignment = assignment;
        combo.total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            combo.total += e.feasible[i][best[i]].total;
            combo.component_utilities.emplace(e.comp_ids[i], e.feasible[i][best[i]]);
        }
        combo.bandwidth_cost =
            bandwidth_cost(e.resolved_doc, assignment, &plan.warnings);
        plan.combination = std::move(combo);
        plan.alternatives_considered = considered;
    } else {
        const long long combos = combination_count(e, options.budget);
        if (combos > options.budget) throw BudgetExceeded(combos, options.budget);

        bool found = false;
        double best_total = -std::numeric_limits<double>::infinity();
        std::vector<size_t> best_idx;
        for_each_combination(e, [&](const std::vector<size_t>& idx, double base_total) {
            auto assignment = assignment_of(e, idx);
            const double bw = bandwidth_cost(e.resolved_doc, assignment, nullptr);
            auto apps = app_utilities(e.resolved_doc, assignment, registry, bw);
            double total = base_total;
            bool feasible = true;
            for (const auto& au : apps) {
                if (au.utility < 0.0) feasible = false;
                total += au.utility;
            }
            if (!feasible) return;
            if (!found || total > best_total) {
                found = true;
                best_total = total;
                best_idx = idx;
            }
        });
        if (!found) throw InfeasibleSelection({});

        auto assignment = assignment_of(e, best_idx);
        CombinationUtility combo;
        combo.assignment = assignment;
        combo.total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            combo.total += e.feasible[i][best_idx[i]].total;
            combo.component_utilities.emplace(e.comp_ids[i], e.feasible[i][best_idx[i]]);
        }
        combo.bandwidth_cost =
            bandwidth_cost(e.resolved_doc, assignment, &plan.warnings);
        combo.per_app_slo =
            app_utilities(e.resolved_doc, assignment, registry, combo.bandwidth_cost);
        for (const auto& au : combo.per_app_slo) combo.total += au.utility;
        plan.combination = std::move(combo);
        plan.alternatives_considered = combos;
    }

    plan.elapsed = std::chrono::steady_clock::now() - start;
    return plan;
}

double worst_feasible_total(const SloDocument& doc, const Catalog& catalog,
                            const SloRegistry& registry, const SelectOptions& options) {
    Enumeration e = prepare(doc, catalog, registry);

    if (e.resolved_doc.application_slos.empty()) {
        double total = 0.0;
        for (const auto& f : e.feasible) {
            double worst = f.front().total;
            for (const auto& su : f) worst = std::min(worst, su.total);
            total += worst;
        }
        return total;
    }

    const long long combos = combination_count(e, options.budget);
    if (combos > options.budget) throw BudgetExceeded(combos, options.budget);

    bool found = false;
    double worst = 0.0;
    for_each_combination(e, [&](const std::vector<size_t>& idx, double base_total) {
        auto assignment = assignment_of(e, idx);
        const double bw = bandwidth_cost(e.resolved_doc, assignment, nullptr);
        auto apps = app_utilities(e.resolved_doc, assignment, registry, bw);
        double total = base_total;
        for (const auto& au : apps) {
            if (au.utility < 0.0) return;
            total += au.utility;
        }
        if (!found || total < worst) {
            found = true;
            worst = total;
        }
    });
    if (!found) throw InfeasibleSelection({});
    return worst;
}

double accuracy(const CombinationUtility& selected, const CombinationUtility& optimal,
                double floor_total) {
    if (!selected.feasible()) return 0.0;
    if (selected.total >= optimal.total) return 1.0;
    const double range = optimal.total - floor_total;
    if (range <= 0.0) return selected.total == optimal.total ? 1.0 : 0.0;
    const double score = 1.0 - (optimal.total - selected.total) / range;
    return std::clamp(score, 0.0, 1.0);
}

std::string serialize_plan(const SelectionPlan& plan) {
    ordered_json root;
    ordered_json assignment;
    for (const auto& [id, off] : plan.combination.assignment) {
        assignment[id] = {{"provider", off.provider},
                          {"service_id", off.service_id},
                          {"region", off.region},
                          {"serves_type", off.serves_type}};
    }
    root["assignment"] = std::move(assignment);

    ordered_json comp_utils;
    for (const auto& [id, su] : plan.combination.component_utilities) {
        ordered_json slos = ordered_json::array();
        for (const auto& u : su.slo_utilities) {
            slos.push_back({{"slo", u.slo_name},
                            {"offered", u.offered_present ? ordered_json(u.offered)
                                                          : ordered_json(nullptr)},
                            {"required", u.required},
                            {"margin", u.margin},
                            {"utility", u.utility}});
        }
        comp_utils[id] = {{"total", su.total}, {"slo_utilities", std::move(slos)}};
    }
    root["component_utilities"] = std::move(comp_utils);

    ordered_json apps = ordered_json::array();
    for (const auto& au : plan.combination.per_app_slo)
        apps.push_back({{"slo", au.slo_name},
                        {"aggregated_value", au.aggregated_value},
                        {"utility", au.utility}});
    root["application_slo_utilities"] = std::move(apps);

    root["total_utility"] = plan.combination.total;
    root["bandwidth_cost"] = plan.combination.bandwidth_cost;
    root["alternatives_considered"] = plan.alternatives_considered;
    root["elapsed_ms"] = plan.elapsed.count();
    root["warnings"] = plan.warnings;
    return root.dump(4);
}

} // namespace sloml
