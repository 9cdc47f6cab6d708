// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Each check is self-contained and uses frozen expectations; the selection
// checks compare against unpruned cross-product enumeration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sloml/bench.hpp"
#include "sloml/codegen.hpp"
#include "sloml/errors.hpp"
#include "sloml/parser.hpp"
#include "sloml/selector.hpp"
#include "sloml/workload.hpp"

using namespace sloml;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> notes;

void require(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        notes.push_back(what);
    }
}

struct Criterion {
    const char* name;
    std::function<void()> run;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

SloDocument parse_fixture(const std::string& name, const SloRegistry& reg) {
    ParseResult result = parse_slo(read_file(fixture(name)), reg);
    if (!result.document) throw std::runtime_error(name + " failed to parse");
    return *result.document;
}

// Unpruned cross product, scored with score_combination; first strict
// maximum in sorted candidate order, mirroring the documented tie-break.
struct BruteResult {
    bool found{false};
    CombinationUtility best;
};

BruteResult brute_force(const SloDocument& doc, const Catalog& catalog,
                        const SloRegistry& reg) {
    std::vector<std::string> ids;
    std::vector<std::vector<ServiceOffering>> cands;
    for (const auto& [id, comp] : doc.components) {
        ids.push_back(id);
        cands.push_back(candidates_for(catalog, comp));
        if (cands.back().empty()) return {};
    }
    BruteResult result;
    std::vector<size_t> idx(ids.size(), 0);
    for (;;) {
        std::map<std::string, ServiceOffering> assignment;
        for (size_t i = 0; i < ids.size(); ++i) assignment[ids[i]] = cands[i][idx[i]];
        CombinationUtility scored = score_combination(doc, assignment, reg);
        if (scored.feasible() &&
            (!result.found || scored.total > result.best.total)) {
            result.found = true;
            result.best = std::move(scored);
        }
        size_t i = ids.size();
        while (i > 0 && ++idx[i - 1] == cands[i - 1].size()) idx[--i] = 0;
        if (i == 0) break;
    }
    return result;
}

bool same_assignment(const CombinationUtility& a, const CombinationUtility& b) {
    if (a.assignment.size() != b.assignment.size()) return false;
    for (const auto& [id, off] : a.assignment) {
        auto it = b.assignment.find(id);
        if (it == b.assignment.end() || it->second.key() != off.key()) return false;
    }
    return true;
}

// --------------------------------------------------------------------------

void criterion1_listing_fidelity() {
    const SloRegistry reg = default_registry();
    const std::string text = read_file(fixture("listing1.slo"));
    ParseResult result = parse_slo(text, reg);
    require(result.document.has_value(), "listing fixture must parse");
    if (!result.document) return;
    const SloDocument& doc = *result.document;
    require(doc.components.size() == 2, "2 components");
    require(doc.components.count("database_comp") == 1 &&
                doc.components.at("database_comp").slos.size() == 2,
            "2 database SLOs");
    require(doc.application_slos.size() == 1, "1 application SLO");
    require(doc.data_flow.size() == 1, "1 data-flow edge");

    const std::string round1 = serialize(doc);
    ParseResult again = parse_slo(round1, reg);
    require(again.document.has_value(), "serialized form must reparse");
    if (again.document)
        require(serialize(*again.document) == round1, "round-trip equality");
}

void criterion2_utility_function() {
    const auto t0 = clock_type::now();
    const SloRegistry reg = default_registry();
    const SloRequirement req{"Monthly_uptime_percentage", Operator::GEQ,
                             ScalarValue{0.99}, *find_unit("")};

    const SloUtility at_margin = slo_utility(0.99, req, reg);
    require(at_margin.utility == 0.0, "equality margin gives exactly 0");
    const SloUtility violated = slo_utility(0.98, req, reg);
    require(violated.utility == -1.0, "violation gives exactly -1");
    const SloUtility positive = slo_utility(0.9999, req, reg);
    require(std::abs(positive.utility - (-std::expm1(-0.0099))) <= 1e-12,
            "margin 0.0099 matches 1 - e^(-0.0099) within 1e-12");

    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    require(elapsed < 1.0, "utility checks finish in under 1 s");
}

void criterion3_oracle_equivalence() {
    const auto t0 = clock_type::now();
    std::mt19937_64 rng(20260824);
    int matched = 0;
    for (int iter = 0; iter < 100; ++iter) {
        SyntheticWorkload spec;
        spec.n_components = 2 + static_cast<int>(rng() % 3); // 2..4
        spec.n_slos_per_component = 2 + static_cast<int>(rng() % 2);
        spec.n_candidates_per_component = 2 + static_cast<int>(rng() % 5); // 2..6
        spec.connectivity = Connectivity::low;
        spec.with_app_slos = (iter % 2 == 0);
        spec.seed = rng();
        const GeneratedWorkload wl = generate_workload(spec);

        const BruteResult oracle = brute_force(wl.document, wl.catalog, wl.registry);
        if (!oracle.found) {
            require(false, "synthetic instance unexpectedly infeasible");
            continue;
        }
        const SelectionPlan plan = select(wl.document, wl.catalog, wl.registry);
        if (same_assignment(plan.combination, oracle.best))
            ++matched;
    }
    require(matched == 100, "pruned select equals brute force on all 100 instances");
    const double elapsed =
        std::chrono::duration<double>(clock_type::now() - t0).count();
    require(elapsed < 60.0, "oracle sweep under 60 s");
}

void criterion4_case_studies() {
    const SloRegistry reg = default_registry();
    const Catalog catalog = load_catalog(fixture("catalog-providers.json"), reg);

    // Case 1: only one offering supports all four required database SLOs.
    const SloDocument case1 = parse_fixture("case1.slo", reg);
    int feasible_candidates = 0;
    for (const auto& off : candidates_for(catalog, case1.components.at("database_comp")))
        if (service_utility(off, case1.components.at("database_comp"), reg).feasible())
            ++feasible_candidates;
    require(feasible_candidates == 1, "case 1 has a unique eligible offering");
    const SelectionPlan plan1 = select(case1, catalog, reg);
    require(plan1.combination.assignment.at("database_comp").service_id == "cosmos-db",
            "case 1 selects the full-SLA database service");

    // Cases 2 and 3: optimal and identical to the brute-force oracle.
    for (const char* name : {"case2.slo", "case3.slo"}) {
        const SloDocument doc = parse_fixture(name, reg);
        const SelectionPlan plan = select(doc, catalog, reg);
        const BruteResult oracle = brute_force(doc, catalog, reg);
        require(oracle.found, std::string(name) + " oracle finds a feasible plan");
        require(plan.combination.feasible(), std::string(name) + " plan feasible");
        require(same_assignment(plan.combination, oracle.best),
                std::string(name) + " matches the oracle assignment");
    }

    // Accuracy: 1 at the optimum, 0 for any infeasible pick.
    const SloDocument case3 = parse_fixture("case3.slo", reg);
    const SelectionPlan plan3 = select(case3, catalog, reg);
    const double floor = worst_feasible_total(case3, catalog, reg);
    require(accuracy(plan3.combination, plan3.combination, floor) == 1.0,
            "accuracy of the optimum is 1");
    std::map<std::string, ServiceOffering> bad = plan3.combination.assignment;
    for (const auto& off : catalog.offerings)
        if (off.service_id == "cloud-servers") bad["solver_comp"] = off;
    const CombinationUtility infeasible = score_combination(case3, bad, reg);
    require(!infeasible.feasible(), "cloud-servers pick is infeasible in case 3");
    require(accuracy(infeasible, plan3.combination, floor) == 0.0,
            "accuracy of an infeasible pick is 0");
}

void criterion5_scaling_trends() {
    BenchOptions opts;
    opts.reps = 5;
    opts.warmup = 1;

    const std::vector<int> comp_sweep = {100, 250, 500, 750, 1000};
    const std::vector<int> slo_sweep = {10, 25, 50, 75, 100};
    const Connectivity conns[] = {Connectivity::low, Connectivity::mid,
                                  Connectivity::high};

    // Parse sweep over components (10 SLOs) and over SLOs (100 components).
    std::map<std::string, double> conn_mean_sum;
    for (Connectivity conn : conns) {
        std::vector<double> xs, ys;
        for (int n : comp_sweep) {
            SyntheticWorkload spec;
            spec.n_components = n;
            spec.n_slos_per_component = 10;
            spec.connectivity = conn;
            spec.n_candidates_per_component = 2;
            spec.seed = 100 + n;
            const BenchRecord rec = bench_parse(spec, opts);
            xs.push_back(n);
            ys.push_back(rec.mean_ms);
        }
        const LinearFit fit = linear_fit(xs, ys);
        require(fit.r2 >= 0.9, "parse vs components linear (R^2 >= 0.9), " +
                                   to_string(conn));
        double sum = 0;
        for (double y : ys) sum += y;
        conn_mean_sum[to_string(conn)] += sum / ys.size();

        std::vector<double> sx, sy;
        for (int s : slo_sweep) {
            SyntheticWorkload spec;
            spec.n_components = 100;
            spec.n_slos_per_component = s;
            spec.connectivity = conn;
            spec.n_candidates_per_component = 2;
            spec.seed = 200 + s;
            const BenchRecord rec = bench_parse(spec, opts);
            sx.push_back(s);
            sy.push_back(rec.mean_ms);
        }
        const LinearFit sfit = linear_fit(sx, sy);
        require(sfit.r2 >= 0.9, "parse vs SLOs linear (R^2 >= 0.9), " +
                                    to_string(conn));
        conn_mean_sum[to_string(conn)] += 0.0; // sweep B excluded from the
                                               // connectivity comparison
    }
    require(conn_mean_sum["low"] <= conn_mean_sum["mid"] * 1.05 &&
                conn_mean_sum["mid"] <= conn_mean_sum["high"] * 1.05,
            "parse means non-decreasing in connectivity");

    // Absolute envelope: 1000 components x 100 SLOs in <= 10 s.
    {
        SyntheticWorkload spec;
        spec.n_components = 1000;
        spec.n_slos_per_component = 100;
        spec.connectivity = Connectivity::low;
        spec.n_candidates_per_component = 2;
        spec.seed = 7;
        const GeneratedWorkload wl = generate_workload(spec);
        const auto t0 = clock_type::now();
        ParseResult parsed = parse_slo(wl.slo_text, wl.registry);
        const double s = std::chrono::duration<double>(clock_type::now() - t0).count();
        require(parsed.document.has_value(), "largest parse instance parses");
        require(s <= 10.0, "1000 x 100 parse within 10 s");
    }

    // Codegen sweep over components.
    {
        std::vector<double> xs, ys;
        double ms_at_1000 = 0;
        for (int n : comp_sweep) {
            SyntheticWorkload spec;
            spec.n_components = n;
            spec.n_slos_per_component = 2;
            spec.connectivity = Connectivity::low;
            spec.n_candidates_per_component = 2;
            spec.seed = 300 + n;
            const BenchRecord rec = bench_codegen(spec, opts);
            xs.push_back(n);
            ys.push_back(rec.mean_ms);
            if (n == 1000) ms_at_1000 = rec.mean_ms;
        }
        const LinearFit fit = linear_fit(xs, ys);
        require(fit.r2 >= 0.9, "codegen vs components linear (R^2 >= 0.9)");
        require(ms_at_1000 <= 1000.0, "1000-component generation within 1 s");
    }

    // Select sweep: combination counts and super-linear growth in candidates.
    {
        std::vector<double> log_c, log_t;
        for (int c : {2, 4, 6, 8, 10}) {
            SyntheticWorkload spec;
            spec.n_components = 4;
            spec.n_slos_per_component = 2;
            spec.connectivity = Connectivity::low;
            spec.n_candidates_per_component = c;
            spec.with_app_slos = true;
            spec.seed = 400 + c;
            const GeneratedWorkload wl = generate_workload(spec);

            long long expected = 1;
            for (const auto& [id, comp] : wl.document.components) {
                long long feas = 0;
                for (const auto& off : candidates_for(wl.catalog, comp))
                    if (service_utility(off, comp, wl.registry).feasible()) ++feas;
                expected *= feas;
            }
            const BenchRecord rec = bench_select(spec, opts);
            require(!rec.timed_out, "select cell within its time cap");
            require(rec.combinations == expected,
                    "combination count equals product of feasible set sizes");
            log_c.push_back(std::log(static_cast<double>(c)));
            log_t.push_back(std::log(std::max(rec.mean_ms, 1e-6)));
        }
        const LinearFit fit = linear_fit(log_c, log_t);
        require(fit.slope > 1.2, "select time grows super-linearly in candidates");
    }
}

void criterion6_validation_stages() {
    const SloRegistry reg = default_registry();

    auto has = [](const ValidationReport& report, ValidationStage stage,
                  const std::string& where) {
        for (const auto& issue : report.issues)
            if (issue.stage == stage &&
                issue.location.find(where) != std::string::npos)
                return true;
        return false;
    };

    // Syntax stage.
    {
        std::string text = read_file(fixture("listing1.slo"));
        text.replace(text.find("\">=\""), 4, "\"=>\"");
        ParseResult result = parse_slo(text, reg);
        require(has(result.report, ValidationStage::syntax,
                    "$.database_comp.SLOs[0].operator"),
                "syntax stage tags the bad operator with its JSON path");
    }
    // Unit stage, the egress-bandwidth-in-days case included.
    {
        ParseResult parsed = parse_slo(read_file(fixture("bad-unit.slo")), reg);
        require(parsed.document.has_value(), "unit fixture is syntactically valid");
        if (parsed.document) {
            const ValidationReport report = validate_units(*parsed.document, reg);
            require(has(report, ValidationStage::unit,
                        "$.database_comp.SLOs[0].unit"),
                    "unit stage flags a time unit on a bandwidth SLO");
        }
    }
    // Consistency stage.
    {
        TopologyParseResult topo =
            parse_topology(read_file(fixture("topology-mismatch.json")));
        require(topo.topology.has_value(), "mismatch topology parses");
        ParseResult parsed = parse_slo(read_file(fixture("listing1.slo")), reg);
        if (topo.topology && parsed.document) {
            const ValidationReport report =
                validate_consistency(*parsed.document, *topo.topology);
            require(has(report, ValidationStage::consistency, "$.database_comp"),
                    "consistency stage flags the missing component");
        }
    }
    // Exhaustive reporting: one error per stage out of a single run.
    {
        TopologyParseResult topo =
            parse_topology(read_file(fixture("topology-mismatch.json")));
        const ValidationReport report = validate_all(
            read_file(fixture("multi-error.slo")), reg,
            topo.topology ? &*topo.topology : nullptr);
        require(has(report, ValidationStage::syntax, "SLOs[0].operator") &&
                    has(report, ValidationStage::unit, "SLOs[1].unit") &&
                    has(report, ValidationStage::consistency, "$.database_comp"),
                "one run reports syntax, unit, and consistency errors together");
    }
}

void criterion7_generator_self_closure() {
    const TemplateSet templates = TemplateSet::load(TEMPLATES_DIR);
    std::mt19937_64 rng(777);
    int clean = 0;
    for (int iter = 0; iter < 200; ++iter) {
        SyntheticWorkload spec;
        spec.n_components = 2 + static_cast<int>(rng() % 3);
        spec.n_slos_per_component = 2;
        spec.n_candidates_per_component = 2 + static_cast<int>(rng() % 3);
        spec.with_app_slos = false;
        spec.seed = rng();
        const GeneratedWorkload wl = generate_workload(spec);
        const SelectionPlan plan = select(wl.document, wl.catalog, wl.registry);

        const DeploymentArtifact artifact =
            generate_hcl(plan, wl.document, templates);
        const DeployReport report = dry_run_deploy(artifact);
        if (report.clean() &&
            report.resource_blocks == spec.n_components)
            ++clean;
    }
    require(clean == 200, "200/200 generated plans survive the dry run intact");
}

} // namespace

int main() {
    const Criterion criteria[] = {
        {"listing fidelity and round-trip", criterion1_listing_fidelity},
        {"utility function boundary values", criterion2_utility_function},
        {"oracle equivalence on random instances", criterion3_oracle_equivalence},
        {"case-study reproduction", criterion4_case_studies},
        {"scaling trends", criterion5_scaling_trends},
        {"validation-stage coverage", criterion6_validation_stages},
        {"generator self-closure", criterion7_generator_self_closure},
    };

    int exit_code = 0;
    int index = 0;
    for (const auto& criterion : criteria) {
        ++index;
        failures = 0;
        notes.clear();
        std::string error;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            ++failures;
            error = e.what();
        }
        if (failures == 0) {
            std::printf("[PASS] criterion %d: %s\n", index, criterion.name);
        } else {
            exit_code = 1;
            std::printf("[FAIL] criterion %d: %s\n", index, criterion.name);
            for (const auto& note : notes)
                std::printf("       - %s\n", note.c_str());
            if (!error.empty()) std::printf("       - exception: %s\n", error.c_str());
        }
    }
    return exit_code;
}
