#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sloml/bench.hpp"
#include "sloml/codegen.hpp"
#include "sloml/errors.hpp"
#include "sloml/parser.hpp"
#include "sloml/selector.hpp"
#include "sloml/workload.hpp"

namespace {

using namespace sloml;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;
constexpr int kExitDefect = 5;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void print_report(const ValidationReport& report, bool as_json) {
    if (as_json) {
        ordered_json out;
        out["is_valid"] = report.is_valid();
        ordered_json issues = ordered_json::array();
        for (const auto& issue : report.issues)
            issues.push_back({{"stage", to_string(issue.stage)},
                              {"severity", issue.severity == Severity::error
                                               ? "error" : "warning"},
                              {"location", issue.location},
                              {"message", issue.message}});
        out["issues"] = std::move(issues);
        std::cout << out.dump(2) << "\n";
        return;
    }
    for (const auto& issue : report.issues)
        std::cout << (issue.severity == Severity::error ? "error" : "warning")
                  << " [" << to_string(issue.stage) << "] " << issue.location
                  << ": " << issue.message << "\n";
    std::cout << (report.is_valid() ? "valid" : "invalid") << "\n";
}

int cmd_validate(const std::string& slo_path, const std::string& topo_path,
                 bool as_json, int synthetic) {
    auto text = read_file(slo_path);
    if (!text) {
        std::cerr << "error: cannot read " << slo_path << "\n";
        return kExitIo;
    }
    const SloRegistry registry = registry_with_synthetic(synthetic);
    std::optional<TopologyModel> topo;
    if (!topo_path.empty()) {
        auto topo_text = read_file(topo_path);
        if (!topo_text) {
            std::cerr << "error: cannot read " << topo_path << "\n";
            return kExitIo;
        }
        auto parsed = parse_topology(*topo_text);
        if (!parsed.topology) {
            print_report(parsed.report, as_json);
            return kExitInvalid;
        }
        topo = std::move(parsed.topology);
    }
    const ValidationReport report =
        validate_all(*text, registry, topo ? &*topo : nullptr);
    print_report(report, as_json);
    return report.is_valid() ? 0 : kExitInvalid;
}

int cmd_select(const std::string& slo_path, const std::string& catalog_path,
               const std::string& plan_out, long long budget, int synthetic) {
    auto text = read_file(slo_path);
    if (!text) {
        std::cerr << "error: cannot read " << slo_path << "\n";
        return kExitIo;
    }
    const SloRegistry registry = registry_with_synthetic(synthetic);
    ParseResult parsed = parse_slo(*text, registry);
    ValidationReport report = parsed.report;
    if (parsed.document)
        report.merge(validate_units(*parsed.document, registry));
    if (!report.is_valid()) {
        print_report(report, false);
        return kExitInvalid;
    }
    Catalog catalog;
    try {
        catalog = load_catalog(catalog_path, registry);
    } catch (const CatalogError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
    try {
        const SelectionPlan plan =
            select(*parsed.document, catalog, registry, SelectOptions{budget});
        std::cout << "component                        provider     service                region         utility\n";
        for (const auto& [id, off] : plan.combination.assignment) {
            const auto& su = plan.combination.component_utilities.at(id);
            std::printf("%-32s %-12s %-22s %-12s %10.6f\n", id.c_str(),
                        off.provider.c_str(), off.service_id.c_str(),
                        off.region.c_str(), su.total);
        }
        for (const auto& au : plan.combination.per_app_slo)
            std::printf("application SLO %-32s agg=%.6g utility=%.6f\n",
                        au.slo_name.c_str(), au.aggregated_value, au.utility);
        std::printf("total utility     %.6f\n", plan.combination.total);
        std::printf("bandwidth cost    $%.2f/month\n", plan.combination.bandwidth_cost);
        std::printf("alternatives      %lld\n", plan.alternatives_considered);
        std::printf("elapsed           %.3f ms\n", plan.elapsed.count());
        for (const auto& w : plan.warnings) std::cout << "warning: " << w << "\n";
        if (!plan_out.empty()) {
            std::ofstream out(plan_out, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << plan_out << "\n";
                return kExitIo;
            }
            out << serialize_plan(plan) << "\n";
        }
        return 0;
    } catch (const InfeasibleSelection& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInfeasible;
    } catch (const BudgetExceeded& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitBudget;
    }
}

int cmd_generate(const std::string& plan_path, const std::string& slo_path,
                 const std::string& out_dir, const std::string& templates_dir,
                 int synthetic) {
    auto plan_text = read_file(plan_path);
    auto slo_text = read_file(slo_path);
    if (!plan_text || !slo_text) {
        std::cerr << "error: cannot read inputs\n";
        return kExitIo;
    }
    const SloRegistry registry = registry_with_synthetic(synthetic);
    ParseResult parsed = parse_slo(*slo_text, registry);
    if (!parsed.document) {
        std::cerr << "error: invalid .slo document\n";
        return kExitIo;
    }
    SelectionPlan plan;
    const json root = json::parse(*plan_text, nullptr, false);
    if (root.is_discarded() || !root.is_object() || !root.contains("assignment") ||
        !root["assignment"].is_object()) {
        std::cerr << "error: corrupted plan JSON\n";
        return kExitIo;
    }
    for (const auto& [id, a] : root["assignment"].items()) {
        if (!a.is_object() || !a.contains("provider") || !a.contains("service_id") ||
            !a.contains("region")) {
            std::cerr << "error: corrupted plan assignment for '" << id << "'\n";
            return kExitIo;
        }
        ServiceOffering off;
        off.provider = a["provider"].get<std::string>();
        off.service_id = a["service_id"].get<std::string>();
        off.region = a["region"].get<std::string>();
        off.serves_type = a.value("serves_type", "");
        plan.combination.assignment.emplace(id, std::move(off));
    }
    try {
        const TemplateSet templates = TemplateSet::load(templates_dir);
        const DeploymentArtifact artifact =
            generate_hcl(plan, *parsed.document, templates);
        const DeployReport report = dry_run_deploy(artifact);
        if (!report.clean()) {
            for (const auto& d : report.defects)
                std::cerr << "defect at " << d.line << ":" << d.column << ": "
                          << d.message << "\n";
            return kExitDefect;
        }
        write_artifact(artifact, out_dir);
        std::cout << "wrote " << out_dir << "/main.tf (" << report.resource_blocks
                  << " resources, " << report.provider_blocks << " providers)\n";
        return 0;
    } catch (const CodegenError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitDefect;
    }
}

int cmd_workload(const SyntheticWorkload& spec, const std::string& out_dir) {
    const GeneratedWorkload w = generate_workload(spec);
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(std::filesystem::path(out_dir) / "app.slo", std::ios::binary);
        out << w.slo_text << "\n";
    }
    {
        std::ofstream out(std::filesystem::path(out_dir) / "topology.json",
                          std::ios::binary);
        ordered_json topo;
        ordered_json comps = ordered_json::array();
        for (const auto& c : w.topology.components)
            comps.push_back({{"id", c.id}, {"type", c.service_kind}});
        ordered_json edges = ordered_json::array();
        for (const auto& e : w.topology.edges)
            edges.push_back({{"from", e.from}, {"to", e.to}});
        topo["components"] = std::move(comps);
        topo["edges"] = std::move(edges);
        out << topo.dump(4) << "\n";
    }
    {
        std::ofstream out(std::filesystem::path(out_dir) / "catalog.json",
                          std::ios::binary);
        out << serialize_catalog(w.catalog, w.registry) << "\n";
    }
    std::cout << "wrote " << out_dir << "/app.slo, topology.json, catalog.json ("
              << spec.n_components << " components, "
              << w.document.data_flow.size() << " edges, "
              << w.catalog.offerings.size() << " offerings)\n";
    std::cout << "note: validate/select these with --synthetic-slos "
              << spec.n_slos_per_component << "\n";
    return 0;
}

int cmd_bench(const std::string& phase, const std::vector<int>& components,
              const std::vector<int>& slos, const std::vector<std::string>& conns,
              const std::vector<int>& candidates, const BenchOptions& opts,
              unsigned long long seed, const std::string& csv_path) {
    std::vector<BenchRecord> records;
    auto run_cell = [&](const std::string& ph, const SyntheticWorkload& spec) {
        BenchRecord rec;
        if (ph == "parse") rec = bench_parse(spec, opts);
        else if (ph == "select") rec = bench_select(spec, opts);
        else rec = bench_codegen(spec, opts);
        std::cout << to_csv_row(rec) << "\n";
        records.push_back(std::move(rec));
    };

    std::cout << csv_header() << "\n";
    if (phase == "parse" || phase == "all") {
        for (const auto& conn : conns)
            for (int nc : components)
                for (int ns : slos) {
                    SyntheticWorkload spec;
                    spec.n_components = nc;
                    spec.n_slos_per_component = ns;
                    spec.connectivity = *parse_connectivity(conn);
                    spec.n_candidates_per_component = 2;
                    spec.seed = seed;
                    run_cell("parse", spec);
                }
    }
    if (phase == "select" || phase == "all") {
        for (int nc : components)
            for (int cand : candidates) {
                SyntheticWorkload spec;
                spec.n_components = nc;
                spec.n_slos_per_component = slos.empty() ? 2 : slos.front();
                spec.connectivity = Connectivity::low;
                spec.n_candidates_per_component = cand;
                spec.seed = seed;
                run_cell("select", spec);
            }
    }
    if (phase == "codegen" || phase == "all") {
        for (int nc : components) {
            SyntheticWorkload spec;
            spec.n_components = nc;
            spec.n_slos_per_component = slos.empty() ? 10 : slos.front();
            spec.connectivity = Connectivity::low;
            spec.n_candidates_per_component = 2;
            spec.seed = seed;
            run_cell("codegen", spec);
        }
    }

    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << csv_path << "\n";
            return kExitIo;
        }
        out << csv_header() << "\n";
        for (const auto& rec : records) out << to_csv_row(rec) << "\n";
    }

    // Growth diagnostics per phase.
    for (const std::string ph : {"parse", "codegen"}) {
        std::vector<double> x, y;
        for (const auto& rec : records)
            if (rec.phase == ph && !rec.timed_out) {
                x.push_back(rec.n_components);
                y.push_back(rec.mean_ms);
            }
        if (x.size() >= 3) {
            const LinearFit fit = linear_fit(x, y);
            std::printf("%s vs components: linear fit R^2 = %.4f (slope %.4g ms/component)\n",
                        ph.c_str(), fit.r2, fit.slope);
        }
    }
    {
        std::vector<double> x, y;
        for (const auto& rec : records)
            if (rec.phase == "select" && !rec.timed_out && rec.mean_ms > 0) {
                x.push_back(std::log(static_cast<double>(rec.n_candidates)));
                y.push_back(std::log(rec.mean_ms));
            }
        if (x.size() >= 3) {
            const LinearFit fit = linear_fit(x, y);
            std::printf("select vs candidates: log-log slope = %.3f (>1 is super-linear)\n",
                        fit.slope);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SLO-driven cloud service selection toolchain"};
    app.require_subcommand(1);

    std::string slo_path, topo_path, catalog_path, plan_path, plan_out;
    std::string out_dir = "out/app";
    std::string templates_dir = "templates";
    std::string csv_path;
    bool as_json = false;
    int synthetic = 0;
    long long budget = 10'000'000;

    auto* validate = app.add_subcommand("validate", "Parse and validate a .slo file");
    validate->add_option("slo", slo_path, "Path to the .slo file")->required();
    validate->add_option("--topology", topo_path, "Topology descriptor JSON");
    validate->add_flag("--json", as_json, "Machine-readable report");
    validate->add_option("--synthetic-slos", synthetic,
                         "Register N synthetic benchmark SLO names");

    auto* sel = app.add_subcommand("select", "Select optimal services for a .slo file");
    sel->add_option("slo", slo_path, "Path to the .slo file")->required();
    sel->add_option("--catalog", catalog_path, "Catalog JSON")->required();
    sel->add_option("--plan-out", plan_out, "Write the selection plan JSON here");
    sel->add_option("--budget", budget, "Max combinations to enumerate");
    sel->add_option("--synthetic-slos", synthetic,
                    "Register N synthetic benchmark SLO names");

    auto* gen = app.add_subcommand("generate", "Generate deployment code from a plan");
    gen->add_option("plan", plan_path, "Selection plan JSON")->required();
    gen->add_option("slo", slo_path, "Path to the .slo file")->required();
    gen->add_option("--out", out_dir, "Output directory");
    gen->add_option("--templates", templates_dir, "Provider template directory");
    gen->add_option("--synthetic-slos", synthetic,
                    "Register N synthetic benchmark SLO names");

    SyntheticWorkload wspec;
    std::string connectivity = "low";
    bool no_app_slos = false;
    auto* wl = app.add_subcommand("workload", "Generate a synthetic benchmark workload");
    wl->add_option("--components", wspec.n_components, "Component count");
    wl->add_option("--slos", wspec.n_slos_per_component, "SLOs per component");
    wl->add_option("--connectivity", connectivity, "low|mid|high");
    wl->add_option("--candidates", wspec.n_candidates_per_component,
                   "Catalog candidates per component");
    wl->add_option("--seed", wspec.seed, "Generator seed");
    wl->add_flag("--no-app-slos", no_app_slos, "Omit application-level SLOs");
    wl->add_option("--out", out_dir, "Output directory");

    std::string phase = "all";
    std::vector<int> b_components = {100, 250, 500, 750, 1000};
    std::vector<int> b_slos = {10};
    std::vector<std::string> b_conns = {"low", "mid", "high"};
    std::vector<int> b_candidates = {2, 4, 6, 8, 10};
    BenchOptions bopts;
    unsigned long long bseed = 42;
    auto* bench = app.add_subcommand("bench", "Run the scalability benchmark sweeps");
    bench->add_option("--phase", phase, "parse|select|codegen|all");
    bench->add_option("--components", b_components, "Component counts to sweep")->delimiter(',');
    bench->add_option("--slos", b_slos, "SLO counts to sweep (parse phase)")->delimiter(',');
    bench->add_option("--connectivity", b_conns, "Connectivity degrees to sweep")->delimiter(',');
    bench->add_option("--candidates", b_candidates, "Candidate counts (select phase)")->delimiter(',');
    bench->add_option("--reps", bopts.reps, "Repetitions per cell");
    bench->add_option("--warmup", bopts.warmup, "Discarded warm-up iterations");
    bench->add_option("--cap", bopts.cell_cap_seconds, "Per-cell wall-clock cap (s)");
    bench->add_option("--budget", bopts.budget, "Max combinations to enumerate");
    bench->add_option("--seed", bseed, "Workload seed");
    bench->add_option("--csv", csv_path, "Write records to this CSV file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(slo_path, topo_path, as_json, synthetic);
        if (sel->parsed())
            return cmd_select(slo_path, catalog_path, plan_out, budget, synthetic);
        if (gen->parsed())
            return cmd_generate(plan_path, slo_path, out_dir, templates_dir, synthetic);
        if (wl->parsed()) {
            auto conn = parse_connectivity(connectivity);
            if (!conn) {
                std::cerr << "error: connectivity must be low, mid, or high\n";
                return kExitIo;
            }
            wspec.connectivity = *conn;
            wspec.with_app_slos = !no_app_slos;
            return cmd_workload(wspec, out_dir);
        }
        if (bench->parsed()) {
            if (phase != "parse" && phase != "select" && phase != "codegen" &&
                phase != "all") {
                std::cerr << "error: phase must be parse, select, codegen, or all\n";
                return kExitIo;
            }
            return cmd_bench(phase, b_components, b_slos, b_conns, b_candidates,
                             bopts, bseed, csv_path);
        }
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    }
    return 0;
}
