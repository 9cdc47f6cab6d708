#include "sloml/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "sloml/codegen.hpp"
#include "sloml/errors.hpp"
#include "sloml/parser.hpp"
#include "sloml/selector.hpp"

namespace sloml {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit fit;
    const size_t n = std::min(x.size(), y.size());
    if (n < 2) return fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (dn * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / dn;
    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / dn;
    for (size_t i = 0; i < n; ++i) {
        const double pred = fit.intercept + fit.slope * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

TimingStats measure(const std::function<void()>& fn, int reps, int warmup,
                    double cap_seconds) {
    using clock = std::chrono::steady_clock;
    TimingStats stats;
    const auto cell_start = clock::now();
    auto elapsed_s = [&] {
        return std::chrono::duration<double>(clock::now() - cell_start).count();
    };
    for (int i = 0; i < warmup; ++i) {
        fn();
        if (elapsed_s() > cap_seconds) {
            stats.timed_out = true;
            return stats;
        }
    }
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        sum += ms;
        sum_sq += ms * ms;
        ++stats.reps;
        if (elapsed_s() > cap_seconds) {
            stats.timed_out = true;
            break;
        }
    }
    if (stats.reps > 0) {
        stats.mean_ms = sum / stats.reps;
        const double var =
            std::max(0.0, sum_sq / stats.reps - stats.mean_ms * stats.mean_ms);
        stats.stddev_ms = std::sqrt(var);
    }
    return stats;
}

namespace {

BenchRecord record_for(const SyntheticWorkload& spec, const std::string& phase) {
    BenchRecord rec;
    rec.phase = phase;
    rec.n_components = spec.n_components;
    rec.n_slos = spec.n_slos_per_component;
    rec.connectivity = to_string(spec.connectivity);
    rec.n_candidates = spec.n_candidates_per_component;
    return rec;
}

void apply(BenchRecord& rec, const TimingStats& stats) {
    rec.reps = stats.reps;
    rec.mean_ms = stats.mean_ms;
    rec.stddev_ms = stats.stddev_ms;
    rec.timed_out = stats.timed_out;
}

// Generic templates covering the synthetic catalog's providers; every
// component type falls through to the "*" resource entry.
TemplateSet bench_templates() {
    TemplateSet set;
    auto generic = [](const std::string& name) {
        ProviderTemplate t;
        t.provider_name = name;
        t.provider_attributes = {{"region", "{region}"}};
        t.resources["*"] = {name + "_service", {{"service_id", "{service_id}"}}};
        return t;
    };
    set.add("AWS", generic("aws"));
    set.add("Azure", generic("azurerm"));
    set.add("Google", generic("google"));
    set.add("RackSpace", generic("rackspace"));
    return set;
}

} // namespace

BenchRecord bench_parse(const SyntheticWorkload& spec, const BenchOptions& opts) {
    BenchRecord rec = record_for(spec, "parse");
    const GeneratedWorkload w = generate_workload(spec);
    apply(rec, measure([&] { parse_slo(w.slo_text, w.registry); }, opts.reps,
                       opts.warmup, opts.cell_cap_seconds));
    return rec;
}

BenchRecord bench_select(const SyntheticWorkload& spec, const BenchOptions& opts) {
    BenchRecord rec = record_for(spec, "select");
    const GeneratedWorkload w = generate_workload(spec);
    SelectOptions sel{opts.budget};
    try {
        const SelectionPlan probe = select(w.document, w.catalog, w.registry, sel);
        rec.combinations = probe.alternatives_considered;
        apply(rec, measure([&] { select(w.document, w.catalog, w.registry, sel); },
                           opts.reps, opts.warmup, opts.cell_cap_seconds));
    } catch (const BudgetExceeded&) {
        rec.timed_out = true;
    }
    return rec;
}

BenchRecord bench_codegen(const SyntheticWorkload& spec, const BenchOptions& opts) {
    BenchRecord rec = record_for(spec, "codegen");
    SyntheticWorkload plan_spec = spec;
    plan_spec.with_app_slos = false; // selection is per-component, so plans
                                     // for large instances stay cheap
    const GeneratedWorkload w = generate_workload(plan_spec);
    const SelectionPlan plan =
        select(w.document, w.catalog, w.registry, SelectOptions{opts.budget});
    const TemplateSet templates = bench_templates();
    apply(rec, measure([&] { generate_hcl(plan, w.document, templates); }, opts.reps,
                       opts.warmup, opts.cell_cap_seconds));
    return rec;
}

std::string csv_header() {
    return "phase,n_components,n_slos,connectivity,n_candidates,reps,mean_ms,"
           "stddev_ms,timed_out";
}

std::string to_csv_row(const BenchRecord& record) {
    std::ostringstream out;
    out << record.phase << ',' << record.n_components << ',' << record.n_slos << ','
        << record.connectivity << ',' << record.n_candidates << ',' << record.reps
        << ',' << record.mean_ms << ',' << record.stddev_ms << ','
        << (record.timed_out ? 1 : 0);
    return out.str();
}

} // namespace sloml
