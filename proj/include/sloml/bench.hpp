#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sloml/workload.hpp"

namespace sloml {

struct BenchRecord {
    std::string phase; // parse | select | codegen
    int n_components{0};
    int n_slos{0};
    std::string connectivity;
    int n_candidates{0};
    int reps{0};
    double mean_ms{0.0};
    double stddev_ms{0.0};
    bool timed_out{false};
    long long combinations{0}; // select phase only
};

struct BenchOptions {
    int reps{100};
    int warmup{3};
    double cell_cap_seconds{60.0};
    long long budget{10'000'000};
};

struct LinearFit {
    double slope{0.0};
    double intercept{0.0};
    double r2{0.0};
};

/// Least-squares line through (x, y); r2 is the coefficient of
/// determination.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Times fn() `reps` times after `warmup` discarded iterations; wall-clock
/// around the call only. Stops early (timed_out) when the cap is exceeded.
struct TimingStats {
    double mean_ms{0.0};
    double stddev_ms{0.0};
    int reps{0};
    bool timed_out{false};
};
TimingStats measure(const std::function<void()>& fn, int reps, int warmup,
                    double cap_seconds);

BenchRecord bench_parse(const SyntheticWorkload& spec, const BenchOptions& opts);
BenchRecord bench_select(const SyntheticWorkload& spec, const BenchOptions& opts);
BenchRecord bench_codegen(const SyntheticWorkload& spec, const BenchOptions& opts);

std::string csv_header();
std::string to_csv_row(const BenchRecord& record);

} // namespace sloml
