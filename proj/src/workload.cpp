#include "sloml/workload.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "sloml/parser.hpp"

namespace sloml {

std::optional<Connectivity> parse_connectivity(const std::string& s) {
    if (s == "low") return Connectivity::low;
    if (s == "mid") return Connectivity::mid;
    if (s == "high") return Connectivity::high;
    return std::nullopt;
}

std::string to_string(Connectivity c) {
    switch (c) {
        case Connectivity::low: return "low";
        case Connectivity::mid: return "mid";
        case Connectivity::high: return "high";
    }
    return "?";
}

namespace {

// Distribution-free uniforms: std::uniform_real_distribution is
// implementation-defined, which would break cross-platform determinism.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

std::string comp_id(int i) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "comp_%04d", i);
    return buf;
}

} // namespace

std::vector<DataFlowEdge> generate_edges(int n, Connectivity c, unsigned long long seed) {
    std::vector<DataFlowEdge> edges;
    if (n < 2) return edges;
    switch (c) {
        case Connectivity::low:
            // Ring: each component feeds the next.
            for (int i = 0; i < n; ++i)
                edges.push_back({comp_id(i), comp_id((i + 1) % n)});
            break;
        case Connectivity::mid: {
            // Cliques of up to 6 around a hub, hubs joined in a ring.
            const int group = 6;
            std::vector<int> hubs;
            for (int g = 0; g * group < n; ++g) {
                const int lo = g * group;
                const int hi = std::min(n, lo + group);
                hubs.push_back(lo);
                for (int i = lo; i < hi; ++i)
                    for (int j = i + 1; j < hi; ++j)
                        edges.push_back({comp_id(i), comp_id(j)});
            }
            if (hubs.size() > 1)
                for (size_t g = 0; g < hubs.size(); ++g)
                    edges.push_back({comp_id(hubs[g]),
                                     comp_id(hubs[(g + 1) % hubs.size()])});
            break;
        }
        case Connectivity::high: {
            // Dense: each unordered pair linked with probability 0.75,
            // giving average degree 0.75(n-1) >= n/2 for n >= 3.
            std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (uniform01(rng) < 0.75) edges.push_back({comp_id(i), comp_id(j)});
            break;
        }
    }
    return edges;
}

GeneratedWorkload generate_workload(const SyntheticWorkload& spec) {
    GeneratedWorkload out;
    const int n = spec.n_components;
    const int n_slos = spec.n_slos_per_component;
    out.registry = registry_with_synthetic(n_slos);

    std::mt19937_64 rng(spec.seed);
    const Unit ratio = *find_unit("");
    const Unit gb = *find_unit("GB");
    const Unit usd = *find_unit("$");

    static const char* kProviders[] = {"AWS", "Azure", "Google", "RackSpace"};
    static const char* kRegions[] = {"us-east-1", "eu-west-1", "ap-south-1"};

    double max_price = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::string id = comp_id(i);
        const std::string type = "bench_type_" + std::to_string(i);
        ComponentSpec comp;
        comp.config["type"] = type;

        std::vector<double> required(n_slos);
        for (int s = 0; s < n_slos; ++s) {
            required[s] = uniform(rng, 0.90, 0.99);
            comp.slos.push_back({synthetic_slo_name(s), Operator::GEQ,
                                 ScalarValue{required[s]}, ratio});
        }
        if (spec.with_app_slos)
            comp.slos.push_back({"Monthly_egress_bandwidth", Operator::LEQ,
                                 ScalarValue{2000.0}, gb});

        for (int j = 0; j < spec.n_candidates_per_component; ++j) {
            ServiceOffering off;
            off.provider = kProviders[j % 4];
            off.service_id = "svc_" + std::to_string(i) + "_" + std::to_string(j);
            off.region = kRegions[j % 3];
            off.serves_type = type;
            off.egress_price_per_gb = j == 0 ? 0.01 : uniform(rng, 0.01, 0.12);
            max_price = std::max(max_price, off.egress_price_per_gb);
            for (int s = 0; s < n_slos; ++s) {
                // Candidate 0 is the guaranteed-feasible anchor.
                off.offered_slos[synthetic_slo_name(s)] =
                    j == 0 ? required[s] + 0.005
                           : required[s] + uniform(rng, -0.02, 0.08);
            }
            if (spec.with_app_slos) {
                off.offered_slos["Monthly_egress_bandwidth"] = 2000.0;
                off.offered_slos["Monthly_uptime_percentage"] =
                    j == 0 ? 0.999 : uniform(rng, 0.95, 0.9999);
            }
            out.catalog.offerings.push_back(std::move(off));
        }

        out.document.components.emplace(id, std::move(comp));
    }

    out.document.data_flow = generate_edges(n, spec.connectivity, spec.seed);

    if (spec.with_app_slos) {
        out.document.application_slos.push_back(
            {"Monthly_uptime_percentage", Operator::GEQ, ScalarValue{0.9}, ratio});
        // Budget generous enough that the anchor assignment is always
        // feasible, so every instance has a solution.
        const double budget =
            2000.0 * std::max(max_price, 0.01) *
                static_cast<double>(out.document.data_flow.size()) + 1.0;
        out.document.application_slos.push_back(
            {"Monthly_bandwidth_cost", Operator::LEQ, ScalarValue{budget}, usd});
    }

    out.catalog.version = "\"bench-1\"";
    out.catalog.source_path = "<synthetic>";
    out.topology = derive_topology(out.document);
    out.slo_text = serialize(out.document);
    return out;
}

} // namespace sloml
