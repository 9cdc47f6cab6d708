#pragma once

#include <string>

#include "sloml/catalog.hpp"
#include "sloml/document.hpp"

namespace sloml {

enum class Connectivity { low, mid, high };

std::optional<Connectivity> parse_connectivity(const std::string& s);
std::string to_string(Connectivity c);

/// Shape of a synthetic benchmark instance. Generation is deterministic
/// given the seed.
struct SyntheticWorkload {
    int n_components{2};
    int n_slos_per_component{2};
    Connectivity connectivity{Connectivity::low};
    int n_candidates_per_component{2};
    unsigned long long seed{0};
    bool with_app_slos{true};
};

struct GeneratedWorkload {
    SloRegistry registry;  // default registry + the synthetic SLO names
    std::string slo_text;  // .slo document text
    SloDocument document;
    TopologyModel topology;
    Catalog catalog;
};

/// Edges for n components at the given connectivity class:
/// low = ring, mid = hub-and-spoke cliques with a hub ring, high = dense
/// random pairs with average degree >= n/2.
std::vector<DataFlowEdge> generate_edges(int n, Connectivity c, unsigned long long seed);

/// Deterministic synthetic document, topology, and catalog. Every component
/// gets at least one feasible offering (candidate 0 is a guaranteed-feasible
/// anchor), so benchmarks measure selection rather than infeasibility.
GeneratedWorkload generate_workload(const SyntheticWorkload& spec);

} // namespace sloml
