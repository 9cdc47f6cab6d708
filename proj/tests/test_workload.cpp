#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "sloml/parser.hpp"
#include "sloml/selector.hpp"
#include "sloml/workload.hpp"

using namespace sloml;

TEST_CASE("generation is deterministic for a fixed seed") {
    SyntheticWorkload spec;
    spec.n_components = 5;
    spec.n_slos_per_component = 3;
    spec.n_candidates_per_component = 4;
    spec.connectivity = Connectivity::mid;
    spec.seed = 42;

    const GeneratedWorkload a = generate_workload(spec);
    const GeneratedWorkload b = generate_workload(spec);
    CHECK(a.slo_text == b.slo_text);
    CHECK(serialize_catalog(a.catalog, a.registry) ==
          serialize_catalog(b.catalog, b.registry));
    CHECK(a.topology.edges == b.topology.edges);

    spec.seed = 43;
    const GeneratedWorkload c = generate_workload(spec);
    CHECK(a.slo_text != c.slo_text);
}

TEST_CASE("generated documents parse and validate cleanly") {
    SyntheticWorkload spec;
    spec.n_components = 4;
    spec.n_slos_per_component = 2;
    spec.n_candidates_per_component = 3;
    spec.seed = 7;
    const GeneratedWorkload wl = generate_workload(spec);

    const ValidationReport report =
        validate_all(wl.slo_text, wl.registry, &wl.topology);
    CHECK(report.is_valid());

    ParseResult parsed = parse_slo(wl.slo_text, wl.registry);
    REQUIRE(parsed.document.has_value());
    CHECK(parsed.document->components.size() == 4);
    for (const auto& [id, comp] : parsed.document->components)
        CHECK(comp.slos.size() >= static_cast<size_t>(spec.n_slos_per_component));
}

TEST_CASE("connectivity classes shape the data-flow graph") {
    SUBCASE("low is a ring") {
        const auto edges = generate_edges(3, Connectivity::low, 1);
        CHECK(edges.size() == 3);
        std::set<std::string> sources, targets;
        for (const auto& e : edges) {
            sources.insert(e.from);
            targets.insert(e.to);
        }
        CHECK(sources.size() == 3); // every component appears once on each side
        CHECK(targets.size() == 3);
    }
    SUBCASE("edge counts grow with the class") {
        for (int n : {12, 24, 48}) {
            CAPTURE(n);
            const auto low = generate_edges(n, Connectivity::low, 9);
            const auto mid = generate_edges(n, Connectivity::mid, 9);
            const auto high = generate_edges(n, Connectivity::high, 9);
            CHECK(low.size() == static_cast<size_t>(n));
            CHECK(mid.size() > low.size());
            CHECK(high.size() > mid.size());
            // high: average degree of at least n/2
            CHECK(2 * high.size() >= static_cast<size_t>(n) * (n / 2) / 2);
        }
    }
    SUBCASE("edges never leave the component set and are duplicate-free") {
        for (auto c : {Connectivity::low, Connectivity::mid, Connectivity::high}) {
            const auto edges = generate_edges(10, c, 3);
            std::set<std::pair<std::string, std::string>> seen;
            for (const auto& e : edges) {
                CHECK(e.from != e.to);
                CHECK(seen.emplace(e.from, e.to).second);
            }
        }
    }
}

TEST_CASE("every generated instance stays selectable") {
    for (unsigned long long seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        CAPTURE(seed);
        SyntheticWorkload spec;
        spec.n_components = 3;
        spec.n_slos_per_component = 3;
        spec.n_candidates_per_component = 4;
        spec.seed = seed;
        const GeneratedWorkload wl = generate_workload(spec);
        const SelectionPlan plan = select(wl.document, wl.catalog, wl.registry);
        CHECK(plan.combination.feasible());
        CHECK(plan.combination.assignment.size() == 3);
    }
}

TEST_CASE("catalog size and shape follow the spec parameters") {
    SyntheticWorkload spec;
    spec.n_components = 6;
    spec.n_slos_per_component = 2;
    spec.n_candidates_per_component = 5;
    spec.seed = 11;
    const GeneratedWorkload wl = generate_workload(spec);

    CHECK(wl.catalog.offerings.size() == 30);
    std::map<std::string, int> per_type;
    for (const auto& off : wl.catalog.offerings) ++per_type[off.serves_type];
    CHECK(per_type.size() == 6);
    for (const auto& [type, count] : per_type) CHECK(count == 5);
}
