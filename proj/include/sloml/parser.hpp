#pragma once

#include <optional>
#include <string>

#include "sloml/document.hpp"

namespace sloml {

/// Outcome of parsing: the document is present iff the report carries no
/// syntax errors. On failure the report still describes every error found,
/// and `partial` holds whatever could be recovered so that the later
/// validation stages can run over it.
struct ParseResult {
    std::optional<SloDocument> document;
    SloDocument partial;
    ValidationReport report;
};

/// Strips //-to-end-of-line comments outside string literals. The published
/// .slo example format carries such comments, which plain JSON forbids.
std::string strip_comments(const std::string& text);

/// Parses a .slo document. Total: any input yields a result, never a throw.
ParseResult parse_slo(const std::string& text, const SloRegistry& registry);

/// Serializes a document back to .slo text. serialize(parse(t)) reparses to
/// a structurally equal document.
std::string serialize(const SloDocument& doc);

/// Checks every (slo name, unit) pair against the registry's unit kind.
ValidationReport validate_units(const SloDocument& doc, const SloRegistry& registry);

/// Checks component references and data-flow edges against the topology.
ValidationReport validate_consistency(const SloDocument& doc, const TopologyModel& topo);

/// Topology implied by the document itself (components + data_flow).
TopologyModel derive_topology(const SloDocument& doc);

/// Parses the companion topology descriptor.
/// Format: { "components": [{"id", "type"}], "edges": [{"from", "to"}] }
struct TopologyParseResult {
    std::optional<TopologyModel> topology;
    ValidationReport report;
};
TopologyParseResult parse_topology(const std::string& text);

/// Full pipeline: syntax, then units and consistency over the (possibly
/// partial) document. Stages are independent; all issues are collected.
ValidationReport validate_all(const std::string& text, const SloRegistry& registry,
                              const TopologyModel* topology = nullptr);

} // namespace sloml
