#pragma once

#include <map>
#include <string>
#include <vector>

#include "sloml/slo_model.hpp"

namespace sloml {

struct ComponentSpec {
    std::vector<SloRequirement> slos;
    std::map<std::string, std::string> config; // at least "type"

    const std::string& type() const { return config.at("type"); }
};

struct DataFlowEdge {
    std::string from;
    std::string to;
    bool operator==(const DataFlowEdge&) const = default;
};

/// Parsed form of a .slo file.
struct SloDocument {
    std::map<std::string, ComponentSpec> components;
    std::vector<SloRequirement> application_slos;
    std::vector<DataFlowEdge> data_flow;
};

struct TopologyComponent {
    std::string id;
    std::string service_kind;
};

/// Minimal stand-in for the infrastructure model the SLO file is checked
/// against. When no explicit topology is given, one is derived from the
/// document itself.
struct TopologyModel {
    std::vector<TopologyComponent> components;
    std::vector<DataFlowEdge> edges;
};

enum class ValidationStage { syntax, unit, consistency };
enum class Severity { error, warning };

std::string to_string(ValidationStage stage);

struct ValidationIssue {
    ValidationStage stage{ValidationStage::syntax};
    Severity severity{Severity::error};
    std::string location; // JSON-path, e.g. $.database_comp.SLOs[0].operator
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool is_valid() const {
        for (const auto& issue : issues)
            if (issue.severity == Severity::error) return false;
        return true;
    }

    void add(ValidationStage stage, std::string location, std::string message,
             Severity severity = Severity::error) {
        issues.push_back({stage, severity, std::move(location), std::move(message)});
    }

    void merge(const ValidationReport& other) {
        issues.insert(issues.end(), other.issues.begin(), other.issues.end());
    }
};

} // namespace sloml
