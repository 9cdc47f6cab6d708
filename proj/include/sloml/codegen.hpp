#pragma once

#include <map>
#include <string>
#include <vector>

#include "sloml/selector.hpp"

namespace sloml {

/// Per-provider code templates: provider block attributes and, per served
/// component type, the resource block type and its default attributes.
/// Loaded from versioned template files so defaults can change without a
/// rebuild.
struct ResourceTemplate {
    std::string block_type;
    std::vector<std::pair<std::string, std::string>> defaults;
};

struct ProviderTemplate {
    std::string provider_name; // HCL provider label, e.g. "aws"
    std::vector<std::pair<std::string, std::string>> provider_attributes;
    std::map<std::string, ResourceTemplate> resources; // keyed by serves_type
};

class TemplateSet {
  public:
    /// Loads every *.json template in the directory. Throws CodegenError on
    /// a malformed template.
    static TemplateSet load(const std::string& dir);

    void add(const std::string& catalog_provider, ProviderTemplate tmpl);
    const ProviderTemplate* find(const std::string& catalog_provider) const;

  private:
    std::map<std::string, ProviderTemplate> templates_; // keyed by catalog provider
};

struct ManifestEntry {
    std::string provider;
    std::string service_id;
    std::string region;
};

struct DeploymentArtifact {
    std::string hcl_text;
    std::map<std::string, ManifestEntry> manifest; // component id -> selection
    std::string generated_at;                      // ISO-8601, not part of hcl_text
};

struct DeployDefect {
    int line{0};
    int column{0};
    std::string message;
};

struct DeployReport {
    std::vector<DeployDefect> defects;
    int resource_blocks{0};
    int provider_blocks{0};
    bool clean() const { return defects.empty(); }
};

/// Resource names are component ids sanitized to [a-z0-9_].
std::string sanitize_resource_name(const std::string& id);

/// Emits one provider block per distinct provider and one resource block
/// per component. Pure in (plan, doc, templates): same plan yields
/// byte-identical hcl_text. Throws CodegenError for a provider or component
/// type with no template; an infeasible plan is a precondition violation.
DeploymentArtifact generate_hcl(const SelectionPlan& plan, const SloDocument& doc,
                                const TemplateSet& templates);

/// Structural re-check of the emitted HCL (blocks, braces, quotes,
/// attribute lines) plus manifest/resource correspondence. Never contacts
/// any cloud API.
DeployReport dry_run_deploy(const DeploymentArtifact& artifact);

std::string serialize_manifest(const DeploymentArtifact& artifact);

/// Writes out_dir/main.tf and out_dir/manifest.json.
void write_artifact(const DeploymentArtifact& artifact, const std::string& out_dir);

} // namespace sloml
