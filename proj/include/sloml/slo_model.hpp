#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sloml/units.hpp"

namespace sloml {

// ---------------------------------------------------------------------------
// Values

enum class CategoryLabel { low, medium, high };

std::optional<CategoryLabel> parse_category(const std::string& label);
std::string to_string(CategoryLabel label);

struct ScalarValue {
    double value{0.0};
    bool operator==(const ScalarValue&) const = default;
};

/// Closed interval [lower, upper], lower <= upper.
struct IntervalValue {
    double lower{0.0};
    double upper{0.0};
    bool operator==(const IntervalValue&) const = default;
};

struct CategoricalValue {
    CategoryLabel label{CategoryLabel::medium};
    bool operator==(const CategoricalValue&) const = default;
};

using SloValue = std::variant<ScalarValue, IntervalValue, CategoricalValue>;

// ---------------------------------------------------------------------------
// Operators

enum class Operator { LT, LEQ, GT, GEQ, EQ, IN };

/// Maps the surface token ("<", "<=", ">", ">=", "=", "in") to an operator.
std::optional<Operator> parse_operator(const std::string& token);
std::string to_token(Operator op);

/// IN pairs only with intervals; the comparison operators only with scalars
/// or categoricals.
bool operator_accepts(Operator op, const SloValue& value);

// ---------------------------------------------------------------------------
// Registry

enum class Direction { higher_is_better, lower_is_better };
enum class Aggregation { SUM, MIN, MAX };

std::string to_string(Direction d);
std::string to_string(Aggregation a);

struct SloDefinition {
    std::string name;
    UnitKind allowed_unit_kind{UnitKind::dimensionless};
    Direction direction{Direction::higher_is_better};
    Aggregation aggregation{Aggregation::MIN};
};

/// The SLO vocabulary. Built once, read-only afterwards; adding a new SLO
/// concept is a single add() call.
class SloRegistry {
  public:
    void add(SloDefinition def); // throws DuplicateSloName
    const SloDefinition* lookup(const std::string& name) const;
    const std::map<std::string, SloDefinition>& entries() const { return entries_; }

  private:
    std::map<std::string, SloDefinition> entries_;
};

/// Registry preloaded with the built-in SLO set.
SloRegistry default_registry();

/// Default registry plus `count` synthetic benchmark SLOs
/// (Bench_metric_000 .. ), dimensionless, higher-is-better, MIN-aggregated.
SloRegistry registry_with_synthetic(int count);

/// Name of the i-th synthetic benchmark SLO.
std::string synthetic_slo_name(int i);

// ---------------------------------------------------------------------------
// Requirements

struct SloRequirement {
    std::string slo_name;
    Operator op{Operator::GEQ};
    SloValue value;
    Unit unit;
    // Position in the source SLOs array; keeps JSON-path locations stable
    // when earlier entries were dropped as unparseable.
    int source_index{-1};

    bool is_categorical() const {
        return std::holds_alternative<CategoricalValue>(value);
    }

    /// Scalar threshold in the kind's base unit. Precondition: scalar value.
    double required_in_base() const;

    /// Interval bounds in base units. Precondition: interval value.
    IntervalValue interval_in_base() const;
};

/// Relative tolerance used by the EQ operator.
inline constexpr double kEqTolerance = 1e-9;

/// Does an offered value (already in the requirement's base unit) meet the
/// requirement? Precondition: categorical values already resolved to scalars.
bool satisfies(double offered, const SloRequirement& req);

} // namespace sloml
