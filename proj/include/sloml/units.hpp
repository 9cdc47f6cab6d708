#pragma once

#include <optional>
#include <string>

namespace sloml {

enum class UnitKind { time, data_size, currency, percentage, dimensionless };

std::string to_string(UnitKind kind);

/// A unit of measure. Units of the same kind convert through a common base
/// unit (seconds, GB, USD, ratio).
struct Unit {
    std::string symbol;
    UnitKind kind{UnitKind::dimensionless};
    double factor_to_base{1.0};

    bool operator==(const Unit&) const = default;
};

/// Looks a unit up by symbol in the built-in table.
std::optional<Unit> find_unit(const std::string& symbol);

/// x expressed in `from`, returned expressed in `to`.
/// Throws IncompatibleUnits when the kinds differ.
double convert_unit(double x, const Unit& from, const Unit& to);

/// Shorthand: value in `unit` expressed in the kind's base unit.
double to_base(double x, const Unit& unit);

} // namespace sloml
