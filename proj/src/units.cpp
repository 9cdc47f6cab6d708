#include "sloml/units.hpp"

#include <unordered_map>

#include "sloml/errors.hpp"

namespace sloml {

std::string to_string(UnitKind kind) {
    switch (kind) {
        case UnitKind::time: return "time";
        case UnitKind::data_size: return "data_size";
        case UnitKind::currency: return "currency";
        case UnitKind::percentage: return "percentage";
        case UnitKind::dimensionless: return "dimensionless";
    }
    return "?";
}

namespace {

// Base units: seconds, GB (decimal convention, 1 TB = 1000 GB), USD, ratio.
const std::unordered_map<std::string, Unit>& unit_table() {
    static const std::unordered_map<std::string, Unit> table = {
        {"ms", {"ms", UnitKind::time, 1e-3}},
        {"s", {"s", UnitKind::time, 1.0}},
        {"seconds", {"seconds", UnitKind::time, 1.0}},
        {"minutes", {"minutes", UnitKind::time, 60.0}},
        {"hours", {"hours", UnitKind::time, 3600.0}},
        {"days", {"days", UnitKind::time, 86400.0}},
        {"MB", {"MB", UnitKind::data_size, 1e-3}},
        {"GB", {"GB", UnitKind::data_size, 1.0}},
        {"TB", {"TB", UnitKind::data_size, 1e3}},
        {"$", {"$", UnitKind::currency, 1.0}},
        {"USD", {"USD", UnitKind::currency, 1.0}},
        {"%", {"%", UnitKind::percentage, 1.0}},
        {"", {"", UnitKind::dimensionless, 1.0}},
    };
    return table;
}

} // namespace

std::optional<Unit> find_unit(const std::string& symbol) {
    const auto& table = unit_table();
    auto it = table.find(symbol);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

double convert_unit(double x, const Unit& from, const Unit& to) {
    if (from.kind != to.kind) throw IncompatibleUnits(from.symbol, to.symbol);
    return x * from.factor_to_base / to.factor_to_base;
}

double to_base(double x, const Unit& unit) {
    return x * unit.factor_to_base;
}

} // namespace sloml
