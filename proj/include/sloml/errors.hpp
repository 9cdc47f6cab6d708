#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sloml {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DuplicateSloName : Error {
    explicit DuplicateSloName(const std::string& name)
        : Error("duplicate SLO name: " + name) {}
};

struct IncompatibleUnits : Error {
    IncompatibleUnits(const std::string& from, const std::string& to)
        : Error("incompatible units: '" + from + "' -> '" + to + "'") {}
};

struct UnknownUnit : Error {
    explicit UnknownUnit(const std::string& symbol)
        : Error("unknown unit symbol: '" + symbol + "'") {}
};

struct CatalogError : Error {
    using Error::Error;
};

struct UnresolvableCategory : Error {
    explicit UnresolvableCategory(const std::string& slo_name)
        : Error("no candidate offers SLO '" + slo_name +
                "', categorical value cannot be resolved") {}
};

struct InfeasibleSelection : Error {
    std::vector<std::string> infeasible_components;

    explicit InfeasibleSelection(std::vector<std::string> components)
        : Error(describe(components)),
          infeasible_components(std::move(components)) {}

  private:
    static std::string describe(const std::vector<std::string>& components) {
        if (components.empty())
            return "no service combination satisfies the application-level SLOs";
        std::string msg = "no feasible offering for component(s):";
        for (const auto& c : components) msg += " " + c;
        return msg;
    }
};

struct BudgetExceeded : Error {
    long long combinations;
    long long budget;

    BudgetExceeded(long long combos, long long limit)
        : Error("combination enumeration would need " + std::to_string(combos) +
                " evaluations, over the budget of " + std::to_string(limit) +
                "; narrow the catalog or raise --budget"),
          combinations(combos), budget(limit) {}
};

struct CodegenError : Error {
    using Error::Error;
};

} // namespace sloml
