#include "sloml/slo_model.hpp"

#include <cmath>
#include <cstdio>

#include "sloml/errors.hpp"

namespace sloml {

std::optional<CategoryLabel> parse_category(const std::string& label) {
    if (label == "low") return CategoryLabel::low;
    if (label == "medium") return CategoryLabel::medium;
    if (label == "high") return CategoryLabel::high;
    return std::nullopt;
}

std::string to_string(CategoryLabel label) {
    switch (label) {
        case CategoryLabel::low: return "low";
        case CategoryLabel::medium: return "medium";
        case CategoryLabel::high: return "high";
    }
    return "?";
}

std::optional<Operator> parse_operator(const std::string& token) {
    if (token == "<") return Operator::LT;
    if (token == "<=") return Operator::LEQ;
    if (token == ">") return Operator::GT;
    if (token == ">=") return Operator::GEQ;
    if (token == "=") return Operator::EQ;
    if (token == "in") return Operator::IN;
    return std::nullopt;
}

std::string to_token(Operator op) {
    switch (op) {
        case Operator::LT: return "<";
        case Operator::LEQ: return "<=";
        case Operator::GT: return ">";
        case Operator::GEQ: return ">=";
        case Operator::EQ: return "=";
        case Operator::IN: return "in";
    }
    return "?";
}

bool operator_accepts(Operator op, const SloValue& value) {
    const bool interval = std::holds_alternative<IntervalValue>(value);
    return (op == Operator::IN) == interval;
}

std::string to_string(Direction d) {
    return d == Direction::higher_is_better ? "higher_is_better" : "lower_is_better";
}

std::string to_string(Aggregation a) {
    switch (a) {
        case Aggregation::SUM: return "SUM";
        case Aggregation::MIN: return "MIN";
        case Aggregation::MAX: return "MAX";
    }
    return "?";
}

void SloRegistry::add(SloDefinition def) {
    auto [it, inserted] = entries_.emplace(def.name, std::move(def));
    if (!inserted) throw DuplicateSloName(it->first);
}

const SloDefinition* SloRegistry::lookup(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

SloRegistry default_registry() {
    SloRegistry reg;
    const auto higher = Direction::higher_is_better;
    const auto lower = Direction::lower_is_better;
    reg.add({"Monthly_uptime_percentage", UnitKind::dimensionless, higher, Aggregation::MIN});
    reg.add({"Monthly_consistency_percentage", UnitKind::dimensionless, higher, Aggregation::MIN});
    reg.add({"Monthly_latency_attainment_percentage", UnitKind::dimensionless, higher, Aggregation::MIN});
    reg.add({"Monthly_throughput_percentage", UnitKind::dimensionless, higher, Aggregation::MIN});
    reg.add({"Monthly_egress_bandwidth", UnitKind::data_size, lower, Aggregation::SUM});
    reg.add({"Monthly_bandwidth_cost", UnitKind::currency, lower, Aggregation::SUM});
    // Aggregations for the two time SLOs are not dictated anywhere;
    // worst-case (MAX) is the conservative default.
    reg.add({"Response_Time", UnitKind::time, lower, Aggregation::MAX});
    reg.add({"Migration_Time", UnitKind::time, lower, Aggregation::MAX});
    reg.add({"Memory_Size", UnitKind::data_size, higher, Aggregation::MIN});
    return reg;
}

std::string synthetic_slo_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "Bench_metric_%03d", i);
    return buf;
}

SloRegistry registry_with_synthetic(int count) {
    SloRegistry reg = default_registry();
    for (int i = 0; i < count; ++i) {
        reg.add({synthetic_slo_name(i), UnitKind::dimensionless,
                 Direction::higher_is_better, Aggregation::MIN});
    }
    return reg;
}

double SloRequirement::required_in_base() const {
    return to_base(std::get<ScalarValue>(value).value, unit);
}

IntervalValue SloRequirement::interval_in_base() const {
    const auto& iv = std::get<IntervalValue>(value);
    return {to_base(iv.lower, unit), to_base(iv.upper, unit)};
}

bool satisfies(double offered, const SloRequirement& req) {
    if (req.op == Operator::IN) {
        const auto iv = req.interval_in_base();
        return iv.lower <= offered && offered <= iv.upper;
    }
    const double r = req.required_in_base();
    switch (req.op) {
        case Operator::GEQ: return offered >= r;
        case Operator::GT: return offered > r;
        case Operator::LEQ: return offered <= r;
        case Operator::LT: return offered < r;
        case Operator::EQ:
            return std::abs(offered - r) <= kEqTolerance * std::max(1.0, std::abs(r));
        case Operator::IN: break;
    }
    return false;
}

} // namespace sloml
