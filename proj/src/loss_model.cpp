#include "practrel/loss_model.hpp"

#include "practrel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace practrel {

ParameterSpace::ParameterSpace(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw ValidationError("parameter space bounds must be finite");
    if (!(lo < hi))
        throw ValidationError(fmt::format("parameter space requires lo < hi (got [{}, {}])", lo, hi));
}

const char* to_string(Action a) noexcept { return a == Action::a0 ? "a0" : "a1"; }

ActionPair::ActionPair(std::string a0, std::string a1, std::string a0_desc, std::string a1_desc)
    : a0_label(std::move(a0)),
      a1_label(std::move(a1)),
      a0_description(std::move(a0_desc)),
      a1_description(std::move(a1_desc)) {
    if (a0_label.empty() || a1_label.empty())
        throw ValidationError("action labels must be non-empty");
    if (a0_label == a1_label)
        throw ValidationError("action labels must be distinct");
}

const char* to_string(LossKind k) noexcept {
    switch (k) {
    case LossKind::piecewise_linear: return "piecewise_linear";
    case LossKind::quadratic: return "quadratic";
    case LossKind::table: return "table";
    case LossKind::builtin_coin_demo: return "builtin_coin_demo";
    }
    return "unknown";
}

LossSpec LossSpec::piecewise_linear(ParameterSpace space, HingeLoss a0, HingeLoss a1) {
    return LossSpec(space, LossKind::piecewise_linear, a0, a1);
}

LossSpec LossSpec::quadratic(ParameterSpace space, QuadraticLoss a0, QuadraticLoss a1) {
    return LossSpec(space, LossKind::quadratic, a0, a1);
}

LossSpec LossSpec::table(ParameterSpace space, TableLoss a0, TableLoss a1) {
    return LossSpec(space, LossKind::table, std::move(a0), std::move(a1));
}

LossSpec LossSpec::coin_demo() {
    return LossSpec(ParameterSpace(-0.5, 0.5), LossKind::builtin_coin_demo, std::monostate{},
                    std::monostate{});
}

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

bool strictly_increasing(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

// Structural problems of one action's coefficients; empty when evaluable.
std::vector<std::string> coefficient_problems(const LossSpec::Params& p, const ParameterSpace& space,
                                              Action a) {
    std::vector<std::string> out;
    const std::string who = to_string(a);
    if (const auto* h = std::get_if<HingeLoss>(&p)) {
        if (!std::isfinite(h->intercept) || !std::isfinite(h->center) ||
            !std::isfinite(h->slope_left) || !std::isfinite(h->slope_right))
            out.push_back(who + ": non-finite coefficient");
    } else if (const auto* q = std::get_if<QuadraticLoss>(&p)) {
        if (!std::isfinite(q->c) || !std::isfinite(q->center) || !std::isfinite(q->offset))
            out.push_back(who + ": non-finite coefficient");
    } else if (const auto* t = std::get_if<TableLoss>(&p)) {
        if (t->grid.size() != t->values.size())
            out.push_back(fmt::format("{}: grid has {} points but {} values", who, t->grid.size(),
                                      t->values.size()));
        if (t->grid.size() < 2)
            out.push_back(who + ": table needs at least 2 grid points");
        if (!all_finite(t->grid) || !all_finite(t->values))
            out.push_back(who + ": non-finite coefficient");
        if (!strictly_increasing(t->grid))
            out.push_back(who + ": grid not increasing");
        if (!t->grid.empty() && (t->grid.front() > space.lo() || t->grid.back() < space.hi()))
            out.push_back(fmt::format("{}: grid [{}, {}] does not cover [{}, {}]", who,
                                      t->grid.front(), t->grid.back(), space.lo(), space.hi()));
    }
    return out;
}

double eval_params(const LossSpec::Params& p, double theta, Action a) {
    if (const auto* h = std::get_if<HingeLoss>(&p)) {
        return h->intercept + h->slope_left * std::max(0.0, h->center - theta) +
               h->slope_right * std::max(0.0, theta - h->center);
    }
    if (const auto* q = std::get_if<QuadraticLoss>(&p)) {
        const double d = theta - q->center;
        return q->c * d * d + q->offset;
    }
    if (const auto* t = std::get_if<TableLoss>(&p)) {
        const auto& g = t->grid;
        auto it = std::lower_bound(g.begin(), g.end(), theta);
        const auto i = static_cast<std::size_t>(it - g.begin());
        if (it != g.end() && *it == theta) return t->values[i];
        const std::size_t hi = std::min(std::max<std::size_t>(i, 1), g.size() - 1);
        const std::size_t lo = hi - 1;
        const double w = (theta - g[lo]) / (g[hi] - g[lo]);
        return t->values[lo] + w * (t->values[hi] - t->values[lo]);
    }
    // builtin coin demo
    const double b = std::abs(theta);
    return a == Action::a0 ? b : kCoinDemoSlope * (0.5 - b);
}

std::string first_problem(const LossSpec::Params& p, const ParameterSpace& space, LossKind kind,
                          Action a) {
    if (kind != LossKind::builtin_coin_demo && std::holds_alternative<std::monostate>(p))
        return std::string(to_string(a)) + ": missing coefficients";
    auto problems = coefficient_problems(p, space, a);
    return problems.empty() ? std::string() : problems.front();
}

}  // namespace

LossSpec::LossSpec(ParameterSpace space, LossKind kind, Params a0, Params a1)
    : space_(space), kind_(kind), a0_(std::move(a0)), a1_(std::move(a1)) {
    a0_problem_ = first_problem(a0_, space_, kind_, Action::a0);
    a1_problem_ = first_problem(a1_, space_, kind_, Action::a1);
}

std::vector<double> LossSpec::breakpoints() const {
    std::vector<double> out;
    auto collect = [&](const Params& p) {
        if (const auto* h = std::get_if<HingeLoss>(&p)) {
            out.push_back(h->center);
        } else if (const auto* t = std::get_if<TableLoss>(&p)) {
            out.insert(out.end(), t->grid.begin(), t->grid.end());
        } else if (std::holds_alternative<std::monostate>(p)) {
            out.push_back(0.0);
        }
    };
    collect(a0_);
    collect(a1_);
    std::erase_if(out, [&](double x) { return !std::isfinite(x) || !space_.contains(x); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LossSpec LossSpec::scaled(double factor) const {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw ParameterError("loss scaling factor must be finite and positive");
    if (kind_ == LossKind::builtin_coin_demo) {
        // The demo curves are expressible exactly as hinge losses.
        const HingeLoss a0{0.0, 0.0, factor, factor};
        const HingeLoss a1{factor * kCoinDemoSlope * 0.5, 0.0, -factor * kCoinDemoSlope,
                           -factor * kCoinDemoSlope};
        return piecewise_linear(space_, a0, a1);
    }
    auto scale = [factor](Params p) -> Params {
        if (auto* h = std::get_if<HingeLoss>(&p)) {
            h->intercept *= factor;
            h->slope_left *= factor;
            h->slope_right *= factor;
        } else if (auto* q = std::get_if<QuadraticLoss>(&p)) {
            q->c *= factor;
            q->offset *= factor;
        } else if (auto* t = std::get_if<TableLoss>(&p)) {
            for (double& v : t->values) v *= factor;
        }
        return p;
    };
    return LossSpec(space_, kind_, scale(a0_), scale(a1_));
}

double evaluate_loss(const LossSpec& spec, double theta, Action action) {
    const auto& space = spec.space();
    if (!(theta >= space.lo() && theta <= space.hi()))
        throw DomainError(fmt::format("theta={} outside parameter space [{}, {}]", theta, space.lo(),
                                      space.hi()));
    if (const auto& problem = spec.evaluation_problem(action); !problem.empty())
        throw ValidationError(problem);
    const double v = eval_params(spec.params(action), theta, action);
    if (!std::isfinite(v))
        throw ValidationError(fmt::format("non-finite loss at theta={}", theta));
    return v;
}

double loss_difference(const LossSpec& spec, double theta) {
    return evaluate_loss(spec, theta, Action::a1) - evaluate_loss(spec, theta, Action::a0);
}

ValidationReport validate_loss_spec(const LossSpec& spec, std::size_t grid_size) {
    ValidationReport report;
    const auto& space = spec.space();
    bool evaluable = true;
    for (Action a : {Action::a0, Action::a1}) {
        if (spec.kind() != LossKind::builtin_coin_demo &&
            std::holds_alternative<std::monostate>(spec.params(a))) {
            report.violations.push_back(std::string(to_string(a)) + ": missing coefficients");
            evaluable = false;
            continue;
        }
        auto problems = coefficient_problems(spec.params(a), space, a);
        if (!problems.empty()) evaluable = false;
        report.violations.insert(report.violations.end(), problems.begin(), problems.end());
    }
    if (!evaluable) return report;

    std::vector<double> grid;
    grid.reserve(grid_size + 16);
    const std::size_t n = std::max<std::size_t>(grid_size, 2);
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back(i + 1 == n ? space.hi()
                                  : space.lo() + space.width() * static_cast<double>(i) /
                                                     static_cast<double>(n - 1));
    const auto bps = spec.breakpoints();
    grid.insert(grid.end(), bps.begin(), bps.end());
    std::sort(grid.begin(), grid.end());

    for (Action a : {Action::a0, Action::a1}) {
        for (double theta : grid) {
            const double v = eval_params(spec.params(a), theta, a);
            if (!std::isfinite(v)) {
                report.violations.push_back(
                    fmt::format("{}: non-finite loss at θ={}", to_string(a), theta));
                break;
            }
            if (v < 0.0) {
                report.violations.push_back(
                    fmt::format("{}: negative loss at θ={} (value {})", to_string(a), theta, v));
                break;
            }
        }
    }
    return report;
}

}  // namespace practrel
