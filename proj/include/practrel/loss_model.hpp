#pragma once

#include <string>
#include <variant>
#include <vector>

namespace practrel {

// Bounded one-dimensional effect parameter space [lo, hi].
class ParameterSpace {
public:
    ParameterSpace(double lo, double hi);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double width() const noexcept { return hi_ - lo_; }
    bool zero_in_space() const noexcept { return lo_ <= 0.0 && 0.0 <= hi_; }
    bool contains(double theta) const noexcept { return lo_ <= theta && theta <= hi_; }

    friend bool operator==(const ParameterSpace&, const ParameterSpace&) = default;

private:
    double lo_;
    double hi_;
};

enum class Action { a0, a1 };

const char* to_string(Action a) noexcept;

// a0 is the action appropriate when the effect is absent.
struct ActionPair {
    std::string a0_label;
    std::string a1_label;
    std::string a0_description;
    std::string a1_description;

    ActionPair(std::string a0, std::string a1, std::string a0_desc = {}, std::string a1_desc = {});
};

// intercept + slope_left * max(0, center - theta) + slope_right * max(0, theta - center)
struct HingeLoss {
    double intercept = 0.0;
    double center = 0.0;
    double slope_left = 0.0;
    double slope_right = 0.0;
    friend bool operator==(const HingeLoss&, const HingeLoss&) = default;
};

// c * (theta - center)^2 + offset
struct QuadraticLoss {
    double c = 0.0;
    double center = 0.0;
    double offset = 0.0;
    friend bool operator==(const QuadraticLoss&, const QuadraticLoss&) = default;
};

// Tabulated loss, linear interpolation between grid points.
struct TableLoss {
    std::vector<double> grid;
    std::vector<double> values;
    friend bool operator==(const TableLoss&, const TableLoss&) = default;
};

enum class LossKind { piecewise_linear, quadratic, table, builtin_coin_demo };

const char* to_string(LossKind k) noexcept;

// Coefficient of the coin demo's a1 curve: chosen so that |b| = k (0.5 - |b|)
// exactly at |b| = 0.106.
inline constexpr double kCoinDemoCrossing = 0.106;
inline constexpr double kCoinDemoSlope = kCoinDemoCrossing / (0.5 - kCoinDemoCrossing);

// Loss function L(theta, a) on a bounded space, for both actions.
//
// Construction only checks structural consistency (both actions use the same
// family); numeric invariants are reported by validate_loss_spec() and
// enforced at evaluation time.
class LossSpec {
public:
    using Params = std::variant<std::monostate, HingeLoss, QuadraticLoss, TableLoss>;

    static LossSpec piecewise_linear(ParameterSpace space, HingeLoss a0, HingeLoss a1);
    static LossSpec quadratic(ParameterSpace space, QuadraticLoss a0, QuadraticLoss a1);
    static LossSpec table(ParameterSpace space, TableLoss a0, TableLoss a1);
    // L(b, a0) = |b|, L(b, a1) = kCoinDemoSlope * (0.5 - |b|) on [-0.5, 0.5].
    static LossSpec coin_demo();

    const ParameterSpace& space() const noexcept { return space_; }
    LossKind kind() const noexcept { return kind_; }
    const Params& params(Action a) const noexcept { return a == Action::a0 ? a0_ : a1_; }

    // Points where either curve may have a kink.
    std::vector<double> breakpoints() const;

    // Same spec with every loss value multiplied by factor (> 0).
    LossSpec scaled(double factor) const;

    // First structural problem that prevents evaluating this action; empty if none.
    const std::string& evaluation_problem(Action a) const noexcept {
        return a == Action::a0 ? a0_problem_ : a1_problem_;
    }

private:
    LossSpec(ParameterSpace space, LossKind kind, Params a0, Params a1);

    ParameterSpace space_;
    LossKind kind_;
    Params a0_;
    Params a1_;
    std::string a0_problem_;
    std::string a1_problem_;
};

// L(theta, action). Throws DomainError outside the space and ValidationError
// for non-finite coefficients or a malformed table.
double evaluate_loss(const LossSpec& spec, double theta, Action action);

// L(theta, a1) - L(theta, a0); negative means a1 is preferred.
double loss_difference(const LossSpec& spec, double theta);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

// Dense-grid check of every LossSpec invariant. Never throws.
ValidationReport validate_loss_spec(const LossSpec& spec, std::size_t grid_size = 4096);

}  // namespace practrel
