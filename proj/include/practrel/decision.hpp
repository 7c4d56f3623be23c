#pragma once

#include "practrel/hypotheses.hpp"
#include "practrel/inference.hpp"

#include <optional>
#include <string>

namespace practrel {

// Type-I to type-II loss ratio: consequences of choosing a1 under H0 relative
// to choosing a0 under H1. lo == hi is the scalar case.
class LossRatio {
public:
    static LossRatio scalar(double value) { return LossRatio(value, value); }
    static LossRatio interval(double lo, double hi) { return LossRatio(lo, hi); }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool is_scalar() const noexcept { return lo_ == hi_; }

private:
    LossRatio(double lo, double hi);

    double lo_;
    double hi_;
};

enum class Decision { a0, a1, indeterminate };

const char* to_string(Decision d) noexcept;

struct DecisionOutcome {
    std::string rule;
    Decision decision = Decision::a0;
    // Renormalized P(h0 | y), P(h1 | y) and P(h1 | y) / P(h0 | y); unset for
    // the expected-loss rule.
    std::optional<double> posterior_h0;
    std::optional<double> posterior_h1;
    std::optional<double> posterior_odds;
    // Ratio bounds for the hypothesis rule; E[L(theta, a0) | y] and
    // E[L(theta, a1) | y] for the expected-loss rule.
    double threshold_lo = 0.0;
    double threshold_hi = 0.0;
    bool accuracy_warning = false;
};

// Compares posterior odds with the ratio: a1 if odds > hi, a0 if odds <= lo,
// indeterminate if lo < odds <= hi. A scalar ratio never yields indeterminate.
Decision decide_from_odds(double odds, const LossRatio& ratio) noexcept;

// Hypothesis-based two-action decision. The pair must cover the parameter
// space unless restricted_space is set, in which case probabilities are
// renormalized over h0 and h1 alone. The rule assumes the loss is constant
// within each hypothesis; use expected_loss_decision() when it is not.
//
// Throws DegenerateEvidenceError when both regions have zero posterior mass.
DecisionOutcome bayes_two_action_decision(const PosteriorModel& post, const HypothesisPair& pair,
                                          const LossRatio& ratio, bool restricted_space = false);

// Minimizes the posterior expected loss of the full loss function, with the
// posterior truncated to the loss's parameter space. Ties go to a0.
DecisionOutcome expected_loss_decision(const PosteriorModel& post, const LossSpec& spec);

struct ThreeWayReport {
    Decision at_lo = Decision::a0;
    Decision at_hi = Decision::a0;
    Decision interval = Decision::a0;
    bool consistent = false;
};

// Runs the rule at ratio.lo and ratio.hi as scalars and checks the interval
// verdict equals their common decision, or is indeterminate when they differ.
ThreeWayReport three_way_consistency(double odds, const LossRatio& ratio) noexcept;
ThreeWayReport three_way_consistency(const PosteriorModel& post, const HypothesisPair& pair,
                                     const LossRatio& ratio, bool restricted_space = false);

}  // namespace practrel
