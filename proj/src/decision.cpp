#include "practrel/decision.hpp"

#include "practrel/errors.hpp"
#include "practrel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace practrel {

LossRatio::LossRatio(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0))
        throw ValidationError("loss ratio must be finite and > 0");
    if (hi < lo) throw ValidationError("loss ratio interval requires lo <= hi");
}

const char* to_string(Decision d) noexcept {
    switch (d) {
    case Decision::a0: return "a0";
    case Decision::a1: return "a1";
    case Decision::indeterminate: return "indeterminate";
    }
    return "unknown";
}

Decision decide_from_odds(double odds, const LossRatio& ratio) noexcept {
    if (odds > ratio.hi()) return Decision::a1;
    if (odds <= ratio.lo()) return Decision::a0;
    return Decision::indeterminate;
}

DecisionOutcome bayes_two_action_decision(const PosteriorModel& post, const HypothesisPair& pair,
                                          const LossRatio& ratio, bool restricted_space) {
    if (!restricted_space && !pair.covers_space())
        throw ValidationError(
            "hypotheses do not cover the parameter space; renormalizing over h0 and h1 "
            "requires the restricted-space flag");
    const double p0 = posterior_region_prob(post, pair.h0());
    const double p1 = posterior_region_prob(post, pair.h1());
    if (p0 + p1 <= 0.0)
        throw DegenerateEvidenceError("both hypotheses have zero posterior probability");

    DecisionOutcome out;
    out.rule = "hypothesis_ratio";
    out.posterior_h0 = p0 / (p0 + p1);
    out.posterior_h1 = p1 / (p0 + p1);
    out.posterior_odds = p0 > 0.0 ? p1 / p0 : std::numeric_limits<double>::infinity();
    out.threshold_lo = ratio.lo();
    out.threshold_hi = ratio.hi();
    out.decision = decide_from_odds(*out.posterior_odds, ratio);
    return out;
}

DecisionOutcome expected_loss_decision(const PosteriorModel& post, const LossSpec& spec) {
    const auto& space = spec.space();
    const double mass = posterior_region_prob(post, RegionSet::whole(space));
    if (!(mass > 0.0))
        throw DegenerateEvidenceError("posterior has no mass inside the parameter space");

    // Integrate only where the posterior has non-negligible density.
    double lo = std::max(space.lo(), post.quantile(1e-15));
    double hi = std::min(space.hi(), post.quantile(1.0 - 1e-15));
    if (!(lo < hi)) {
        lo = space.lo();
        hi = space.hi();
    }
    const auto cuts = spec.breakpoints();

    DecisionOutcome out;
    out.rule = "expected_loss";
    double expected[2] = {0.0, 0.0};
    for (Action a : {Action::a0, Action::a1}) {
        const auto r = quadrature_panels(
            [&](double theta) { return evaluate_loss(spec, theta, a) * post.density(theta); }, lo, hi,
            64, 1e-8, cuts);
        expected[a == Action::a0 ? 0 : 1] = r.value / mass;
        out.accuracy_warning = out.accuracy_warning || r.accuracy_warning;
    }
    out.threshold_lo = expected[0];
    out.threshold_hi = expected[1];
    out.decision = expected[1] < expected[0] - 1e-10 ? Decision::a1 : Decision::a0;
    return out;
}

ThreeWayReport three_way_consistency(double odds, const LossRatio& ratio) noexcept {
    ThreeWayReport r;
    r.at_lo = decide_from_odds(odds, LossRatio::scalar(ratio.lo()));
    r.at_hi = decide_from_odds(odds, LossRatio::scalar(ratio.hi()));
    r.interval = decide_from_odds(odds, ratio);
    r.consistent = r.at_lo == r.at_hi ? r.interval == r.at_lo : r.interval == Decision::indeterminate;
    return r;
}

ThreeWayReport three_way_consistency(const PosteriorModel& post, const HypothesisPair& pair,
                                     const LossRatio& ratio, bool restricted_space) {
    const auto outcome = bayes_two_action_decision(post, pair, ratio, restricted_space);
    return three_way_consistency(*outcome.posterior_odds, ratio);
}

}  // namespace practrel
