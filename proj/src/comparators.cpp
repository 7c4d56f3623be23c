#include "practrel/comparators.hpp"

#include "practrel/errors.hpp"
#include "practrel/quadrature.hpp"
#include "practrel/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace practrel {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
}

// P(X <= k) and P(X >= k) for X ~ Binomial(n, 1/2).
std::pair<double, double> fair_coin_tails(std::uint64_t n, std::uint64_t k) {
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double lower = k >= n ? 1.0 : special::incomplete_beta(0.5, nd - kd, kd + 1.0);
    const double upper = k == 0 ? 1.0 : special::incomplete_beta(0.5, kd, nd - kd + 1.0);
    return {lower, upper};
}

}  // namespace

ComparatorResult nhst_point_null(const SamplingModel& model, double alpha) {
    check_alpha(alpha);
    ComparatorResult r;
    r.procedure = "nhst";
    r.threshold = alpha;
    if (const auto* b = std::get_if<BinomialModel>(&model)) {
        b->validate();
        r.statistic = static_cast<double>(b->k);
        const auto [lower, upper] = fair_coin_tails(b->n, b->k);
        r.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
    } else {
        const auto& m = std::get<NormalKnownVarModel>(model);
        m.validate();
        r.statistic = m.ybar * std::sqrt(static_cast<double>(m.n)) / m.sigma;
        r.p_value = std::min(1.0, 2.0 * special::normal_upper_tail(std::abs(r.statistic)));
    }
    r.verdict = *r.p_value < alpha ? "reject" : "retain";
    return r;
}

ComparatorResult tost_equivalence(const NormalKnownVarModel& model, std::pair<double, double> bounds,
                                  double alpha) {
    check_alpha(alpha);
    model.validate();
    const auto [lo, hi] = bounds;
    if (!(lo < hi)) throw ValidationError("TOST bounds require lo < hi");
    const double se = model.sigma / std::sqrt(static_cast<double>(model.n));
    const double z_lo = (model.ybar - lo) / se;  // against theta <= lo
    const double z_hi = (model.ybar - hi) / se;  // against theta >= hi
    const double p_lo = special::normal_upper_tail(z_lo);
    const double p_hi = special::normal_cdf(z_hi);

    ComparatorResult r;
    r.procedure = "tost";
    r.threshold = alpha;
    r.statistic = std::min(z_lo, -z_hi);
    r.p_value = std::max(p_lo, p_hi);
    r.verdict = *r.p_value < alpha ? "equivalent" : "not_equivalent";
    return r;
}

std::string rope_verdict(std::pair<double, double> credible, const Interval& rope) {
    const auto [lo, hi] = credible;
    if (lo >= rope.lo && hi <= rope.hi) return "accept_a0";
    if (hi < rope.lo || lo > rope.hi) return "accept_a1";
    return "withhold";
}

ComparatorResult rope_decision(const PosteriorModel& post, const RegionSet& rope, double mass) {
    if (rope.empty()) throw ValidationError("ROPE must be non-empty");
    if (rope.size() != 1)
        throw ValidationError("ROPE must be a single interval around the null value");
    ComparatorResult r;
    r.procedure = "rope";
    r.threshold = mass;
    r.statistic = posterior_region_prob(post, rope);
    r.verdict = rope_verdict(credible_interval(post, mass), rope.hull());
    return r;
}

namespace {

// Mode of the likelihood on the effect scale.
double likelihood_mode(const SamplingModel& model) {
    if (const auto* b = std::get_if<BinomialModel>(&model))
        return b->n == 0 ? 0.0 : static_cast<double>(b->k) / static_cast<double>(b->n) - 0.5;
    return std::get<NormalKnownVarModel>(model).ybar;
}

// log of integral over the region of likelihood times prior density.
double log_region_marginal(const SamplingModel& model, const PosteriorModel& prior,
                           const RegionSet& region) {
    const double mode = likelihood_mode(model);
    // Both log-likelihoods are unimodal, so each interval peaks at the clamped mode.
    double peak = -std::numeric_limits<double>::infinity();
    for (const auto& iv : region.intervals())
        peak = std::max(peak, log_likelihood(model, std::clamp(mode, iv.lo, iv.hi)));
    if (!std::isfinite(peak)) return -std::numeric_limits<double>::infinity();

    double total = 0.0;
    for (const auto& iv : region.intervals()) {
        if (!(iv.lo < iv.hi)) continue;
        const auto r = quadrature_panels(
            [&](double theta) {
                const double ll = log_likelihood(model, theta);
                return std::isfinite(ll) ? std::exp(ll - peak) * prior.density(theta) : 0.0;
            },
            iv.lo, iv.hi, 64, 1e-10, {std::clamp(mode, iv.lo, iv.hi)});
        total += r.value;
    }
    return peak + std::log(total);
}

}  // namespace

ComparatorResult interval_bayes_factor(const SamplingModel& model, const HypothesisPair& pair,
                                       double threshold) {
    if (!(threshold >= 1.0)) throw ParameterError("Bayes factor threshold must be >= 1");
    const auto prior = prior_distribution(model);
    const double mass0 = posterior_region_prob(prior, pair.h0());
    const double mass1 = posterior_region_prob(prior, pair.h1());
    if (!(mass0 > 0.0)) throw ValidationError("h0 has zero prior mass");
    if (!(mass1 > 0.0)) throw ValidationError("h1 has zero prior mass");

    const double log_m0 = log_region_marginal(model, prior, pair.h0()) - std::log(mass0);
    const double log_m1 = log_region_marginal(model, prior, pair.h1()) - std::log(mass1);
    if (!std::isfinite(log_m0) && !std::isfinite(log_m1))
        throw NumericalError("both marginal likelihoods vanish");

    ComparatorResult r;
    r.procedure = "bayes_factor";
    r.threshold = threshold;
    const double log_bf = log_m1 - log_m0;
    r.log_bayes_factor = log_bf;
    r.bayes_factor = std::clamp(std::exp(log_bf), std::numeric_limits<double>::min(),
                                std::numeric_limits<double>::max());
    r.statistic = log_bf;
    if (log_bf > std::log(threshold))
        r.verdict = "favor_h1";
    else if (log_bf < -std::log(threshold))
        r.verdict = "favor_h0";
    else
        r.verdict = "inconclusive";
    return r;
}

}  // namespace practrel
