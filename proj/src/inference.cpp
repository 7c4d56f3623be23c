#include "practrel/inference.hpp"

#include "practrel/errors.hpp"
#include "practrel/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

namespace practrel {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// x * log(y) with the convention 0 * log(0) = 0.
double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

}  // namespace

void BinomialModel::validate() const {
    if (k > n) throw ValidationError(fmt::format("binomial data require k <= n (k={}, n={})", k, n));
    if (!positive_finite(prior_alpha) || !positive_finite(prior_beta))
        throw ValidationError("beta prior parameters must be finite and > 0");
}

void NormalKnownVarModel::validate() const {
    if (n < 1) throw ValidationError("normal model requires n >= 1");
    if (!std::isfinite(ybar)) throw ValidationError("normal model requires a finite ybar");
    if (!positive_finite(sigma)) throw ValidationError("normal model requires finite sigma > 0");
    if (!std::isfinite(prior_mean) || !positive_finite(prior_sd))
        throw ValidationError("normal prior requires a finite mean and finite sd > 0");
}

const char* to_string(Family f) noexcept { return f == Family::beta ? "beta" : "normal"; }

PosteriorModel PosteriorModel::beta(double alpha, double beta, double effect_offset) {
    if (!positive_finite(alpha) || !positive_finite(beta))
        throw ValidationError("beta distribution requires finite alpha, beta > 0");
    return PosteriorModel(Family::beta, alpha, beta, effect_offset);
}

PosteriorModel PosteriorModel::normal(double mean, double sd) {
    if (!std::isfinite(mean) || !positive_finite(sd))
        throw ValidationError("normal distribution requires a finite mean and finite sd > 0");
    return PosteriorModel(Family::normal, mean, sd, 0.0);
}

double PosteriorModel::support_lo() const noexcept {
    return family_ == Family::beta ? offset_ : -std::numeric_limits<double>::infinity();
}

double PosteriorModel::support_hi() const noexcept {
    return family_ == Family::beta ? 1.0 + offset_ : std::numeric_limits<double>::infinity();
}

double PosteriorModel::cdf(double effect) const {
    if (family_ == Family::beta) return special::incomplete_beta(effect - offset_, p1_, p2_);
    return special::normal_cdf((effect - p1_) / p2_);
}

double PosteriorModel::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile requires p in [0, 1]");
    if (family_ == Family::beta) {
        const double x = special::bisect_quantile(
            [&](double v) { return special::incomplete_beta(v, p1_, p2_); }, p, 0.0, 1.0, 1e-13);
        return x + offset_;
    }
    return special::bisect_quantile([&](double v) { return cdf(v); }, p, p1_ - 40.0 * p2_,
                                    p1_ + 40.0 * p2_, 1e-13 * p2_);
}

double PosteriorModel::log_density(double effect) const {
    if (family_ == Family::beta) {
        const double x = effect - offset_;
        if (x < 0.0 || x > 1.0) return -std::numeric_limits<double>::infinity();
        return xlogy(p1_ - 1.0, x) + xlogy(p2_ - 1.0, 1.0 - x) - special::log_beta(p1_, p2_);
    }
    const double z = (effect - p1_) / p2_;
    return -0.5 * z * z - std::log(p2_) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double PosteriorModel::density(double effect) const { return std::exp(log_density(effect)); }

double PosteriorModel::mean() const {
    if (family_ == Family::beta) return p1_ / (p1_ + p2_) + offset_;
    return p1_;
}

double PosteriorModel::sd() const {
    if (family_ == Family::beta) {
        const double s = p1_ + p2_;
        return std::sqrt(p1_ * p2_ / (s * s * (s + 1.0)));
    }
    return p2_;
}

PosteriorModel posterior_update_binomial(const BinomialModel& model) {
    model.validate();
    return PosteriorModel::beta(model.prior_alpha + static_cast<double>(model.k),
                                model.prior_beta + static_cast<double>(model.n - model.k));
}

PosteriorModel posterior_update_normal(const NormalKnownVarModel& model) {
    model.validate();
    const double prior_prec = 1.0 / (model.prior_sd * model.prior_sd);
    const double data_prec = static_cast<double>(model.n) / (model.sigma * model.sigma);
    const double prec = prior_prec + data_prec;
    const double mean = (prior_prec * model.prior_mean + data_prec * model.ybar) / prec;
    return PosteriorModel::normal(mean, 1.0 / std::sqrt(prec));
}

PosteriorModel posterior_update(const SamplingModel& model) {
    return std::visit(
        [](const auto& m) -> PosteriorModel {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, BinomialModel>)
                return posterior_update_binomial(m);
            else
                return posterior_update_normal(m);
        },
        model);
}

PosteriorModel prior_distribution(const SamplingModel& model) {
    if (const auto* b = std::get_if<BinomialModel>(&model)) {
        b->validate();
        return PosteriorModel::beta(b->prior_alpha, b->prior_beta);
    }
    const auto& m = std::get<NormalKnownVarModel>(model);
    m.validate();
    return PosteriorModel::normal(m.prior_mean, m.prior_sd);
}

double log_likelihood(const SamplingModel& model, double theta) {
    if (const auto* b = std::get_if<BinomialModel>(&model)) {
        const double pi = theta + 0.5;
        if (pi < 0.0 || pi > 1.0) return -std::numeric_limits<double>::infinity();
        return xlogy(static_cast<double>(b->k), pi) + xlogy(static_cast<double>(b->n - b->k), 1.0 - pi);
    }
    const auto& m = std::get<NormalKnownVarModel>(model);
    const double z = (m.ybar - theta) / m.sigma;
    return -0.5 * static_cast<double>(m.n) * z * z;
}

std::pair<double, double> effect_support(const SamplingModel& model) {
    if (std::holds_alternative<BinomialModel>(model)) return {-0.5, 0.5};
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf};
}

double posterior_region_prob(const PosteriorModel& post, const RegionSet& set) {
    double total = 0.0;
    for (const auto& iv : set.intervals()) total += post.cdf(iv.hi) - post.cdf(iv.lo);
    return std::clamp(total, 0.0, 1.0);
}

std::pair<double, double> credible_interval(const PosteriorModel& post, double mass) {
    if (!(mass > 0.0 && mass < 1.0)) throw ParameterError("credible mass must lie in (0, 1)");
    const double tail = 0.5 * (1.0 - mass);
    return {post.quantile(tail), post.quantile(1.0 - tail)};
}

}  // namespace practrel
