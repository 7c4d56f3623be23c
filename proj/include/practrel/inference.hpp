#pragma once

#include "practrel/regions.hpp"

#include <cstdint>
#include <utility>
#include <variant>

namespace practrel {

// Coin flips: k heads out of n, Beta prior on the heads probability pi.
// The effect is b = pi - 0.5.
struct BinomialModel {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    double prior_alpha = 1.0;
    double prior_beta = 1.0;

    void validate() const;
};

// n observations with mean ybar, known sampling sd, normal prior on the mean.
struct NormalKnownVarModel {
    std::uint64_t n = 1;
    double ybar = 0.0;
    double sigma = 1.0;
    double prior_mean = 0.0;
    double prior_sd = 1.0;

    void validate() const;
};

using SamplingModel = std::variant<BinomialModel, NormalKnownVarModel>;

enum class Family { beta, normal };

const char* to_string(Family f) noexcept;

// Distribution of the effect parameter: a Beta on the native scale shifted by
// effect_offset, or a Normal on the effect scale directly. Used for both
// priors and posteriors.
class PosteriorModel {
public:
    static PosteriorModel beta(double alpha, double beta, double effect_offset = -0.5);
    static PosteriorModel normal(double mean, double sd);

    Family family() const noexcept { return family_; }
    // beta: (alpha, beta); normal: (mean, sd)
    double param1() const noexcept { return p1_; }
    double param2() const noexcept { return p2_; }
    double effect_offset() const noexcept { return offset_; }

    double support_lo() const noexcept;
    double support_hi() const noexcept;

    double cdf(double effect) const;
    double quantile(double p) const;
    double log_density(double effect) const;
    double density(double effect) const;
    double mean() const;
    double sd() const;

private:
    PosteriorModel(Family f, double p1, double p2, double offset)
        : family_(f), p1_(p1), p2_(p2), offset_(offset) {}

    Family family_;
    double p1_;
    double p2_;
    double offset_;
};

PosteriorModel posterior_update_binomial(const BinomialModel& model);
PosteriorModel posterior_update_normal(const NormalKnownVarModel& model);
PosteriorModel posterior_update(const SamplingModel& model);

PosteriorModel prior_distribution(const SamplingModel& model);

// log f(y | theta) up to an additive constant independent of theta.
double log_likelihood(const SamplingModel& model, double theta);

// Effect-scale range where the sampling model is defined.
std::pair<double, double> effect_support(const SamplingModel& model);

// Sum over intervals of CDF(hi) - CDF(lo), clamped to [0, 1].
double posterior_region_prob(const PosteriorModel& post, const RegionSet& set);

// Central interval with the given mass (0 < mass < 1).
std::pair<double, double> credible_interval(const PosteriorModel& post, double mass);

}  // namespace practrel
