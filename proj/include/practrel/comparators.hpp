#pragma once

#include "practrel/hypotheses.hpp"
#include "practrel/inference.hpp"

#include <optional>
#include <string>
#include <utility>

namespace practrel {

// Verdict of one baseline procedure. Which of p_value / bayes_factor is set
// depends on the procedure.
struct ComparatorResult {
    std::string procedure;
    double statistic = 0.0;
    std::optional<double> p_value;
    std::optional<double> bayes_factor;
    std::optional<double> log_bayes_factor;
    std::string verdict;
    double threshold = 0.0;  // alpha, credible mass or BF threshold
};

// Two-sided test of the nil hypothesis (pi = 0.5, or theta = 0). Binomial
// uses the exact test with the doubled smaller tail clipped at 1; normal uses
// the z-test. Verdict "reject" iff p < alpha, else "retain".
ComparatorResult nhst_point_null(const SamplingModel& model, double alpha);

// Two one-sided z-tests against theta <= lo and theta >= hi. Reported p is the
// larger one-sided p; verdict "equivalent" iff both reject at alpha.
ComparatorResult tost_equivalence(const NormalKnownVarModel& model, std::pair<double, double> bounds,
                                  double alpha);

// accept_a0 if the interval lies inside the rope, accept_a1 if it misses it,
// withhold otherwise.
std::string rope_verdict(std::pair<double, double> credible, const Interval& rope);

// ROPE rule against the central credible interval. The rope must be a single
// interval. Statistic is the posterior mass inside the rope.
ComparatorResult rope_decision(const PosteriorModel& post, const RegionSet& rope, double mass = 0.95);

// BF10 = m1(y) / m0(y) with the model's prior truncated to each hypothesis.
// Verdict favor_h1 if BF10 > threshold, favor_h0 if BF10 < 1/threshold,
// inconclusive otherwise. Throws ValidationError if a region has no prior mass.
ComparatorResult interval_bayes_factor(const SamplingModel& model, const HypothesisPair& pair,
                                       double threshold = 3.0);

}  // namespace practrel
