#include "practrel/decision.hpp"
#include "practrel/errors.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace practrel;

namespace {

const ParameterSpace kCoin(-0.5, 0.5);

HypothesisPair coin_pair() {
    return HypothesisPair(kCoin, RegionSet{Interval::closed(-0.106, 0.106)},
                          RegionSet{Interval{-0.5, -0.106, false, true}, Interval{0.106, 0.5, true, false}});
}

// P(Theta0 | k = 20 of 20, uniform prior): the Beta(21, 1) CDF is x^21.
const double kH0AllHeads = std::pow(0.606, 21) - std::pow(0.394, 21);

}  // namespace

TEST_CASE("loss ratio validation") {
    CHECK_THROWS_AS(LossRatio::scalar(0.0), ValidationError);
    CHECK_THROWS_AS(LossRatio::interval(2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(LossRatio::scalar(INFINITY), ValidationError);
    CHECK(LossRatio::interval(2, 2).is_scalar());
}

TEST_CASE("odds against ratio") {
    CHECK(decide_from_odds(1.0, LossRatio::scalar(1.0)) == Decision::a0);
    CHECK(decide_from_odds(3.0, LossRatio::interval(1, 2)) == Decision::a1);
    CHECK(decide_from_odds(1.5, LossRatio::interval(1, 2)) == Decision::indeterminate);
    CHECK(decide_from_odds(2.0, LossRatio::interval(1, 2)) == Decision::indeterminate);
    CHECK(decide_from_odds(1.0, LossRatio::interval(1, 2)) == Decision::a0);
}

TEST_CASE("three-way consistency examples") {
    auto r = three_way_consistency(3.0, LossRatio::interval(1, 2));
    CHECK(r.at_lo == Decision::a1);
    CHECK(r.at_hi == Decision::a1);
    CHECK(r.interval == Decision::a1);
    CHECK(r.consistent);
    r = three_way_consistency(1.5, LossRatio::interval(1, 2));
    CHECK(r.at_lo == Decision::a1);
    CHECK(r.at_hi == Decision::a0);
    CHECK(r.interval == Decision::indeterminate);
    CHECK(r.consistent);
    for (double o : {0.1, 1.9, 2.0, 2.0000001, 50.0}) {
        r = three_way_consistency(o, LossRatio::interval(2, 2));
        CHECK(r.interval == decide_from_odds(o, LossRatio::scalar(2)));
        CHECK(r.interval != Decision::indeterminate);
        CHECK(r.consistent);
    }
}

TEST_CASE("coin decisions") {
    const auto pair = coin_pair();
    const auto all_heads = posterior_update_binomial({20, 20, 1, 1});
    const auto out = bayes_two_action_decision(all_heads, pair, LossRatio::scalar(1));
    CHECK(out.decision == Decision::a1);
    CHECK(*out.posterior_h0 == doctest::Approx(kH0AllHeads).epsilon(1e-10));
    CHECK(*out.posterior_h0 + *out.posterior_h1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*out.posterior_odds == doctest::Approx((1 - kH0AllHeads) / kH0AllHeads).epsilon(1e-9));

    // Beta(6, 6) mass on [0.394, 0.606], integrated directly.
    const double lb = std::lgamma(6.0) * 2 - std::lgamma(12.0);
    const double h0 = testing::midpoint_integral(
        [&](double x) { return std::exp(5 * std::log(x) + 5 * std::log1p(-x) - lb); }, 0.394, 0.606);
    const auto half = posterior_update_binomial({10, 5, 1, 1});
    const auto mid = bayes_two_action_decision(half, pair, LossRatio::scalar(1));
    CHECK(*mid.posterior_h0 == doctest::Approx(h0).epsilon(1e-9));
    CHECK(h0 > 0.5);
    CHECK(mid.decision == Decision::a0);
    CHECK(bayes_two_action_decision(half, pair, LossRatio::interval(0.01, 100)).decision == Decision::indeterminate);
}

TEST_CASE("coverage and degenerate evidence") {
    const HypothesisPair partial(kCoin, RegionSet{Interval::point(0.0)}, RegionSet{Interval::point(0.3)});
    const auto post = posterior_update_binomial({10, 5, 1, 1});
    CHECK_THROWS_AS(bayes_two_action_decision(post, partial, LossRatio::scalar(1)), ValidationError);
    CHECK_THROWS_AS(bayes_two_action_decision(post, partial, LossRatio::scalar(1), true), DegenerateEvidenceError);

    const HypothesisPair narrow(kCoin, RegionSet{Interval::closed(-0.05, 0.05)}, RegionSet{Interval::closed(0.2, 0.3)});
    const auto out = bayes_two_action_decision(post, narrow, LossRatio::scalar(1), true);
    CHECK(*out.posterior_h0 + *out.posterior_h1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.decision == Decision::a0);
}

TEST_CASE("expected loss decisions") {
    const auto demo = LossSpec::coin_demo();
    const auto at_zero = PosteriorModel::beta(1e6, 1e6);
    const auto o0 = expected_loss_decision(at_zero, demo);
    CHECK(o0.decision == Decision::a0);
    CHECK_FALSE(o0.posterior_odds);
    CHECK(o0.threshold_lo < o0.threshold_hi);

    const auto at_03 = PosteriorModel::beta(0.8e6, 0.2e6);
    CHECK(expected_loss_decision(at_03, demo).decision == Decision::a1);

    const auto equal = LossSpec::quadratic(kCoin, {1, 0, 0.1}, {1, 0, 0.1});
    CHECK(expected_loss_decision(PosteriorModel::beta(3, 9), equal).decision == Decision::a0);
    CHECK(expected_loss_decision(PosteriorModel::beta(9, 3), equal).decision == Decision::a0);

    // Uniform posterior: E[|b|] = 0.25, E[k (0.5 - |b|)] = 0.25 k.
    const auto flat = expected_loss_decision(PosteriorModel::beta(1, 1), demo);
    CHECK(flat.threshold_lo == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(flat.threshold_hi == doctest::Approx(0.25 * kCoinDemoSlope).epsilon(1e-8));
    CHECK(flat.decision == Decision::a1);
}

TEST_CASE("agreement at concentration") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        const auto spec = testing::random_spec(rng);
        const auto part = partition(spec);
        std::uniform_real_distribution<double> u(spec.space().lo() + 0.05 * spec.space().width(),
                                                 spec.space().hi() - 0.05 * spec.space().width());
        const double t = u(rng);
        bool near = false;
        for (double c : part.crossings) near = near || std::abs(c - t) < 1e-3 * spec.space().width();
        if (near) continue;
        const auto post = PosteriorModel::normal(t, 1e-7 * spec.space().width());
        const auto d = expected_loss_decision(post, spec).decision;
        CHECK(d == (loss_difference(spec, t) < 0 ? Decision::a1 : Decision::a0));
    }
}

TEST_CASE("threshold monotonicity") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-8, 8);
    for (int i = 0; i < 500; ++i) {
        const double odds = std::exp(u(rng));
        Decision prev = Decision::a1;
        for (double r = 1e-4; r < 1e4; r *= 1.7) {
            const auto d = decide_from_odds(odds, LossRatio::scalar(r));
            if (prev == Decision::a0) CHECK(d == Decision::a0);
            prev = d;
        }
    }
}
