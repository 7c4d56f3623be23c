#include "practrel/errors.hpp"
#include "practrel/hypotheses.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace practrel;

namespace {

const ParameterSpace kCoin(-0.5, 0.5);

HypothesisPair coin_complete_pair() {
    return HypothesisPair(kCoin, RegionSet{Interval::closed(-0.106, 0.106)},
                          RegionSet{Interval{-0.5, -0.106, false, true}, Interval{0.106, 0.5, true, false}});
}

HypothesisPair coin_partial_pair() {
    return HypothesisPair(kCoin, RegionSet{Interval::point(0.0)}, RegionSet{Interval::point(0.3)});
}

}  // namespace

TEST_CASE("pair invariants") {
    CHECK_THROWS_AS(HypothesisPair(kCoin, RegionSet{Interval::closed(-0.2, 0.2)}, RegionSet{Interval::closed(0.1, 0.5)}),
                    ValidationError);
    CHECK_THROWS_AS(HypothesisPair(kCoin, RegionSet{Interval::closed(-0.7, 0.0)}, RegionSet{}), ValidationError);
    CHECK(coin_complete_pair().covers_space());
    CHECK_FALSE(coin_partial_pair().covers_space());
}

TEST_CASE("derived coin hypotheses") {
    const auto pair = derive_hypotheses(partition(LossSpec::coin_demo()));
    REQUIRE(pair.h0().size() == 1);
    CHECK(pair.h0().intervals()[0].lo == doctest::Approx(-0.106).epsilon(1e-6));
    CHECK(pair.h0().intervals()[0].hi == doctest::Approx(0.106).epsilon(1e-6));
    CHECK(pair.h1().size() == 2);
    CHECK(check_complete(pair, LossSpec::coin_demo()).holds);
}

TEST_CASE("derived hypotheses for one-sided and quadratic specs") {
    const auto flat = LossSpec::quadratic(ParameterSpace(-1, 1), {1, 0, 0}, {1, 0, 0.5});
    const auto p1 = derive_hypotheses(partition(flat));
    CHECK(p1.h0() == RegionSet::whole(flat.space()));
    CHECK(p1.h1().empty());

    const auto quad = LossSpec::quadratic(ParameterSpace(-0.5, 0.5), {0, 0, 0.04}, {1, 0, 0});
    const auto p2 = derive_hypotheses(partition(quad));
    REQUIRE(p2.h1().size() == 1);
    CHECK(p2.h1().intervals()[0].lo == doctest::Approx(-0.2).epsilon(1e-8));
    CHECK(p2.h1().intervals()[0].hi == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(p2.h1().intervals()[0].lo_open);
    CHECK(p2.h0().size() == 2);
}

TEST_CASE("coin pairs from the worked example") {
    const auto demo = LossSpec::coin_demo();
    const auto full = coin_complete_pair();
    CHECK(check_complete(full, demo).holds);
    CHECK(check_partial(full, demo).holds);

    const auto partial = coin_partial_pair();
    const auto c = check_complete(partial, demo);
    CHECK_FALSE(c.holds);
    REQUIRE(c.witness);
    CHECK(*c.witness != 0.0);
    CHECK(*c.witness != 0.3);
    CHECK(check_partial(partial, demo).holds);

    CheckOptions restricted;
    restricted.restrict_to_pair = true;
    CHECK(check_complete(partial, demo, restricted).holds);
}

TEST_CASE("zero placed in h1") {
    const HypothesisPair pair(kCoin, RegionSet{}, RegionSet{Interval::point(0.0)});
    const auto v = check_partial(pair, LossSpec::coin_demo());
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(*v.witness == 0.0);
}

TEST_CASE("everything negligible under equal losses") {
    const auto equal = LossSpec::quadratic(ParameterSpace(-1, 1), {1, 0, 0}, {1, 0, 0});
    const HypothesisPair pair(equal.space(), RegionSet::whole(equal.space()), RegionSet{});
    CHECK(check_complete(pair, equal).holds);
    CHECK(check_partial(pair, equal).holds);
}

TEST_CASE("round trip and implication on random specs") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 80; ++i) {
        const auto spec = testing::random_spec(rng);
        const auto pair = derive_hypotheses(partition(spec));
        CHECK(check_complete(pair, spec).holds);
        CHECK(check_partial(pair, spec).holds);
    }
}
