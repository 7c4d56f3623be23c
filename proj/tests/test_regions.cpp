#include "practrel/errors.hpp"
#include "practrel/regions.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace practrel;

namespace {

const RegionSet kB0{Interval::closed(-0.106, 0.106)};
const RegionSet kB1{Interval{-0.5, -0.106, false, true}, Interval{0.106, 0.5, true, false}};

}  // namespace

TEST_CASE("region set canonical form") {
    const RegionSet merged{Interval::closed(0.5, 1.0), Interval{0.0, 0.5, false, true}};
    REQUIRE(merged.size() == 1);
    CHECK(merged.intervals()[0] == Interval::closed(0.0, 1.0));

    const RegionSet gap{Interval::open(0.0, 0.5), Interval::open(0.5, 1.0)};
    CHECK(gap.size() == 2);
    CHECK_FALSE(region_contains(gap, 0.5));

    CHECK_THROWS_AS(RegionSet{Interval::closed(1.0, 0.0)}, ValidationError);
    CHECK_THROWS_AS(RegionSet{Interval::closed(0.0, NAN)}, ValidationError);
}

TEST_CASE("region_contains respects openness") {
    CHECK_FALSE(region_contains(kB1, 0.106));
    CHECK(region_contains(kB0, 0.106));
    CHECK(region_contains(kB1, 0.1060001));
    CHECK_FALSE(region_contains(RegionSet{}, 0.0));
}

TEST_CASE("region_measure") {
    CHECK(region_measure(kB0) == doctest::Approx(0.212).epsilon(1e-15));
    CHECK(region_measure(RegionSet::whole(ParameterSpace(-0.5, 0.5))) == 1.0);
    CHECK(region_measure(RegionSet{Interval::point(0.0)}) == 0.0);
}

TEST_CASE("is_practically_relevant") {
    const auto demo = LossSpec::coin_demo();
    CHECK_FALSE(is_practically_relevant(demo, 0.0));
    CHECK(is_practically_relevant(demo, 0.3));
    const auto equal = LossSpec::quadratic(ParameterSpace(-1, 1), {1, 0, 0.1}, {1, 0, 0.1});
    CHECK_FALSE(is_practically_relevant(equal, 0.4));
}

TEST_CASE("coin demo partition") {
    const auto part = partition(LossSpec::coin_demo());
    REQUIRE(part.crossings.size() == 2);
    CHECK(part.crossings[0] == doctest::Approx(-0.106).epsilon(1e-6));
    CHECK(part.crossings[1] == doctest::Approx(0.106).epsilon(1e-6));
    REQUIRE(part.negligible.size() == 1);
    REQUIRE(part.relevant.size() == 2);
    const auto& n = part.negligible.intervals()[0];
    CHECK_FALSE(n.lo_open);
    CHECK_FALSE(n.hi_open);
    CHECK(std::abs(n.lo + 0.106) < 1e-6);
    CHECK(std::abs(n.hi - 0.106) < 1e-6);
    const auto& r0 = part.relevant.intervals()[0];
    const auto& r1 = part.relevant.intervals()[1];
    CHECK(r0.lo == -0.5);
    CHECK_FALSE(r0.lo_open);
    CHECK(r0.hi_open);
    CHECK(r1.lo_open);
    CHECK(r1.hi == 0.5);
    CHECK_FALSE(r1.hi_open);
}

TEST_CASE("a0 preferred everywhere") {
    const auto spec = LossSpec::quadratic(ParameterSpace(-1, 2), {1, 0, 0}, {1, 0, 0.5});
    const auto part = partition(spec);
    CHECK(part.negligible == RegionSet::whole(spec.space()));
    CHECK(part.relevant.empty());
    CHECK(part.crossings.empty());
}

TEST_CASE("quadratic crossings at +-0.2") {
    // delta = theta^2 - 0.04
    const auto spec = LossSpec::quadratic(ParameterSpace(-0.5, 0.5), {0, 0, 0.04}, {1, 0, 0});
    const auto part = partition(spec);
    REQUIRE(part.crossings.size() == 2);
    CHECK(part.crossings[0] == doctest::Approx(-0.2).epsilon(1e-8));
    CHECK(part.crossings[1] == doctest::Approx(0.2).epsilon(1e-8));
    REQUIRE(part.relevant.size() == 1);
    CHECK(part.relevant.intervals()[0].lo_open);
    CHECK(part.relevant.intervals()[0].hi_open);
    CHECK(part.negligible.size() == 2);

    // Independent oracle: sign scan of theta^2 - 0.04 on a fine grid.
    for (int i = 0; i <= 10000; ++i) {
        const double t = -0.5 + i / 10000.0;
        if (std::abs(std::abs(t) - 0.2) < 1e-8) continue;
        CHECK(region_contains(part.relevant, t) == (t * t - 0.04 < 0));
    }
}

TEST_CASE("partition option errors") {
    const auto demo = LossSpec::coin_demo();
    CHECK_THROWS_AS(partition(demo, {8, 1e-9}), ParameterError);
    CHECK_THROWS_AS(partition(demo, {4096, 0.0}), ParameterError);
    const auto bad = LossSpec::quadratic(ParameterSpace(-1, 1), {-1, 0, 0}, {1, 0, 0});
    CHECK_THROWS_AS(partition(bad), ValidationError);
}

TEST_CASE("partition properties on random specs") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 60; ++i) {
        const auto spec = testing::random_spec(rng);
        const PartitionOptions opts;
        const auto part = partition(spec, opts);
        CHECK_FALSE(part.negligible.intersects(part.relevant));
        for (double c : part.crossings) {
            CHECK(spec.space().contains(c));
            CHECK(region_contains(part.negligible, c));
        }
        std::uniform_real_distribution<double> u(spec.space().lo(), spec.space().hi());
        for (int j = 0; j < 2000; ++j) {
            const double t = u(rng);
            CHECK(region_contains(part.negligible, t) != region_contains(part.relevant, t));
            bool near = false;
            for (double c : part.crossings) near = near || std::abs(t - c) <= opts.root_tol;
            if (!near) CHECK(region_contains(part.relevant, t) == is_practically_relevant(spec, t));
        }
        const auto scaled = partition(spec.scaled(3.7), opts);
        REQUIRE(scaled.crossings.size() == part.crossings.size());
        for (std::size_t k = 0; k < part.crossings.size(); ++k)
            CHECK(std::abs(scaled.crossings[k] - part.crossings[k]) <= opts.root_tol);
    }
}

TEST_CASE("zero-effect anchor") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto spec = testing::random_spec(rng);
        if (!spec.space().zero_in_space()) continue;
        if (evaluate_loss(spec, 0.0, Action::a0) < evaluate_loss(spec, 0.0, Action::a1))
            CHECK(region_contains(partition(spec).negligible, 0.0));
    }
}
