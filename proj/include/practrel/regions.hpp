#pragma once

#include "practrel/loss_model.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace practrel {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = false;
    bool hi_open = false;

    static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval point(double x) { return {x, x, false, false}; }

    bool contains(double theta) const noexcept;
    bool empty() const noexcept { return lo > hi || (lo == hi && (lo_open || hi_open)); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of disjoint intervals, kept sorted with touching intervals
// merged. Every constructor canonicalizes.
class RegionSet {
public:
    RegionSet() = default;
    explicit RegionSet(std::vector<Interval> intervals);
    RegionSet(std::initializer_list<Interval> intervals)
        : RegionSet(std::vector<Interval>(intervals)) {}

    static RegionSet whole(const ParameterSpace& space) {
        return RegionSet{Interval::closed(space.lo(), space.hi())};
    }

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }
    std::size_t size() const noexcept { return intervals_.size(); }

    // Smallest closed interval containing the set. Requires !empty().
    Interval hull() const;

    bool within(const ParameterSpace& space) const noexcept;
    bool intersects(const RegionSet& other) const noexcept;

    friend bool operator==(const RegionSet&, const RegionSet&) = default;

private:
    std::vector<Interval> intervals_;
};

bool region_contains(const RegionSet& set, double theta) noexcept;

// Sum of interval lengths; endpoint openness is ignored.
double region_measure(const RegionSet& set) noexcept;

struct PartitionOptions {
    std::size_t grid_size = 4096;
    double root_tol = 1e-9;
};

// Negligible (theta0-role) and practically relevant (theta1-role) effects.
struct RelevancePartition {
    ParameterSpace space;
    RegionSet negligible;
    RegionSet relevant;
    std::vector<double> crossings;
};

// True iff L(theta, a1) < L(theta, a0). Ties are negligible.
bool is_practically_relevant(const LossSpec& spec, double theta);

// Sign-change scan of the loss difference on a uniform grid plus breakpoints,
// with every bracketed change refined by bisection. Crossing points belong to
// the negligible set. Touching zeros without a sign change are not detected.
//
// Throws ValidationError for an invalid spec and ParameterError for
// grid_size < 16 or root_tol <= 0.
RelevancePartition partition(const LossSpec& spec, const PartitionOptions& opts = {});

}  // namespace practrel
