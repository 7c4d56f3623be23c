#include "practrel/regions.hpp"

#include "practrel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace practrel {

bool Interval::contains(double theta) const noexcept {
    const bool above = lo_open ? theta > lo : theta >= lo;
    const bool below = hi_open ? theta < hi : theta <= hi;
    return above && below;
}

RegionSet::RegionSet(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw ValidationError("region endpoints must be finite");
        if (iv.lo > iv.hi)
            throw ValidationError(fmt::format("region interval has lo > hi ({} > {})", iv.lo, iv.hi));
    }
    std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return !a.lo_open && b.lo_open;
    });
    for (const auto& iv : intervals) {
        if (intervals_.empty()) {
            intervals_.push_back(iv);
            continue;
        }
        Interval& cur = intervals_.back();
        const bool touches = iv.lo < cur.hi || (iv.lo == cur.hi && !(cur.hi_open && iv.lo_open));
        if (!touches) {
            intervals_.push_back(iv);
            continue;
        }
        if (iv.lo == cur.lo) cur.lo_open = cur.lo_open && iv.lo_open;
        if (iv.hi > cur.hi) {
            cur.hi = iv.hi;
            cur.hi_open = iv.hi_open;
        } else if (iv.hi == cur.hi) {
            cur.hi_open = cur.hi_open && iv.hi_open;
        }
    }
}

Interval RegionSet::hull() const {
    if (intervals_.empty()) throw ValidationError("hull of an empty region");
    return Interval::closed(intervals_.front().lo, intervals_.back().hi);
}

bool RegionSet::within(const ParameterSpace& space) const noexcept {
    return intervals_.empty() ||
           (intervals_.front().lo >= space.lo() && intervals_.back().hi <= space.hi());
}

namespace {

bool overlap(const Interval& a, const Interval& b) {
    double lo = a.lo;
    bool lo_open = a.lo_open;
    if (b.lo > lo) {
        lo = b.lo;
        lo_open = b.lo_open;
    } else if (b.lo == lo) {
        lo_open = lo_open || b.lo_open;
    }
    double hi = a.hi;
    bool hi_open = a.hi_open;
    if (b.hi < hi) {
        hi = b.hi;
        hi_open = b.hi_open;
    } else if (b.hi == hi) {
        hi_open = hi_open || b.hi_open;
    }
    return !Interval{lo, hi, lo_open, hi_open}.empty();
}

}  // namespace

bool RegionSet::intersects(const RegionSet& other) const noexcept {
    std::size_t i = 0, j = 0;
    const auto& a = intervals_;
    const auto& b = other.intervals_;
    while (i < a.size() && j < b.size()) {
        if (overlap(a[i], b[j])) return true;
        if (a[i].hi < b[j].hi || (a[i].hi == b[j].hi && a[i].hi_open))
            ++i;
        else
            ++j;
    }
    return false;
}

bool region_contains(const RegionSet& set, double theta) noexcept {
    const auto& ivs = set.intervals();
    auto it = std::upper_bound(ivs.begin(), ivs.end(), theta,
                               [](double x, const Interval& iv) { return x < iv.lo; });
    if (it == ivs.begin()) return false;
    return std::prev(it)->contains(theta);
}

double region_measure(const RegionSet& set) noexcept {
    double total = 0.0;
    for (const auto& iv : set.intervals()) total += iv.hi - iv.lo;
    return total;
}

bool is_practically_relevant(const LossSpec& spec, double theta) {
    return loss_difference(spec, theta) < 0.0;
}

namespace {

// Bisects [a, b] where relevance differs at the ends; returns the crossing
// estimate from linear interpolation of the loss difference on the final bracket.
double refine_crossing(const LossSpec& spec, double a, double b, double tol) {
    const bool rel_a = is_practically_relevant(spec, a);
    while (b - a > tol) {
        const double m = a + 0.5 * (b - a);
        if (m <= a || m >= b) break;
        if (is_practically_relevant(spec, m) == rel_a)
            a = m;
        else
            b = m;
    }
    const double da = loss_difference(spec, a);
    const double db = loss_difference(spec, b);
    if (da == db) return a;
    const double t = std::clamp(da / (da - db), 0.0, 1.0);
    return std::clamp(a + t * (b - a), a, b);
}

}  // namespace

RelevancePartition partition(const LossSpec& spec, const PartitionOptions& opts) {
    if (opts.grid_size < 16)
        throw ParameterError(fmt::format("partition grid_size must be >= 16 (got {})", opts.grid_size));
    if (!(opts.root_tol > 0.0))
        throw ParameterError("partition root_tol must be > 0");
    if (auto report = validate_loss_spec(spec, opts.grid_size); !report.ok())
        throw ValidationError("invalid loss spec: " + report.violations.front());

    const auto& space = spec.space();
    std::vector<double> grid;
    grid.reserve(opts.grid_size + 8);
    const std::size_t n = opts.grid_size;
    for (std::size_t i = 0; i < n; ++i)
        grid.push_back(i + 1 == n ? space.hi()
                                  : space.lo() + space.width() * static_cast<double>(i) /
                                                     static_cast<double>(n - 1));
    const auto bps = spec.breakpoints();
    grid.insert(grid.end(), bps.begin(), bps.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<char> rel(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) rel[i] = is_practically_relevant(spec, grid[i]);

    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (rel[i] == rel[i + 1]) continue;
        const double c = refine_crossing(spec, grid[i], grid[i + 1], opts.root_tol);
        if (!crossings.empty() && c - crossings.back() <= 2.0 * opts.root_tol) continue;
        crossings.push_back(c);
    }

    std::vector<Interval> negligible;
    std::vector<Interval> relevant;
    auto put = [&](bool is_rel, Interval iv) { (is_rel ? relevant : negligible).push_back(iv); };

    std::vector<double> cuts;
    cuts.push_back(space.lo());
    cuts.insert(cuts.end(), crossings.begin(), crossings.end());
    cuts.push_back(space.hi());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double p = cuts[i];
        const double q = cuts[i + 1];
        if (!(p < q)) continue;
        put(is_practically_relevant(spec, p + 0.5 * (q - p)), Interval::open(p, q));
    }
    for (double c : crossings) negligible.push_back(Interval::point(c));
    for (double end : {space.lo(), space.hi()}) {
        if (std::find(crossings.begin(), crossings.end(), end) != crossings.end()) continue;
        put(is_practically_relevant(spec, end), Interval::point(end));
    }

    return RelevancePartition{space, RegionSet(std::move(negligible)), RegionSet(std::move(relevant)),
                              std::move(crossings)};
}

}  // namespace practrel
