#include "practrel/hypotheses.hpp"

#include "practrel/errors.hpp"

#include <algorithm>
#include <cmath>

namespace practrel {

HypothesisPair::HypothesisPair(ParameterSpace space, RegionSet h0, RegionSet h1)
    : space_(space), h0_(std::move(h0)), h1_(std::move(h1)) {
    if (!h0_.within(space_)) throw ValidationError("h0 extends outside the parameter space");
    if (!h1_.within(space_)) throw ValidationError("h1 extends outside the parameter space");
    if (h0_.intersects(h1_)) throw ValidationError("hypothesis regions h0 and h1 overlap");
}

bool HypothesisPair::covers_space(double tol) const noexcept {
    return std::abs(region_measure(h0_) + region_measure(h1_) - space_.width()) <=
           tol * std::max(1.0, space_.width());
}

HypothesisPair derive_hypotheses(const RelevancePartition& partition) {
    return HypothesisPair(partition.space, partition.negligible, partition.relevant);
}

namespace {

// Uniform grid, loss breakpoints, and every region endpoint with its
// root_tol neighbours; points within 2 root_tol of a loss crossing dropped.
std::vector<double> probe_points(const HypothesisPair& pair, const LossSpec& spec,
                                 const CheckOptions& opts) {
    const auto& space = spec.space();
    const std::size_t n = std::max<std::size_t>(opts.grid_size, 2);
    std::vector<double> pts;
    pts.reserve(n + 64);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(i + 1 == n ? space.hi()
                                 : space.lo() + space.width() * static_cast<double>(i) /
                                                    static_cast<double>(n - 1));
    const auto bps = spec.breakpoints();
    pts.insert(pts.end(), bps.begin(), bps.end());
    for (const RegionSet* set : {&pair.h0(), &pair.h1()}) {
        for (const auto& iv : set->intervals()) {
            for (double e : {iv.lo, iv.hi}) {
                pts.push_back(e);
                pts.push_back(e - opts.root_tol);
                pts.push_back(e + opts.root_tol);
            }
            pts.push_back(iv.lo + 0.5 * (iv.hi - iv.lo));
        }
    }
    std::erase_if(pts, [&](double x) { return !space.contains(x); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const auto crossings = partition(spec, PartitionOptions{opts.grid_size, opts.root_tol}).crossings;
    std::erase_if(pts, [&](double x) {
        return std::any_of(crossings.begin(), crossings.end(),
                           [&](double c) { return std::abs(x - c) <= 2.0 * opts.root_tol; });
    });
    if (opts.restrict_to_pair) {
        std::erase_if(pts, [&](double x) {
            return !region_contains(pair.h0(), x) && !region_contains(pair.h1(), x);
        });
    }
    return pts;
}

}  // namespace

IncorporationVerdict check_complete(const HypothesisPair& pair, const LossSpec& spec,
                                    const CheckOptions& opts) {
    for (double theta : probe_points(pair, spec, opts)) {
        const bool ok = is_practically_relevant(spec, theta) ? region_contains(pair.h1(), theta)
                                                             : region_contains(pair.h0(), theta);
        if (!ok) return {false, theta};
    }
    return {true, std::nullopt};
}

IncorporationVerdict check_partial(const HypothesisPair& pair, const LossSpec& spec,
                                   const CheckOptions& opts) {
    for (double theta : probe_points(pair, spec, opts)) {
        const bool in0 = region_contains(pair.h0(), theta);
        const bool in1 = region_contains(pair.h1(), theta);
        if (!in0 && !in1) continue;
        const bool rel = is_practically_relevant(spec, theta);
        if ((in0 && rel) || (in1 && !rel)) return {false, theta};
    }
    return {true, std::nullopt};
}

}  // namespace practrel
