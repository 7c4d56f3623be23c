#pragma once

#include "practrel/regions.hpp"

#include <optional>

namespace practrel {

// H0: theta in h0 vs. H1: theta in h1, both inside `space`.
class HypothesisPair {
public:
    // Throws ValidationError if the regions overlap or leave the space.
    HypothesisPair(ParameterSpace space, RegionSet h0, RegionSet h1);

    const ParameterSpace& space() const noexcept { return space_; }
    const RegionSet& h0() const noexcept { return h0_; }
    const RegionSet& h1() const noexcept { return h1_; }

    // h0 and h1 together have the measure of the whole space.
    bool covers_space(double tol = 1e-9) const noexcept;

private:
    ParameterSpace space_;
    RegionSet h0_;
    RegionSet h1_;
};

HypothesisPair derive_hypotheses(const RelevancePartition& partition);

struct CheckOptions {
    std::size_t grid_size = 4096;
    double root_tol = 1e-9;
    // Only test points lying in h0 or h1 (the pair's own restricted space).
    bool restrict_to_pair = false;
};

struct IncorporationVerdict {
    bool holds = false;
    std::optional<double> witness;  // a violating theta when !holds
};

// Every negligible effect lies in h0 and every relevant effect lies in h1.
IncorporationVerdict check_complete(const HypothesisPair& pair, const LossSpec& spec,
                                    const CheckOptions& opts = {});

// h0 holds only negligible effects and h1 only relevant ones.
IncorporationVerdict check_partial(const HypothesisPair& pair, const LossSpec& spec,
                                   const CheckOptions& opts = {});

}  // namespace practrel
