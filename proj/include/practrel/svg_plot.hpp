#pragma once

#include "practrel/regions.hpp"

#include <cstddef>
#include <string>

namespace practrel {

struct PlotSpec {
    int width = 720;
    int height = 420;
    // Loss curves are sampled at this many evenly spaced points.
    std::size_t grid = 401;
    std::string a0_label = "a0";
    std::string a1_label = "a1";
    std::string title;
};

std::string xml_escape(const std::string& text);

// Both loss curves over the space (a0 dotted, a1 solid) on top of the shaded
// partition, with a labelled marker at every crossing. The first line after
// the XML declaration is a version comment.
std::string render_svg(const LossSpec& spec, const RelevancePartition& part, const PlotSpec& plot = {});

}  // namespace practrel
