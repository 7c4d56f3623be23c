#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace practrel {

struct QuadratureResult {
    double value = 0.0;
    // Set when some subinterval reached max_depth before meeting its tolerance.
    bool accuracy_warning = false;
    std::size_t evaluations = 0;
};

// Adaptive Simpson with absolute-error target tol. Requires lo < hi, tol > 0.
QuadratureResult quadrature(const std::function<double(double)>& f, double lo, double hi,
                            double tol = 1e-10, int max_depth = 50);

// Splits [lo, hi] into `panels` equal pieces (plus the given extra cut points)
// and runs quadrature() on each, so narrow peaks are not stepped over by the
// initial five-point sample. The tolerance is shared across pieces.
QuadratureResult quadrature_panels(const std::function<double(double)>& f, double lo, double hi,
                                   std::size_t panels, double tol = 1e-10,
                                   const std::vector<double>& cuts = {});

}  // namespace practrel
