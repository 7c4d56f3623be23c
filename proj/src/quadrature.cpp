#include "practrel/quadrature.hpp"

#include "practrel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace practrel {

namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;
    QuadratureResult result;

    double eval(double x) {
        ++result.evaluations;
        const double v = f(x);
        if (!std::isfinite(v)) throw NumericalError("integrand is not finite");
        return v;
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double both = left + right;
        const double err = both - whole;
        // Below this the difference is rounding noise, not truncation error.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(both);
        if (std::abs(err) <= 15.0 * std::max(tol, floor)) return both + err / 15.0;
        if (depth >= max_depth) {
            result.accuracy_warning = true;
            return both + err / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

QuadratureResult quadrature(const std::function<double(double)>& f, double lo, double hi,
                            double tol, int max_depth) {
    if (!(lo < hi)) throw ParameterError("quadrature requires lo < hi");
    if (!(tol > 0.0)) throw ParameterError("quadrature requires tol > 0");
    Simpson s{f, max_depth, {}};
    const double fa = s.eval(lo);
    const double fb = s.eval(hi);
    const double m = 0.5 * (lo + hi);
    const double fm = s.eval(m);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    s.result.value = s.recurse(lo, hi, fa, fm, fb, whole, tol, 0);
    return s.result;
}

QuadratureResult quadrature_panels(const std::function<double(double)>& f, double lo, double hi,
                                   std::size_t panels, double tol, const std::vector<double>& cuts) {
    if (!(lo < hi)) throw ParameterError("quadrature requires lo < hi");
    panels = std::max<std::size_t>(panels, 1);
    std::vector<double> edges;
    edges.reserve(panels + cuts.size() + 1);
    for (std::size_t i = 0; i <= panels; ++i)
        edges.push_back(i == panels ? hi
                                    : lo + (hi - lo) * static_cast<double>(i) /
                                               static_cast<double>(panels));
    for (double c : cuts)
        if (c > lo && c < hi) edges.push_back(c);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    QuadratureResult total;
    const double piece_tol = tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1])) continue;
        const auto r = quadrature(f, edges[i], edges[i + 1], piece_tol);
        total.value += r.value;
        total.accuracy_warning = total.accuracy_warning || r.accuracy_warning;
        total.evaluations += r.evaluations;
    }
    return total;
}

}  // namespace practrel
