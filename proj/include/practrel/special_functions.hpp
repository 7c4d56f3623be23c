#pragma once

namespace practrel::special {

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double x, double a, double b);

double normal_cdf(double z);
double normal_upper_tail(double z);

// Inverse of a monotone CDF on [lo, hi] by bisection to `tol` in x.
template <typename Cdf>
double bisect_quantile(Cdf&& cdf, double p, double lo, double hi, double tol = 1e-12) {
    for (int i = 0; i < 200 && hi - lo > tol; ++i) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace practrel::special
