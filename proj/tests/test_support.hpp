#pragma once

#include "practrel/loss_model.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

namespace practrel::testing {

// Nonnegative loss spec drawn from one of the three parametric families.
inline LossSpec random_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lo = -0.2 - 1.8 * u(rng);
    const double hi = 0.2 + 1.8 * u(rng);
    const ParameterSpace space(lo, hi);
    const double w = hi - lo;
    switch (rng() % 3) {
    case 0: {
        HingeLoss a0{0.2 * u(rng), lo + w * u(rng), 2 * u(rng), 2 * u(rng)};
        HingeLoss a1{0.6 * u(rng), lo + w * u(rng), 2 * u(rng), 2 * u(rng)};
        return LossSpec::piecewise_linear(space, a0, a1);
    }
    case 1: {
        QuadraticLoss a0{3 * u(rng), lo + w * u(rng), 0.3 * u(rng)};
        QuadraticLoss a1{3 * u(rng), lo + w * u(rng), 0.3 * u(rng)};
        return LossSpec::quadratic(space, a0, a1);
    }
    default: {
        const std::size_t m = 2 + rng() % 12;
        TableLoss a0, a1;
        for (std::size_t i = 0; i < m; ++i) {
            const double x = i + 1 == m ? hi : lo + w * static_cast<double>(i) / static_cast<double>(m - 1);
            a0.grid.push_back(x);
            a1.grid.push_back(x);
            a0.values.push_back(u(rng));
            a1.values.push_back(u(rng));
        }
        return LossSpec::table(space, a0, a1);
    }
    }
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("practrel_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Standard normal CDF written out independently of the library.
inline double phi(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

// Composite midpoint rule with many panels; a crude but independent oracle.
template <typename F>
double midpoint_integral(F&& f, double lo, double hi, std::size_t panels = 200000) {
    const double h = (hi - lo) / static_cast<double>(panels);
    long double sum = 0.0L;
    for (std::size_t i = 0; i < panels; ++i) sum += f(lo + (static_cast<double>(i) + 0.5) * h);
    return static_cast<double>(sum * h);
}

}  // namespace practrel::testing
