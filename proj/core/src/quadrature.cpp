#include "radlab/quadrature.hpp"

#include <cmath>
#include <string>

#include "radlab/errors.hpp"

namespace radlab {

namespace {

double simpson_strided(std::span<const double> samples, double h, std::size_t stride) {
    const std::size_t intervals = (samples.size() - 1) / stride;
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t k = 1; k < intervals; ++k) {
        (k % 2 == 1 ? odd : even) += samples[k * stride];
    }
    const double ends = samples.front() + samples[intervals * stride];
    return (stride * h / 3.0) * (ends + 4.0 * odd + 2.0 * even);
}

void check_count(std::size_t count) {
    if (count < 3 || count % 2 == 0) {
        throw BadGrid("simpson: need an odd number of samples >= 3, got " + std::to_string(count));
    }
}

}  // namespace

double simpson(std::span<const double> samples, double h) {
    check_count(samples.size());
    if (!(h > 0.0) || !std::isfinite(h)) throw BadGrid("simpson: spacing must be positive");
    return simpson_strided(samples, h, 1);
}

double simpson(std::span<const double> grid, std::span<const double> samples) {
    if (grid.size() != samples.size()) throw BadGrid("simpson: grid and samples differ in length");
    check_count(grid.size());
    const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
    if (!(h > 0.0)) throw BadGrid("simpson: grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double step = grid[i] - grid[i - 1];
        if (std::abs(step - h) > 1e-9 * h) {
            throw BadGrid("simpson: grid is not uniformly spaced at index " + std::to_string(i));
        }
    }
    return simpson_strided(samples, h, 1);
}

double simpson_error_estimate(std::span<const double> samples, double h) {
    check_count(samples.size());
    if ((samples.size() - 1) % 4 != 0) {
        throw BadGrid("simpson_error_estimate: need 4k+1 samples");
    }
    const double fine = simpson_strided(samples, h, 1);
    const double coarse = simpson_strided(samples, h, 2);
    return (fine - coarse) / 15.0;
}

}  // namespace radlab
