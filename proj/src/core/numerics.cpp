#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dnodal::numerics {

double interpolate_uniform(std::span<const double> values, double x0, double h, double x) {
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    if (n == 0) return 0.0;
    if (n == 1) return values[0];
    const double s = (x - x0) / h;
    const std::ptrdiff_t order = std::min<std::ptrdiff_t>(4, n);
    auto base = static_cast<std::ptrdiff_t>(std::floor(s)) - (order / 2 - 1);
    base = std::clamp<std::ptrdiff_t>(base, 0, n - order);
    // Exact hit avoids the rounding of the Lagrange weights.
    const double rs = std::round(s);
    if (std::abs(s - rs) < 1e-13 && rs >= 0 && rs < static_cast<double>(n))
        return values[static_cast<std::size_t>(rs)];
    double sum = 0.0;
    for (std::ptrdiff_t i = 0; i < order; ++i) {
        double w = 1.0;
        for (std::ptrdiff_t k = 0; k < order; ++k) {
            if (k == i) continue;
            w *= (s - static_cast<double>(base + k)) / static_cast<double>(i - k);
        }
        sum += w * values[static_cast<std::size_t>(base + i)];
    }
    return sum;
}

double interpolate_lagrange(std::span<const double> xs, std::span<const double> ys, double x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double w = 1.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (k == i) continue;
            w *= (x - xs[k]) / (xs[i] - xs[k]);
        }
        sum += w * ys[i];
    }
    return sum;
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
}

std::vector<double> least_squares(std::span<const double> A, std::size_t rows, std::size_t cols,
                                  std::span<const double> y, double* residual_rms) {
    if (rows < cols || cols == 0) throw std::invalid_argument("least_squares: underdetermined system");
    std::vector<double> a(A.begin(), A.end());
    std::vector<double> b(y.begin(), y.end());
    std::vector<double> scale(cols, 1.0);
    for (std::size_t c = 0; c < cols; ++c) {
        double mx = 0.0;
        for (std::size_t r = 0; r < rows; ++r) mx = std::max(mx, std::abs(a[r * cols + c]));
        if (mx > 0.0) {
            scale[c] = mx;
            for (std::size_t r = 0; r < rows; ++r) a[r * cols + c] /= mx;
        }
    }
    for (std::size_t c = 0; c < cols; ++c) {
        double norm = 0.0;
        for (std::size_t r = c; r < rows; ++r) norm += a[r * cols + c] * a[r * cols + c];
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("least_squares: rank deficient design");
        const double alpha = a[c * cols + c] > 0 ? -norm : norm;
        std::vector<double> v(rows - c);
        for (std::size_t r = c; r < rows; ++r) v[r - c] = a[r * cols + c];
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (double e : v) vnorm2 += e * e;
        if (vnorm2 == 0.0) continue;
        for (std::size_t k = c; k < cols; ++k) {
            double dot = 0.0;
            for (std::size_t r = c; r < rows; ++r) dot += v[r - c] * a[r * cols + k];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t r = c; r < rows; ++r) a[r * cols + k] -= f * v[r - c];
        }
        double dot = 0.0;
        for (std::size_t r = c; r < rows; ++r) dot += v[r - c] * b[r];
        const double f = 2.0 * dot / vnorm2;
        for (std::size_t r = c; r < rows; ++r) b[r] -= f * v[r - c];
    }
    std::vector<double> coef(cols, 0.0);
    for (std::size_t c = cols; c-- > 0;) {
        double s = b[c];
        for (std::size_t k = c + 1; k < cols; ++k) s -= a[c * cols + k] * coef[k];
        coef[c] = s / a[c * cols + c];
    }
    if (residual_rms) {
        double ss = 0.0;
        for (std::size_t r = cols; r < rows; ++r) ss += b[r] * b[r];
        *residual_rms = std::sqrt(ss / static_cast<double>(rows));
    }
    for (std::size_t c = 0; c < cols; ++c) coef[c] /= scale[c];
    return coef;
}

}  // namespace dnodal::numerics
