#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dnodal::numerics {

/// Four-point Lagrange interpolation of samples on the uniform grid
/// x_k = x0 + k h. The stencil is shifted inward near the ends, so values
/// slightly outside the grid are extrapolated from the end stencil.
double interpolate_uniform(std::span<const double> values, double x0, double h, double x);

/// Lagrange interpolation through arbitrary distinct abscissae.
double interpolate_lagrange(std::span<const double> xs, std::span<const double> ys, double x);

/// Cumulative trapezoid integral of f sampled on a uniform grid; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double h);

/// Least-squares solution of the overdetermined system A c = y, where A is
/// rows x cols in row-major order. Householder QR; columns are scaled
/// beforehand. Returns the coefficients and writes the residual RMS.
std::vector<double> least_squares(std::span<const double> A, std::size_t rows, std::size_t cols,
                                  std::span<const double> y, double* residual_rms = nullptr);

}  // namespace dnodal::numerics
