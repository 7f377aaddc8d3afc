#pragma once

#include <cstddef>
#include <vector>

namespace ristl::rice {

/// log I0(z) for z >= 0, switching to the asymptotic expansion for large z.
double log_bessel_i0(double z);

/// Density of the planar distance d = ||x - Y|| where Y ~ N(center, sigma^2 I2)
/// and nu = ||x - center||. nu = 0 reduces to the Rayleigh density.
double pdf(double r, double nu, double sigma);

/// P(d <= r), by Gauss-Legendre quadrature of the density.
double cdf(double r, double nu, double sigma);

/// Quantile of d at probability p in (0,1), by bisection on cdf.
double quantile(double p, double nu, double sigma);

/// E[d].
double mean(double nu, double sigma);

/// E[d | d > q]; q must leave positive tail mass.
double tail_mean(double q, double nu, double sigma);

/// Gauss-Legendre nodes/weights on [-1,1]; cached per order.
const std::vector<double>& gl_nodes(std::size_t order);
const std::vector<double>& gl_weights(std::size_t order);

}  // namespace ristl::rice
