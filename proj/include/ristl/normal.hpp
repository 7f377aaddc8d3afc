#pragma once

namespace ristl {

/// Standard normal density.
double norm_pdf(double z);

/// Standard normal CDF, accurate to machine precision via erfc.
double norm_cdf(double z);

/// Standard normal quantile: Acklam's rational approximation followed by one
/// Halley/Newton refinement against norm_cdf. p must lie in (0, 1).
double norm_quantile(double p);

}  // namespace ristl
