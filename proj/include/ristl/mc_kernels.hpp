#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "ristl/gaussian.hpp"
#include "ristl/predicate.hpp"

namespace ristl::mc {

/// Execution policy for the sampling/reduction kernels. Parallel is the
/// default throughout the toolkit; Serial is the reference implementation
/// kept for testing and benchmarking. Both produce bit-identical output:
/// random streams are seeded per fixed-size chunk, independent of the
/// thread count.
enum class Exec { Serial, Parallel };

/// Rows per RNG chunk; output is deterministic in (seed, chunk layout).
inline constexpr std::size_t kChunkRows = 4096;

/// splitmix64 stream derivation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Fills out with i.i.d. standard normals (Box-Muller over mt19937_64).
void standard_normal_fill(std::span<double> out, std::uint64_t seed, Exec exec);
void standard_normal_fill_serial(std::span<double> out, std::uint64_t seed);

/// n x dim(X) matrix of samples of X; row i is mean + A * z_i.
Eigen::MatrixXd sample_gaussian(const GaussianVector& x, std::size_t n,
                                std::uint64_t seed, Exec exec = Exec::Parallel);
Eigen::MatrixXd sample_gaussian_serial(const GaussianVector& x, std::size_t n,
                                       std::uint64_t seed);

/// Samples of h(state, X) for a predicate function. The environment vector is
/// sampled; the state is fixed.
std::vector<double> predicate_samples(const PredicateFunction& pred,
                                      const Eigen::VectorXd& state,
                                      const GaussianVector& x, std::size_t n,
                                      std::uint64_t seed, Exec exec = Exec::Parallel);
std::vector<double> predicate_samples_serial(const PredicateFunction& pred,
                                             const Eigen::VectorXd& state,
                                             const GaussianVector& x, std::size_t n,
                                             std::uint64_t seed);

/// Fraction of entries >= 0.
double fraction_nonneg(std::span<const double> values, Exec exec = Exec::Parallel);
double fraction_nonneg_serial(std::span<const double> values);

double mean(std::span<const double> values, Exec exec = Exec::Parallel);
double mean_serial(std::span<const double> values);

/// Empirical VaR_beta of the loss -h over unsorted h samples (nth_element
/// based; mutates the scratch copy it takes by value).
double loss_quantile(std::vector<double> h_samples, double beta);

/// Empirical CVaR_beta of the loss -h: mean of the ceil((1-beta) n) largest
/// losses.
double loss_tail_mean(std::vector<double> h_samples, double beta);

}  // namespace ristl::mc
