#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fluidq/rng.hpp"
#include "fluidq/variance_model.hpp"

namespace fluidq {

/// Uniform grid t_k = (k - n_left) h, k = 0..n_left+n_right. t_{n_left} = 0.
struct GridSpec {
  double h = 1.0;
  std::size_t n_left = 0;
  std::size_t n_right = 1;

  std::size_t size() const { return n_left + n_right + 1; }
  std::size_t anchor() const { return n_left; }
  double time(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_left)) * h;
  }
  void validate() const;
};

struct SeedTrace {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t blocks_used = 0;
};

/// A trajectory of X on a GridSpec with X(0) = 0.
struct PathSample {
  GridSpec grid;
  std::vector<double> values;
  SeedTrace seed_trace;

  /// Wraps caller-supplied values (deterministic test paths). Requires one
  /// value per grid point and an exact zero at the anchor.
  static PathSample from_values(GridSpec grid, std::vector<double> values);
};

enum class EmbeddingMethod { Circulant, Dense };

std::string to_string(EmbeddingMethod method);

struct EmbeddingReport {
  std::size_t embedding_size = 0;
  double min_eigenvalue = 0.0;
  /// Clipped negative eigenvalue mass relative to the total absolute mass.
  double truncated_mass = 0.0;
  EmbeddingMethod method = EmbeddingMethod::Circulant;
};

struct SamplerOptions {
  std::size_t dense_threshold = 512;
  /// Eigenvalues above -eigen_tolerance * max|eigenvalue| count as zero.
  double eigen_tolerance = 1e-10;
  double truncation_ceiling = 1e-6;
  /// Embedding-size doublings tried before clipping negative eigenvalues.
  int max_doublings = 3;
};

/// Eigenvalues of the circulant matrix with first row
/// (g_0, ..., g_m, g_{m-1}, ..., g_1); length 2m. Requires m >= 1.
std::vector<double> embedding_spectrum(std::span<const double> gamma);

/// Exact sampler for n consecutive increments X((j+1)h) - X(jh).
///
/// For n <= dense_threshold the Toeplitz covariance is factored densely;
/// otherwise the sequence is drawn by circulant embedding. The factorization
/// is computed once and `draw` is const, so one sampler serves any number of
/// replications and threads.
class IncrementSampler {
 public:
  IncrementSampler(const VarianceModel& model, double h, std::size_t n,
                   const SamplerOptions& options = {});

  std::size_t size() const { return n_; }
  double step() const { return h_; }
  const EmbeddingReport& report() const { return report_; }

  void draw(CounterRng& rng, std::span<double> out) const;
  std::vector<double> draw(CounterRng& rng) const;

 private:
  struct FftPlan;

  void draw_dense(CounterRng& rng, std::span<double> out) const;
  void draw_circulant(CounterRng& rng, std::span<double> out) const;

  std::size_t n_ = 0;
  double h_ = 0.0;
  EmbeddingReport report_;
  std::vector<double> cholesky_;     // dense: row-major lower factor, n x n
  std::vector<double> half_weights_;  // circulant: sqrt(lambda_k / M), k = 0..M/2
  std::shared_ptr<FftPlan> plan_;
};

struct IncrementDraw {
  std::vector<double> increments;
  EmbeddingReport report;
};

IncrementDraw sample_increments(const VarianceModel& model, double h, std::size_t n,
                                std::uint64_t seed, const SamplerOptions& options = {});

/// Reusable path sampler for a fixed (model, grid).
class PathSampler {
 public:
  PathSampler(const VarianceModel& model, const GridSpec& grid,
              const SamplerOptions& options = {});

  const GridSpec& grid() const { return grid_; }
  const EmbeddingReport& report() const { return increments_.report(); }

  PathSample draw(std::uint64_t seed, std::uint64_t stream = 0) const;
  /// Writes into `values` (resized to grid().size()); returns the seed trace.
  SeedTrace draw_into(std::uint64_t seed, std::uint64_t stream, std::vector<double>& values,
                      std::vector<double>& scratch) const;

 private:
  GridSpec grid_;
  IncrementSampler increments_;
};

PathSample sample_path(const VarianceModel& model, const GridSpec& grid, std::uint64_t seed,
                       const SamplerOptions& options = {});

}  // namespace fluidq
