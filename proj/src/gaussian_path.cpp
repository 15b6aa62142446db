#include "fluidq/gaussian_path.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace fluidq {

namespace {

// The FFTW planner is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

void GridSpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid step h must be positive");
  if (n_left + n_right == 0) throw std::invalid_argument("grid must contain at least one step");
}

PathSample PathSample::from_values(GridSpec grid, std::vector<double> values) {
  grid.validate();
  if (values.size() != grid.size())
    throw std::invalid_argument("path values must have one entry per grid point");
  if (values[grid.anchor()] != 0.0) throw std::invalid_argument("path must satisfy X(0) = 0");
  return PathSample{grid, std::move(values), {}};
}

std::string to_string(EmbeddingMethod method) {
  return method == EmbeddingMethod::Dense ? "dense" : "circulant";
}

struct IncrementSampler::FftPlan {
  fftw_plan plan = nullptr;
  std::size_t size = 0;  // real transform length M

  explicit FftPlan(std::size_t m) : size(m) {
    std::lock_guard lock(planner_mutex());
    auto* in = fftw_alloc_complex(m / 2 + 1);
    auto* out = fftw_alloc_real(m);
    plan = fftw_plan_dft_c2r_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a c2r plan");
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
};

std::vector<double> embedding_spectrum(std::span<const double> gamma) {
  if (gamma.size() < 2) throw std::invalid_argument("embedding_spectrum: need gamma_0..gamma_m, m >= 1");
  const std::size_t m = gamma.size() - 1;
  const std::size_t M = 2 * m;
  std::vector<double> row(M);
  for (std::size_t k = 0; k <= m; ++k) row[k] = gamma[k];
  for (std::size_t k = 1; k < m; ++k) row[M - k] = gamma[k];

  std::vector<std::complex<double>> spec(M / 2 + 1);
  {
    std::lock_guard lock(planner_mutex());
    fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(M), row.data(),
                                       reinterpret_cast<fftw_complex*>(spec.data()),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (p == nullptr) throw std::runtime_error("FFTW failed to create an r2c plan");
    fftw_execute(p);
    fftw_destroy_plan(p);
  }

  double max_abs = 0.0, max_imag = 0.0;
  for (const auto& z : spec) {
    max_abs = std::max(max_abs, std::abs(z.real()));
    max_imag = std::max(max_imag, std::abs(z.imag()));
  }
  if (max_imag > 1e-10 * std::max(max_abs, 1e-300))
    throw std::runtime_error("embedding_spectrum: circulant spectrum is not real");

  std::vector<double> eig(M);
  for (std::size_t k = 0; k <= M / 2; ++k) eig[k] = spec[k].real();
  for (std::size_t k = M / 2 + 1; k < M; ++k) eig[k] = eig[M - k];
  return eig;
}

IncrementSampler::IncrementSampler(const VarianceModel& model, double h, std::size_t n,
                                   const SamplerOptions& options)
    : n_(n), h_(h) {
  if (n == 0) throw std::invalid_argument("IncrementSampler: n must be >= 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("IncrementSampler: h must be positive");

  auto diagnostic = [&](const std::string& what) {
    std::ostringstream os;
    os << what << " for model " << model.describe() << " on grid h=" << h << ", n=" << n;
    return os.str();
  };

  if (n <= options.dense_threshold) {
    const auto gamma = increment_autocovariances(model, h, n - 1);
    Eigen::MatrixXd cov(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cov(i, j) = gamma[i > j ? i - j : j - i];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw std::runtime_error(diagnostic("eigen-decomposition failed"));
    const auto& vals = eig.eigenvalues();
    const double max_abs = vals.cwiseAbs().maxCoeff();
    report_.method = EmbeddingMethod::Dense;
    report_.embedding_size = n;
    report_.min_eigenvalue = vals.minCoeff();
    report_.truncated_mass = 0.0;
    if (report_.min_eigenvalue < -options.eigen_tolerance * max_abs)
      throw std::runtime_error(diagnostic("covariance matrix is not positive semidefinite"));

    Eigen::MatrixXd factor;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) {
      factor = llt.matrixL();
    } else {
      // Semidefinite within tolerance: symmetric square root.
      const Eigen::VectorXd root = vals.cwiseMax(0.0).cwiseSqrt();
      factor = eig.eigenvectors() * root.asDiagonal();
    }
    cholesky_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cholesky_[i * n + j] = factor(i, j);
    return;
  }

  std::size_t m = std::bit_ceil(n);
  std::vector<double> eig;
  double max_abs = 0.0, min_eig = 0.0;
  for (int attempt = 0;; ++attempt, m *= 2) {
    eig = embedding_spectrum(increment_autocovariances(model, h, m));
    max_abs = 0.0;
    min_eig = eig.front();
    for (double v : eig) {
      max_abs = std::max(max_abs, std::abs(v));
      min_eig = std::min(min_eig, v);
    }
    if (min_eig >= -options.eigen_tolerance * max_abs || attempt >= options.max_doublings) break;
  }

  const std::size_t M = 2 * m;
  report_.method = EmbeddingMethod::Circulant;
  report_.embedding_size = M;
  report_.min_eigenvalue = min_eig;
  if (min_eig >= -options.eigen_tolerance * max_abs) {
    report_.truncated_mass = 0.0;
  } else {
    double neg = 0.0, total = 0.0;
    for (double v : eig) {
      total += std::abs(v);
      if (v < 0.0) neg += -v;
    }
    report_.truncated_mass = neg / total;
    if (report_.truncated_mass > options.truncation_ceiling) {
      std::ostringstream os;
      os << "circulant embedding truncated mass " << report_.truncated_mass << " exceeds ceiling "
         << options.truncation_ceiling;
      throw std::runtime_error(diagnostic(os.str()));
    }
  }

  half_weights_.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    half_weights_[k] = std::sqrt(std::max(eig[k], 0.0) / static_cast<double>(M));
  plan_ = std::make_shared<FftPlan>(M);
}

void IncrementSampler::draw(CounterRng& rng, std::span<double> out) const {
  if (out.size() != n_) throw std::invalid_argument("IncrementSampler::draw: output size mismatch");
  if (report_.method == EmbeddingMethod::Dense)
    draw_dense(rng, out);
  else
    draw_circulant(rng, out);
}

std::vector<double> IncrementSampler::draw(CounterRng& rng) const {
  std::vector<double> out(n_);
  draw(rng, out);
  return out;
}

void IncrementSampler::draw_dense(CounterRng& rng, std::span<double> out) const {
  std::vector<double> z(n_);
  rng.fill_normal(z);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = cholesky_.data() + i * n_;
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * z[j];
    out[i] = acc;
  }
}

void IncrementSampler::draw_circulant(CounterRng& rng, std::span<double> out) const {
  const std::size_t m = half_weights_.size() - 1;
  const std::size_t M = 2 * m;
  std::vector<std::complex<double>> spec(m + 1);
  std::vector<double> real(M);

  // Hermitian weights: real Gaussians at k = 0 and k = m, complex in between,
  // so the inverse transform is real with the circulant covariance.
  spec[0] = {half_weights_[0] * rng.normal(), 0.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 1; k < m; ++k) {
    const double w = half_weights_[k] * inv_sqrt2;
    const double re = rng.normal();
    const double im = rng.normal();
    spec[k] = {w * re, w * im};
  }
  spec[m] = {half_weights_[m] * rng.normal(), 0.0};

  fftw_execute_dft_c2r(plan_->plan, reinterpret_cast<fftw_complex*>(spec.data()), real.data());
  std::copy_n(real.begin(), n_, out.begin());
}

IncrementDraw sample_increments(const VarianceModel& model, double h, std::size_t n,
                                std::uint64_t seed, const SamplerOptions& options) {
  IncrementSampler sampler(model, h, n, options);
  CounterRng rng(seed, 0);
  return {sampler.draw(rng), sampler.report()};
}

PathSampler::PathSampler(const VarianceModel& model, const GridSpec& grid,
                         const SamplerOptions& options)
    : grid_((grid.validate(), grid)), increments_(model, grid.h, grid.n_left + grid.n_right, options) {}

SeedTrace PathSampler::draw_into(std::uint64_t seed, std::uint64_t stream,
                                 std::vector<double>& values, std::vector<double>& scratch) const {
  CounterRng rng(seed, stream);
  scratch.resize(increments_.size());
  increments_.draw(rng, scratch);

  // One stationary stretch of increments covers [-S, T]; scratch[k] is the
  // increment from grid point k to k+1. Sum outward from the anchor.
  const std::size_t a = grid_.anchor();
  values.assign(grid_.size(), 0.0);
  for (std::size_t k = a + 1; k < values.size(); ++k) values[k] = values[k - 1] + scratch[k - 1];
  for (std::size_t k = a; k-- > 0;) values[k] = values[k + 1] - scratch[k];
  return {seed, stream, rng.blocks_used()};
}

PathSample PathSampler::draw(std::uint64_t seed, std::uint64_t stream) const {
  PathSample out{grid_, {}, {}};
  std::vector<double> scratch;
  out.seed_trace = draw_into(seed, stream, out.values, scratch);
  return out;
}

PathSample sample_path(const VarianceModel& model, const GridSpec& grid, std::uint64_t seed,
                       const SamplerOptions& options) {
  return PathSampler(model, grid, options).draw(seed, 0);
}

}  // namespace fluidq
