#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fluidq/gaussian_path.hpp"
#include "fluidq/rng.hpp"
#include "test_models.hpp"

using namespace fluidq;
using Catch::Approx;

namespace {

// Mean of x_i y_i with its standard error (zero-mean processes).
struct ProductMoment {
  double mean;
  double se;
};

ProductMoment product_moment(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double p = x[i] * y[i];
    s += p;
    s2 += p * p;
  }
  const double mean = s / n;
  return {mean, std::sqrt((s2 / n - mean * mean) / (n - 1.0))};
}

}  // namespace

TEST_CASE("embedding_spectrum examples", "[path]") {
  std::vector<double> white(9, 0.0);
  white[0] = 1.0;
  for (double v : embedding_spectrum(white)) REQUIRE(v == Approx(1.0).margin(1e-14));

  const auto bm = increment_autocovariances(VarianceModel::fbm(0.5), 0.37, 32);
  const auto eig = embedding_spectrum(bm);
  REQUIRE(eig.size() == 64);
  for (double v : eig) REQUIRE(v == Approx(0.37).margin(1e-13));

  const auto f = embedding_spectrum(increment_autocovariances(VarianceModel::fbm(0.7), 1.0, 64));
  REQUIRE(*std::min_element(f.begin(), f.end()) >= 0.0);

  REQUIRE_THROWS(embedding_spectrum(std::vector<double>{1.0}));
}

TEST_CASE("Brownian increments are iid with variance h", "[path]") {
  const auto d = sample_increments(VarianceModel::fbm(0.5), 0.01, 1000, 3);
  REQUIRE(d.report.method == EmbeddingMethod::Circulant);
  REQUIRE(d.report.truncated_mass == 0.0);
  double s2 = 0.0;
  for (double v : d.increments) s2 += v * v;
  const double var = s2 / 1000.0;
  // SE of the variance of n normals: sigma^2 sqrt(2/n).
  REQUIRE(std::abs(var - 0.01) < 3.0 * 0.01 * std::sqrt(2.0 / 1000.0));
}

TEST_CASE("single increment has variance sigma2(h)", "[path]") {
  for (const auto& m : testing::builtin_models()) {
    const double h = 0.3;
    IncrementSampler sampler(m, h, 1);
    const std::size_t N = 20000;
    double s2 = 0.0;
    for (std::uint32_t r = 0; r < N; ++r) {
      CounterRng rng(11, derive_stream(0, r));
      const double v = sampler.draw(rng)[0];
      s2 += v * v;
    }
    INFO(m.describe());
    REQUIRE(std::abs(s2 / N - m.sigma2(h)) < 4.0 * m.sigma2(h) * std::sqrt(2.0 / N));
  }
}

TEST_CASE("fGn lag-1 autocorrelation", "[path]") {
  const auto m = VarianceModel::fbm(0.7);
  IncrementSampler sampler(m, 0.1, 4096);
  const double target = std::pow(2.0, 0.4) - 1.0;
  const auto g = increment_autocovariances(m, 0.1, 1);
  REQUIRE(g[1] / g[0] == Approx(target).epsilon(1e-12));

  const std::size_t batches = 40;
  std::vector<double> est;
  for (std::uint32_t b = 0; b < batches; ++b) {
    CounterRng rng(5, derive_stream(0, b));
    const auto x = sampler.draw(rng);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) num += x[i] * x[i + 1];
    for (double v : x) den += v * v;
    est.push_back(num / den);
  }
  const double mean = std::accumulate(est.begin(), est.end(), 0.0) / batches;
  double ss = 0.0;
  for (double e : est) ss += (e - mean) * (e - mean);
  const double se = std::sqrt(ss / (batches - 1) / batches);
  INFO("mean " << mean << " se " << se);
  REQUIRE(std::abs(mean - target) < 3.0 * se);
}

TEST_CASE("sample_path small grid", "[path]") {
  const auto m = VarianceModel::power_sum(0.4, 0.7);
  const GridSpec grid{0.5, 0, 1};
  const auto p = sample_path(m, grid, 17);
  REQUIRE(p.values.size() == 2);
  REQUIRE(p.values[0] == 0.0);
  REQUIRE(p.seed_trace.seed == 17);
  REQUIRE_THROWS(GridSpec{0.0, 1, 1}.validate());
  REQUIRE_THROWS(GridSpec{1.0, 0, 0}.validate());
  REQUIRE_THROWS(PathSample::from_values(GridSpec{1.0, 1, 1}, {0.0, 1.0, 0.0}));
  REQUIRE_THROWS(PathSample::from_values(GridSpec{1.0, 1, 1}, {1.0, 0.0}));
}

TEST_CASE("empirical covariance matches the model", "[path][property]") {
  const std::size_t N = 5000;
  // Dense (16 steps) and circulant (600 steps) grids.
  const std::vector<GridSpec> grids{GridSpec{0.25, 8, 8}, GridSpec{0.01, 300, 300}};
  const std::vector<double> times{-2.0, -0.5, 1.0, 2.0};
  for (const auto& m : testing::builtin_models()) {
    for (const auto& grid : grids) {
      PathSampler sampler(m, grid);
      std::vector<std::vector<double>> at(times.size(), std::vector<double>(N));
      std::vector<std::size_t> idx;
      for (double t : times) idx.push_back(static_cast<std::size_t>(static_cast<long>(grid.anchor()) + std::lround(t / grid.h)));
      for (std::size_t i = 0; i < times.size(); ++i) REQUIRE(grid.time(idx[i]) == Approx(times[i]));
      std::vector<double> values, scratch;
      for (std::uint32_t r = 0; r < N; ++r) {
        sampler.draw_into(2024, derive_stream(1, r), values, scratch);
        REQUIRE(values[grid.anchor()] == 0.0);
        for (std::size_t i = 0; i < times.size(); ++i) at[i][r] = values[idx[i]];
      }
      for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t j = i; j < times.size(); ++j) {
          const auto pm = product_moment(at[i], at[j]);
          const double expected = covariance(m, times[i], times[j]);
          INFO(m.describe() << " method=" << to_string(sampler.report().method) << " (" << times[i] << ","
                            << times[j] << ") mc=" << pm.mean << " se=" << pm.se);
          REQUIRE(std::abs(pm.mean - expected) <= 4.0 * pm.se);
        }
      }
    }
  }
}

TEST_CASE("PowerSum Cov(X(1), X(2)) by Monte Carlo", "[path]") {
  const auto m = VarianceModel::power_sum(0.4, 0.7);
  PathSampler sampler(m, GridSpec{1.0, 0, 2});
  const std::size_t N = 5000;
  std::vector<double> x1(N), x2(N);
  for (std::uint32_t r = 0; r < N; ++r) {
    const auto p = sampler.draw(77, derive_stream(0, r));
    x1[r] = p.values[1];
    x2[r] = p.values[2];
  }
  const auto pm = product_moment(x1, x2);
  REQUIRE(std::abs(pm.mean - 2.1900584740690183) <= 3.0 * pm.se);
}

TEST_CASE("determinism and anchoring", "[path][property]") {
  for (const auto& m : testing::builtin_models()) {
    for (const GridSpec grid : {GridSpec{0.1, 5, 7}, GridSpec{0.001, 400, 700}}) {
      const auto a = sample_path(m, grid, 99);
      const auto b = sample_path(m, grid, 99);
      const auto c = sample_path(m, grid, 100);
      REQUIRE(a.values == b.values);
      REQUIRE(a.values != c.values);
      REQUIRE(a.values[grid.anchor()] == 0.0);
      REQUIRE(a.values.size() == grid.size());
      REQUIRE(a.seed_trace.blocks_used == b.seed_trace.blocks_used);
    }
  }
}

TEST_CASE("path increments are the sampled stationary stretch in order", "[path]") {
  const auto m = VarianceModel::power_ratio(0.7, 0.4);
  const GridSpec grid{0.05, 6, 9};
  PathSampler sampler(m, grid);
  const auto p = sampler.draw(3, 4);
  IncrementSampler inc(m, grid.h, grid.n_left + grid.n_right);
  CounterRng rng(3, 4);
  const auto x = inc.draw(rng);
  for (std::size_t k = 0; k + 1 < p.values.size(); ++k)
    REQUIRE(p.values[k + 1] - p.values[k] == Approx(x[k]).margin(1e-12));
}

TEST_CASE("exactness gate for fBm embeddings", "[path]") {
  for (double H : {0.3, 0.5, 0.7, 0.9}) {
    for (std::size_t n : {1024u, 8192u, 32768u}) {
      for (double h : {1e-3, 1.0, 100.0}) {
        IncrementSampler s(VarianceModel::fbm(H), h, n);
        INFO("H=" << H << " n=" << n << " h=" << h);
        REQUIRE(s.report().method == EmbeddingMethod::Circulant);
        REQUIRE(s.report().embedding_size <= 65536);
        REQUIRE(s.report().truncated_mass == 0.0);
      }
    }
  }
}

TEST_CASE("dense and circulant samplers agree in law", "[path][property]") {
  const std::size_t N = 5000, n = 48;
  SamplerOptions circ;
  circ.dense_threshold = 0;
  for (const auto& m : testing::builtin_models()) {
    IncrementSampler dense(m, 0.2, n), fft(m, 0.2, n, circ);
    REQUIRE(dense.report().method == EmbeddingMethod::Dense);
    REQUIRE(fft.report().method == EmbeddingMethod::Circulant);
    std::vector<std::vector<double>> a(3, std::vector<double>(N)), b(3, std::vector<double>(N));
    const std::size_t cols[3] = {0, 1, n - 1};
    for (std::uint32_t r = 0; r < N; ++r) {
      CounterRng ra(8, derive_stream(0, r)), rb(8, derive_stream(1, r));
      const auto xa = dense.draw(ra), xb = fft.draw(rb);
      for (int c = 0; c < 3; ++c) {
        a[c][r] = xa[cols[c]];
        b[c][r] = xb[cols[c]];
      }
    }
    for (int i = 0; i < 3; ++i) {
      const std::vector<double> ones(N, 1.0);
      const auto ma = product_moment(a[i], ones), mb = product_moment(b[i], ones);
      REQUIRE(std::abs(ma.mean - mb.mean) <= 4.0 * std::hypot(ma.se, mb.se));
      for (int j = i; j < 3; ++j) {
        const auto pa = product_moment(a[i], a[j]), pb = product_moment(b[i], b[j]);
        INFO(m.describe() << " (" << i << "," << j << ")");
        REQUIRE(std::abs(pa.mean - pb.mean) <= 4.0 * std::hypot(pa.se, pb.se));
      }
    }
  }
}
