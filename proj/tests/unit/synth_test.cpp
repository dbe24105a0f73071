#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hurst/error.hpp"
#include "hurst/spectrum.hpp"
#include "hurst/synth.hpp"

namespace hurst {
namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double autocovariance(const std::vector<double>& v, std::size_t lag) {
  const double m = mean(v);
  double s = 0.0;
  for (std::size_t i = 0; i + lag < v.size(); ++i) s += (v[i] - m) * (v[i + lag] - m);
  return s / static_cast<double>(v.size());
}

TEST(Gaussian, MeanWithinClt) {
  const auto r = gen_gaussian(1000, 42);
  EXPECT_EQ(r.size(), 1000u);
  EXPECT_LT(std::abs(mean(r.returns)), 4.0 / std::sqrt(1000.0));
}

TEST(Gaussian, SeedDeterminism) {
  EXPECT_EQ(gen_gaussian(500, 7).returns, gen_gaussian(500, 7).returns);
  EXPECT_NE(gen_gaussian(500, 7).returns, gen_gaussian(500, 8).returns);
  EXPECT_THROW(gen_gaussian(10, 1), Error);
}

TEST(Fgn, HalfIsWhiteNoise) {
  EXPECT_EQ(fgn_autocovariance(0, 0.5), 1.0);
  for (std::size_t k = 1; k < 10; ++k) EXPECT_EQ(fgn_autocovariance(k, 0.5), 0.0);
  const auto r = gen_fgn(4096, 0.5, 3);
  const double rho1 = autocovariance(r.returns, 1) / autocovariance(r.returns, 0);
  EXPECT_LT(std::abs(rho1), 4.0 / std::sqrt(4096.0));
}

TEST(Fgn, RejectsBadParameters) {
  EXPECT_THROW(gen_fgn(1024, 0.0, 1), Error);
  EXPECT_THROW(gen_fgn(1024, 1.0, 1), Error);
  EXPECT_THROW(gen_fgn(100, 0.5, 1), Error);
}

TEST(Fgn, SeedDeterminismAndExactMethod) {
  const auto a = gen_fgn(1000, 0.8, 5);
  EXPECT_EQ(a.returns, gen_fgn(1000, 0.8, 5).returns);
  EXPECT_EQ(a.source_meta.find("APPROXIMATE"), std::string::npos);
  EXPECT_EQ(a.size(), 1000u);
}

// Sample autocovariances averaged over seeds match theory at lags 0..10.
TEST(Fgn, AutocovarianceMatchesTheory) {
  const std::size_t n = 4096;
  for (double h : {0.3, 0.7}) {
    std::vector<double> avg(11, 0.0);
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
      const auto r = gen_fgn(n, h, 1000 + s);
      for (std::size_t k = 0; k <= 10; ++k) avg[k] += autocovariance(r.returns, k) / seeds;
    }
    for (std::size_t k = 0; k <= 10; ++k)
      EXPECT_NEAR(avg[k], fgn_autocovariance(k, h), 5.0 / std::sqrt(double(n)))
          << "H=" << h << " lag " << k;
  }
}

TEST(Cascade, AnalyticHurstValues) {
  EXPECT_NEAR(cascade_hurst(2.0, 0.75), 0.8390359525563189, 1e-14);
  EXPECT_NEAR(cascade_hurst(0.0, 0.75), 1.207518749639422, 1e-14);
  // Continuity across q = 0.
  EXPECT_NEAR(cascade_hurst(1e-7, 0.75), cascade_hurst(0.0, 0.75), 1e-6);
  EXPECT_NEAR(cascade_hurst(-1e-7, 0.75), cascade_hurst(0.0, 0.75), 1e-6);
  // a = 0.51 is nearly monofractal over q in [-10, 10].
  EXPECT_LT(cascade_hurst(-10, 0.51) - cascade_hurst(10, 0.51), 0.01);
}

TEST(Cascade, TotalMassAndNonnegativity) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = gen_binomial_cascade(12, 0.7, seed, 3.5);
    EXPECT_EQ(r.size(), 4096u);
    double total = 0.0;
    for (double v : r.returns) {
      EXPECT_GE(v, 0.0);
      total += v;
    }
    EXPECT_NEAR(total, 3.5, 1e-9 * 3.5);
  }
  const auto def = gen_binomial_cascade(10, 0.6, 1);
  EXPECT_NEAR(std::accumulate(def.returns.begin(), def.returns.end(), 0.0), 1024.0,
              1e-9 * 1024);
}

TEST(Cascade, DeterminismAndBounds) {
  EXPECT_EQ(gen_binomial_cascade(10, 0.75, 3).returns,
            gen_binomial_cascade(10, 0.75, 3).returns);
  EXPECT_THROW(gen_binomial_cascade(10, 0.5, 1), Error);
  EXPECT_THROW(gen_binomial_cascade(10, 1.0, 1), Error);
  EXPECT_THROW(gen_binomial_cascade(5, 0.7, 1), Error);
  EXPECT_THROW(gen_binomial_cascade(25, 0.7, 1), Error);
}

TEST(Generate, StampsTimeGrid) {
  GeneratorSpec spec;
  spec.kind = parse_generator_kind("fgn");
  spec.length = 300;
  spec.hurst = 0.6;
  spec.seed = 9;
  spec.start = Timestamp{Seconds{3600}};
  spec.dt = Seconds{3600};
  const auto r = generate(spec);
  EXPECT_EQ(r.start, Timestamp{Seconds{3600}});
  EXPECT_EQ(r.dt, Seconds{3600});
  EXPECT_EQ(r.returns, gen_fgn(300, 0.6, 9).returns);
  EXPECT_THROW(parse_generator_kind("lognormal"), Error);
}

// Estimator-vs-formula check on the cascade: seed-averaged h(q) within 0.1,
// every seed's delta h within 0.15.
TEST(Cascade, EstimatedSpectrumTracksFormula) {
  MfdfaConfig cfg;
  cfg.q_grid = make_q_grid(-10, 10, 1);
  const int seeds = 10;
  std::vector<double> mean_h(cfg.q_grid.size(), 0.0);
  const double analytic_dh = cascade_hurst(-10, 0.75) - cascade_hurst(10, 0.75);
  for (int seed = 0; seed < seeds; ++seed) {
    const auto spec = analyze(gen_binomial_cascade(16, 0.75, seed).returns, cfg).spectrum;
    for (std::size_t i = 0; i < spec.q_grid.size(); ++i) mean_h[i] += spec.h[i] / seeds;
    EXPECT_NEAR(spec.delta_h, analytic_dh, 0.15) << "seed " << seed;
  }
  for (std::size_t i = 0; i < cfg.q_grid.size(); ++i)
    EXPECT_NEAR(mean_h[i], cascade_hurst(cfg.q_grid[i], 0.75), 0.1) << "q " << cfg.q_grid[i];
}

TEST(Fgn, EstimatedHurstRecovered) {
  MfdfaConfig cfg;
  cfg.q_grid = {2.0};
  for (double h : {0.3, 0.7}) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      sum += analyze(gen_fgn(16384, h, seed).returns, cfg).spectrum.at(2.0);
    EXPECT_NEAR(sum / 20.0, h, 0.05);
  }
}

}  // namespace
}  // namespace hurst
