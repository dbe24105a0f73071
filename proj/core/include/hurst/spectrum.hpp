#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurst/mfdfa.hpp"

namespace hurst {

/// Generalized Hurst exponents h(q) fitted from a fluctuation surface.
struct HurstSpectrum {
  std::vector<double> q_grid;
  std::vector<double> h;
  std::vector<double> stderr_h;
  std::vector<double> r2;
  double delta_h = 0.0;
  std::pair<std::size_t, std::size_t> scale_range_used{0, 0};

  /// h at the grid point equal to q; throws a config error if q is absent.
  double at(double q) const;
};

/// Minimum number of scales fit_spectrum accepts.
inline constexpr std::size_t kMinScalesForFit = 5;

/// Slope of ln F_q(s) against ln s for each q, by unweighted OLS over all
/// stored scales.
HurstSpectrum fit_spectrum(const FluctuationSurface& surface);

/// h(q_min) - h(q_max) over the spectrum's own grid.
double multifractal_degree(const HurstSpectrum& spectrum);

enum class Persistence { anti_persistent, consistent_with_efficient, persistent };

inline constexpr double kDefaultEfficiencyBand = 0.05;

Persistence classify_persistence(double h2, double band = kDefaultEfficiencyBand);
const char* to_string(Persistence p) noexcept;

/// Simple OLS of y on x; shared with tests that check a fit by hand.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Full pipeline result for one series.
struct MfdfaResult {
  SurfaceResult surface;
  HurstSpectrum spectrum;
};

MfdfaResult analyze(std::span<const double> returns, const MfdfaConfig& config);

}  // namespace hurst
