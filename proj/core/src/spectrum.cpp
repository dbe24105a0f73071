#include "hurst/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hurst/error.hpp"

namespace hurst {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2)
    throw config_error("fit_line: need at least two paired points");
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw config_error("fit_line: abscissae are all equal");

  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += r * r;
  }
  fit.stderr_slope =
      n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
  // A flat response is fitted perfectly by a zero slope.
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return fit;
}

double HurstSpectrum::at(double q) const {
  for (std::size_t i = 0; i < q_grid.size(); ++i)
    if (q_grid[i] == q) return h[i];
  throw config_error(fmt::format("q = {} is not on the spectrum grid", q));
}

HurstSpectrum fit_spectrum(const FluctuationSurface& surface) {
  const std::size_t n_scales = surface.scales.size();
  if (n_scales < kMinScalesForFit)
    throw data_error(fmt::format(
        "spectrum fit needs at least {} scales, got {}", kMinScalesForFit,
        n_scales));
  if (surface.q_grid.empty()) throw config_error("spectrum fit: empty q grid");

  std::vector<double> log_s(n_scales);
  for (std::size_t si = 0; si < n_scales; ++si)
    log_s[si] = std::log(static_cast<double>(surface.scales[si]));

  HurstSpectrum spectrum;
  spectrum.q_grid = surface.q_grid;
  const std::size_t n_q = surface.q_grid.size();
  spectrum.h.resize(n_q);
  spectrum.stderr_h.resize(n_q);
  spectrum.r2.resize(n_q);
  std::vector<double> log_f(n_scales);
  for (std::size_t qi = 0; qi < n_q; ++qi) {
    for (std::size_t si = 0; si < n_scales; ++si) {
      const double f = surface.at(qi, si);
      if (!(f > 0.0) || !std::isfinite(f))
        throw data_error("spectrum fit: fluctuation values must be positive");
      log_f[si] = std::log(f);
    }
    const auto fit = fit_line(log_s, log_f);
    spectrum.h[qi] = fit.slope;
    spectrum.stderr_h[qi] = fit.stderr_slope;
    spectrum.r2[qi] = fit.r2;
  }
  spectrum.scale_range_used = {surface.scales.front(), surface.scales.back()};
  spectrum.delta_h = multifractal_degree(spectrum);
  return spectrum;
}

double multifractal_degree(const HurstSpectrum& spectrum) {
  if (spectrum.q_grid.empty()) throw config_error("empty spectrum");
  const auto [lo, hi] =
      std::minmax_element(spectrum.q_grid.begin(), spectrum.q_grid.end());
  return spectrum.h[static_cast<std::size_t>(lo - spectrum.q_grid.begin())] -
         spectrum.h[static_cast<std::size_t>(hi - spectrum.q_grid.begin())];
}

Persistence classify_persistence(double h2, double band) {
  if (!(band >= 0.0)) throw config_error("efficiency band must be >= 0");
  if (h2 < 0.5 - band) return Persistence::anti_persistent;
  if (h2 > 0.5 + band) return Persistence::persistent;
  return Persistence::consistent_with_efficient;
}

const char* to_string(Persistence p) noexcept {
  switch (p) {
    case Persistence::anti_persistent:
      return "anti-persistent";
    case Persistence::consistent_with_efficient:
      return "consistent-with-efficient";
    case Persistence::persistent:
      return "persistent";
  }
  return "unknown";
}

MfdfaResult analyze(std::span<const double> returns, const MfdfaConfig& config) {
  MfdfaResult result;
  result.surface = compute_surface(returns, config);
  result.spectrum = fit_spectrum(result.surface.surface);
  return result;
}

}  // namespace hurst
