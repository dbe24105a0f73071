#include "hurst/mfdfa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "hurst/error.hpp"
#include "hurst/parallel.hpp"

namespace hurst {
namespace {

Eigen::MatrixXd vandermonde(std::size_t length, int m) {
  const auto x = local_abscissa(length);
  Eigen::MatrixXd v(static_cast<Eigen::Index>(length), m + 1);
  for (std::size_t i = 0; i < length; ++i) {
    double power = 1.0;
    for (int k = 0; k <= m; ++k) {
      v(static_cast<Eigen::Index>(i), k) = power;
      power *= x[i];
    }
  }
  return v;
}

// Orthonormal basis of the polynomials of order <= m on the segment grid.
Eigen::MatrixXd orthonormal_basis(std::size_t length, int m) {
  const Eigen::MatrixXd v = vandermonde(length, m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  return qr.householderQ() * Eigen::MatrixXd::Identity(v.rows(), v.cols());
}

// Mean squared residual of y after projecting out the basis columns.
// Results indistinguishable from rounding noise are reported as exact zero.
double detrended_variance(const Eigen::MatrixXd& basis,
                          Eigen::Map<const Eigen::VectorXd> y) {
  // Shifting by the first sample is exact for slowly varying segments and
  // the basis absorbs constants, so rounding now scales with the local range
  // rather than with |y|. The second projection removes what leaked back.
  Eigen::VectorXd residual = y.array() - y[0];
  residual -= basis * (basis.transpose() * residual);
  residual -= basis * (basis.transpose() * residual);
  const double n = static_cast<double>(y.size());
  const double variance = residual.squaredNorm() / n;
  const double noise = 16.0 * std::numeric_limits<double>::epsilon();
  if (variance <= noise * noise * (y.squaredNorm() / n)) return 0.0;
  return variance;
}

}  // namespace

std::vector<double> make_q_grid(double q_min, double q_max, double step) {
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !std::isfinite(step))
    throw config_error("q grid bounds and step must be finite");
  if (!(step > 0.0)) throw config_error("q grid step must be positive");
  if (q_max < q_min) throw config_error("q_max must not be below q_min");
  const auto count =
      static_cast<std::size_t>(std::floor((q_max - q_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    double q = q_min + static_cast<double>(i) * step;
    // Snap values that should be exactly zero (or integral) onto the lattice.
    const double rounded = std::round(q / step) * step;
    if (std::abs(q - rounded) < 1e-9 * step) q = rounded;
    grid[i] = q == 0.0 ? 0.0 : q;
  }
  return grid;
}

std::vector<double> default_q_grid() { return make_q_grid(-25.0, 25.0, 0.5); }

std::vector<std::size_t> default_scales(std::size_t n, std::size_t s_min,
                                        std::size_t count) {
  return log_spaced_scales(s_min, n / 4, count);
}

std::vector<std::size_t> log_spaced_scales(std::size_t s_min, std::size_t s_max,
                                           std::size_t count) {
  std::vector<std::size_t> scales;
  if (s_max < s_min || count == 0) return scales;
  if (count == 1 || s_max == s_min) return {s_min};
  const double ratio =
      std::log(static_cast<double>(s_max) / static_cast<double>(s_min));
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(s_min) *
                     std::exp(ratio * static_cast<double>(k) /
                              static_cast<double>(count - 1));
    const auto rounded = static_cast<std::size_t>(std::llround(s));
    const auto clamped = std::clamp(rounded, s_min, s_max);
    if (scales.empty() || clamped > scales.back()) scales.push_back(clamped);
  }
  return scales;
}

void validate(const MfdfaConfig& config) {
  if (config.poly_order < 1)
    throw config_error("poly_order must be >= 1");
  if (!(config.variance_floor > 0.0) || !std::isfinite(config.variance_floor))
    throw config_error("variance_floor must be a positive finite number");
  if (config.threads < 1) throw config_error("threads must be >= 1");
  for (std::size_t i = 1; i < config.scales.size(); ++i)
    if (config.scales[i] <= config.scales[i - 1])
      throw config_error("scales must be strictly increasing");
  if (!config.scales.empty() &&
      config.scales.front() < static_cast<std::size_t>(config.poly_order) + 2)
    throw config_error(fmt::format(
        "min(scales) = {} violates min(scales) >= poly_order + 2 = {}",
        config.scales.front(), config.poly_order + 2));
  for (double q : config.q_grid)
    if (!std::isfinite(q)) throw config_error("q_grid values must be finite");
}

Profile build_profile(std::span<const double> returns) {
  if (returns.size() < 2)
    throw data_error("build_profile: need at least 2 returns");
  Profile profile;
  const double n = static_cast<double>(returns.size());
  profile.source_mean = std::accumulate(returns.begin(), returns.end(), 0.0) / n;
  profile.values.resize(returns.size());
  double running = 0.0;
  for (std::size_t i = 0; i < returns.size(); ++i) {
    running += returns[i] - profile.source_mean;
    profile.values[i] = running;
  }
  return profile;
}

Profile build_profile(const ReturnSeries& returns) {
  return build_profile(std::span<const double>(returns.returns));
}

std::vector<double> local_abscissa(std::size_t length) {
  std::vector<double> x(length, 0.0);
  if (length < 2) return x;
  const double half = static_cast<double>(length - 1) / 2.0;
  for (std::size_t i = 0; i < length; ++i)
    x[i] = (static_cast<double>(i) - half) / half;
  return x;
}

std::vector<double> fit_local_polynomial(std::span<const double> segment,
                                         int m) {
  if (m < 0) throw config_error("polynomial order must be >= 0");
  if (segment.size() < static_cast<std::size_t>(m) + 1)
    throw config_error(fmt::format(
        "segment of length {} cannot determine an order-{} polynomial",
        segment.size(), m));
  const Eigen::MatrixXd v = vandermonde(segment.size(), m);
  Eigen::Map<const Eigen::VectorXd> y(segment.data(),
                                      static_cast<Eigen::Index>(segment.size()));
  const Eigen::VectorXd c = v.colPivHouseholderQr().solve(y);
  return {c.data(), c.data() + c.size()};
}

std::vector<double> polynomial_residuals(std::span<const double> segment,
                                         std::span<const double> coefficients) {
  const auto x = local_abscissa(segment.size());
  std::vector<double> out(segment.size());
  for (std::size_t i = 0; i < segment.size(); ++i) {
    double value = 0.0;
    for (auto k = coefficients.size(); k-- > 0;) value = value * x[i] + coefficients[k];
    out[i] = segment[i] - value;
  }
  return out;
}

SegmentVariances segment_variances(const Profile& profile, std::size_t s, int m,
                                   double variance_floor) {
  const std::size_t n = profile.size();
  if (m < 0) throw config_error("polynomial order must be >= 0");
  if (s < static_cast<std::size_t>(m) + 2)
    throw config_error(fmt::format(
        "scale {} is too short for an order-{} fit (need >= {})", s, m, m + 2));
  if (n < 2 * s)
    throw config_error(fmt::format(
        "scale {} rejected: series length {} is below 2s", s, n));

  const std::size_t per_direction = n / s;
  const Eigen::MatrixXd basis = orthonormal_basis(s, m);
  const auto len = static_cast<Eigen::Index>(s);

  SegmentVariances out;
  out.scale = s;
  out.values.resize(2 * per_direction);
  for (std::size_t v = 0; v < per_direction; ++v) {
    Eigen::Map<const Eigen::VectorXd> forward(profile.values.data() + v * s, len);
    out.values[v] = detrended_variance(basis, forward);
    Eigen::Map<const Eigen::VectorXd> backward(
        profile.values.data() + (n - (v + 1) * s), len);
    out.values[per_direction + v] = detrended_variance(basis, backward);
  }
  for (double& value : out.values) {
    if (value < variance_floor) {
      value = variance_floor;
      ++out.n_floored;
    }
  }
  return out;
}

FluctuationSurface fluctuation(std::span<const SegmentVariances> variances,
                               std::span<const double> q_grid) {
  FluctuationSurface surface;
  surface.q_grid.assign(q_grid.begin(), q_grid.end());
  surface.scales.reserve(variances.size());
  for (const auto& sv : variances) surface.scales.push_back(sv.scale);
  surface.values.assign(q_grid.size() * variances.size(), 0.0);

  std::vector<double> log_f2;
  std::vector<double> weighted;
  for (std::size_t si = 0; si < variances.size(); ++si) {
    const auto& sv = variances[si];
    if (sv.values.empty())
      throw data_error(fmt::format("scale {} has no segments", sv.scale));
    log_f2.resize(sv.values.size());
    for (std::size_t v = 0; v < sv.values.size(); ++v) {
      const double f2 = sv.values[v];
      if (!(f2 > 0.0) || !std::isfinite(f2))
        throw data_error(fmt::format(
            "scale {}: segment variance {} is not positive and finite", sv.scale,
            f2));
      log_f2[v] = std::log(f2);
    }
    const double count = static_cast<double>(log_f2.size());

    for (std::size_t qi = 0; qi < q_grid.size(); ++qi) {
      const double q = q_grid[qi];
      double log_fq = 0.0;
      if (q == 0.0) {
        log_fq = std::accumulate(log_f2.begin(), log_f2.end(), 0.0) / (2.0 * count);
      } else {
        weighted.resize(log_f2.size());
        for (std::size_t v = 0; v < log_f2.size(); ++v)
          weighted[v] = 0.5 * q * log_f2[v];
        const double shift = *std::max_element(weighted.begin(), weighted.end());
        double sum = 0.0;
        for (double w : weighted) sum += std::exp(w - shift);
        log_fq = (shift + std::log(sum / count)) / q;
      }
      surface.at(qi, si) = std::exp(log_fq);
    }
  }
  return surface;
}

SurfaceResult compute_surface(std::span<const double> returns,
                              const MfdfaConfig& config) {
  return compute_surface(build_profile(returns), config);
}

SurfaceResult compute_surface(const Profile& profile, const MfdfaConfig& config) {
  validate(config);
  const std::size_t n = profile.size();
  const auto requested =
      config.scales.empty() ? default_scales(n) : config.scales;
  const auto q_grid = config.q_grid.empty() ? default_q_grid() : config.q_grid;

  SurfaceResult result;
  std::vector<std::size_t> usable;
  for (std::size_t s : requested) {
    if (4 * s > n)
      result.rejected_scales.push_back(
          {s, fmt::format("scale exceeds N/4 = {}", n / 4)});
    else
      usable.push_back(s);
  }
  if (usable.empty() && config.scales.empty())
    result.rejected_scales.push_back(
        {0, fmt::format("series length {} admits no default scales", n)});

  std::vector<SegmentVariances> per_scale(usable.size());
  parallel_for(usable.size(), config.threads, [&](std::size_t i) {
    per_scale[i] = segment_variances(profile, usable[i], config.poly_order,
                                     config.variance_floor);
  });
  for (const auto& sv : per_scale) result.n_floored += sv.n_floored;

  result.surface = fluctuation(per_scale, q_grid);
  result.variances = std::move(per_scale);
  return result;
}

}  // namespace hurst
