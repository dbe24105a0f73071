#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hurst/timeseries.hpp"

namespace hurst {

/// Settings for the fluctuation-function stage.
///
/// An empty `scales` list means "use default_scales(N)" for whatever series
/// length the analysis runs on, which is what rolling windows rely on.
struct MfdfaConfig {
  int poly_order = 3;
  std::vector<std::size_t> scales;
  std::vector<double> q_grid;  // empty means default_q_grid()
  double variance_floor = 1e-30;
  unsigned threads = 1;
};

/// Inclusive q range with the given step; q = 0 is included when it falls on
/// the grid.
std::vector<double> make_q_grid(double q_min, double q_max, double step);
/// -25 to 25 in steps of 0.5.
std::vector<double> default_q_grid();

/// Up to `count` log-spaced integer scales in [s_min, s_max], deduplicated
/// after rounding. Empty when s_max < s_min.
std::vector<std::size_t> log_spaced_scales(std::size_t s_min, std::size_t s_max,
                                           std::size_t count);

/// log_spaced_scales(s_min, floor(n/4), count).
std::vector<std::size_t> default_scales(std::size_t n, std::size_t s_min = 16,
                                        std::size_t count = 20);

/// Checks the invariants that do not depend on the series length. Throws a
/// config error naming the violated rule.
void validate(const MfdfaConfig& config);

/// Cumulative sum of mean-subtracted returns.
struct Profile {
  std::vector<double> values;
  double source_mean = 0.0;

  std::size_t size() const noexcept { return values.size(); }
};

Profile build_profile(std::span<const double> returns);
Profile build_profile(const ReturnSeries& returns);

/// Least-squares polynomial of order m through `segment`, in the local
/// abscissa x_i = (2i - (L-1)) / (L-1) on [-1, 1]. Coefficients are ordered
/// by ascending power.
std::vector<double> fit_local_polynomial(std::span<const double> segment, int m);

/// The abscissa used by fit_local_polynomial for a segment of length L.
std::vector<double> local_abscissa(std::size_t length);

/// Segment values minus the polynomial given by `coefficients`.
std::vector<double> polynomial_residuals(std::span<const double> segment,
                                         std::span<const double> coefficients);

/// Detrended variance per segment at one scale; 2 * floor(N/s) values, the
/// forward segments first and then the ones counted from the end.
struct SegmentVariances {
  std::size_t scale = 0;
  std::vector<double> values;
  std::size_t n_floored = 0;

  std::size_t segments_per_direction() const noexcept {
    return values.size() / 2;
  }
};

/// Throws a config error if N < 2s or s < m + 2.
SegmentVariances segment_variances(const Profile& profile, std::size_t s, int m,
                                   double variance_floor);

/// F_q(s) on the (q, s) grid, stored q-major.
struct FluctuationSurface {
  std::vector<std::size_t> scales;
  std::vector<double> q_grid;
  std::vector<double> values;

  double at(std::size_t qi, std::size_t si) const {
    return values[qi * scales.size() + si];
  }
  double& at(std::size_t qi, std::size_t si) {
    return values[qi * scales.size() + si];
  }
};

/// Generalized mean of order q/2 over the segment variances, raised to 1/q;
/// evaluated in log space. q = 0 uses the logarithmic average.
FluctuationSurface fluctuation(std::span<const SegmentVariances> variances,
                               std::span<const double> q_grid);

/// Scales dropped before or during the analysis.
struct ScaleDiagnostic {
  std::size_t scale = 0;
  std::string reason;
};

struct SurfaceResult {
  FluctuationSurface surface;
  std::vector<SegmentVariances> variances;
  std::vector<ScaleDiagnostic> rejected_scales;
  std::size_t n_floored = 0;
};

/// Runs profile, segmentation, detrending and the fluctuation function.
/// Scales above N/4 are rejected with a diagnostic rather than failing.
SurfaceResult compute_surface(std::span<const double> returns,
                              const MfdfaConfig& config);

/// Variant that starts from an already built profile (used by tests that
/// perturb the profile directly).
SurfaceResult compute_surface(const Profile& profile, const MfdfaConfig& config);

}  // namespace hurst
