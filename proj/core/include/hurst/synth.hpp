#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hurst/timeseries.hpp"

namespace hurst {

// Synthetic series with known scaling, used as estimator oracles.

enum class GeneratorKind { gaussian_noise, fgn, binomial_cascade };

GeneratorKind parse_generator_kind(const std::string& name);
const char* to_string(GeneratorKind kind) noexcept;

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::gaussian_noise;
  std::size_t length = 0;  // gaussian-noise, fgn
  double hurst = 0.5;      // fgn: H in (0, 1)
  double cascade_a = 0.75; // cascade: a in (0.5, 1)
  int cascade_depth = 0;   // cascade: N = 2^depth
  double cascade_total = 0.0;  // cascade mass; <= 0 means N
  std::uint64_t seed = 0;
  Timestamp start{};
  Seconds dt{86400};
};

/// i.i.d. standard normal returns. Requires n >= 64.
ReturnSeries gen_gaussian(std::size_t n, std::uint64_t seed);

/// Fractional Gaussian noise with unit variance by circulant embedding of
/// the autocovariance. Requires 0 < H < 1 and n >= 256.
ReturnSeries gen_fgn(std::size_t n, double hurst, std::uint64_t seed);

/// Autocovariance of unit-variance fGn at lag k.
double fgn_autocovariance(std::size_t k, double hurst);

/// Binomial multiplicative cascade of length 2^k with per-level seeded
/// orientation flips. Values are nonnegative and sum to `total` (<= 0 means
/// 2^k). Requires 0.5 < a < 1 and 6 <= k <= 24.
ReturnSeries gen_binomial_cascade(int k, double a, std::uint64_t seed,
                                  double total = 0.0);

/// Analytic generalized Hurst exponent of the binomial cascade,
/// 1/q - ln(a^q + (1-a)^q) / (q ln 2), with its limit at q = 0.
double cascade_hurst(double q, double a);

/// Dispatches on spec.kind and stamps spec.start / spec.dt on the result.
ReturnSeries generate(const GeneratorSpec& spec);

}  // namespace hurst
