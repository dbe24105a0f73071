#include "hurst/synth.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <random>

#include <fftw3.h>
#include <fmt/format.h>

#include "hurst/error.hpp"

namespace hurst {
namespace {

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

// In-place forward DFT.
void forward_dft(FftwBuffer& buf, std::size_t n) {
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), buf.data, buf.data,
                            FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

ReturnSeries unit_grid(std::vector<double> values, std::string meta) {
  ReturnSeries out;
  out.start = Timestamp{};
  out.dt = Seconds{86400};
  out.returns = std::move(values);
  out.source_meta = std::move(meta);
  return out;
}

}  // namespace

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "gaussian-noise" || name == "gaussian")
    return GeneratorKind::gaussian_noise;
  if (name == "fgn") return GeneratorKind::fgn;
  if (name == "binomial-cascade" || name == "cascade")
    return GeneratorKind::binomial_cascade;
  throw config_error(fmt::format(
      "unknown generator kind '{}' (gaussian-noise, fgn, binomial-cascade)",
      name));
}

const char* to_string(GeneratorKind kind) noexcept {
  switch (kind) {
    case GeneratorKind::gaussian_noise:
      return "gaussian-noise";
    case GeneratorKind::fgn:
      return "fgn";
    case GeneratorKind::binomial_cascade:
      return "binomial-cascade";
  }
  return "unknown";
}

ReturnSeries gen_gaussian(std::size_t n, std::uint64_t seed) {
  if (n < 64) throw config_error("gaussian-noise requires n >= 64");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> values(n);
  for (double& v : values) v = normal(rng);
  return unit_grid(std::move(values),
                   fmt::format("gaussian-noise n={} seed={}", n, seed));
}

double fgn_autocovariance(std::size_t k, double hurst) {
  const double two_h = 2.0 * hurst;
  const double kd = static_cast<double>(k);
  return 0.5 * (std::pow(kd + 1.0, two_h) - 2.0 * std::pow(kd, two_h) +
                std::pow(std::abs(kd - 1.0), two_h));
}

ReturnSeries gen_fgn(std::size_t n, double hurst, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0))
    throw config_error(fmt::format("fgn requires 0 < H < 1, got {}", hurst));
  if (n < 256) throw config_error("fgn requires n >= 256");

  // Circulant of size 2m whose first row is gamma(0..m), gamma(m-1..1).
  const std::size_t m = next_pow2(n);
  const std::size_t size = 2 * m;
  FftwBuffer eig(size);
  for (std::size_t j = 0; j <= m; ++j) {
    eig.data[j][0] = fgn_autocovariance(j, hurst);
    eig.data[j][1] = 0.0;
  }
  for (std::size_t j = m + 1; j < size; ++j) {
    eig.data[j][0] = eig.data[size - j][0];
    eig.data[j][1] = 0.0;
  }
  forward_dft(eig, size);

  double largest = 0.0;
  for (std::size_t k = 0; k < size; ++k) largest = std::max(largest, eig.data[k][0]);
  std::size_t clamped = 0;
  std::vector<double> lambda(size);
  for (std::size_t k = 0; k < size; ++k) {
    double value = eig.data[k][0];
    if (value < 0.0) {
      if (value < -1e-10 * largest) ++clamped;
      value = 0.0;
    }
    lambda[k] = value;
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  FftwBuffer w(size);
  const double md = static_cast<double>(m);
  w.data[0][0] = std::sqrt(lambda[0] / (2.0 * md)) * normal(rng);
  w.data[0][1] = 0.0;
  w.data[m][0] = std::sqrt(lambda[m] / (2.0 * md)) * normal(rng);
  w.data[m][1] = 0.0;
  for (std::size_t k = 1; k < m; ++k) {
    const double scale = std::sqrt(lambda[k] / (4.0 * md));
    const double re = scale * normal(rng);
    const double im = scale * normal(rng);
    w.data[k][0] = re;
    w.data[k][1] = im;
    w.data[size - k][0] = re;
    w.data[size - k][1] = -im;
  }
  forward_dft(w, size);

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = w.data[i][0];

  std::string meta = fmt::format("fgn n={} H={} seed={} method=circulant-embedding",
                                 n, hurst, seed);
  if (clamped > 0)
    meta += fmt::format(
        " APPROXIMATE: {} negative embedding eigenvalues clamped to zero",
        clamped);
  return unit_grid(std::move(values), std::move(meta));
}

double cascade_hurst(double q, double a) {
  const double ln2 = std::numbers::ln2;
  if (q == 0.0) return -(std::log(a) + std::log(1.0 - a)) / (2.0 * ln2);
  return 1.0 / q - std::log(std::pow(a, q) + std::pow(1.0 - a, q)) / (q * ln2);
}

ReturnSeries gen_binomial_cascade(int k, double a, std::uint64_t seed,
                                  double total) {
  if (!(a > 0.5 && a < 1.0))
    throw config_error(fmt::format("cascade requires 0.5 < a < 1, got {}", a));
  if (k < 6 || k > 24)
    throw config_error(fmt::format("cascade requires 6 <= k <= 24, got {}", k));

  const std::size_t n = std::size_t{1} << k;
  if (!(total > 0.0)) total = static_cast<double>(n);

  // Bit (k - 1 - level) of the index selects the branch at each level; the
  // seeded mask decides which branch carries weight a.
  std::mt19937_64 rng(seed);
  std::uint64_t flips = 0;
  for (int level = 0; level < k; ++level)
    flips |= (rng() & 1u) << (k - 1 - level);

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t path = static_cast<std::uint64_t>(i) ^ flips;
    double value = total;
    for (int bit = 0; bit < k; ++bit)
      value *= ((path >> bit) & 1u) ? (1.0 - a) : a;
    values[i] = value;
  }
  return unit_grid(std::move(values),
                   fmt::format("binomial-cascade k={} a={} seed={} total={}", k,
                               a, seed, total));
}

ReturnSeries generate(const GeneratorSpec& spec) {
  ReturnSeries out;
  switch (spec.kind) {
    case GeneratorKind::gaussian_noise:
      out = gen_gaussian(spec.length, spec.seed);
      break;
    case GeneratorKind::fgn:
      out = gen_fgn(spec.length, spec.hurst, spec.seed);
      break;
    case GeneratorKind::binomial_cascade:
      out = gen_binomial_cascade(spec.cascade_depth, spec.cascade_a, spec.seed,
                                 spec.cascade_total);
      break;
  }
  if (spec.dt <= Seconds{0}) throw config_error("synth dt must be positive");
  out.start = spec.start;
  out.dt = spec.dt;
  return out;
}

}  // namespace hurst
