#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurst/liquidity.hpp"
#include "hurst/mfdfa.hpp"
#include "hurst/spectrum.hpp"
#include "hurst/timeseries.hpp"

namespace hurst {

struct RollingConfig {
  Seconds window = std::chrono::days(365);
  Seconds step = std::chrono::days(1);
  double min_coverage = 0.9;  // fraction of non-gap-filled samples per window
  unsigned threads = 1;
  /// When set, window ends fall on anchor + k * step (the first end is the
  /// earliest such time at or after start + window) so traces sampled at
  /// different dt share timestamps. Unset: the first end is start + window.
  std::optional<Timestamp> anchor;
};

/// Window length and step in samples; throws a config error when they are
/// not whole multiples of dt or violate step <= window.
std::pair<std::size_t, std::size_t> window_in_samples(const RollingConfig& cfg,
                                                      Seconds dt);

/// Per-window estimates labelled by window end. A window ending at t covers
/// samples timed in [t - window, t).
struct RollingTrace {
  Seconds step{0};
  std::vector<Timestamp> timestamps;
  std::vector<double> h2;
  std::vector<double> delta_h;
  std::vector<std::optional<double>> illiq;
  std::vector<std::pair<Timestamp, std::string>> skipped;

  std::size_t size() const noexcept { return timestamps.size(); }
};

/// Runs the full MF-DFA pipeline in every window. The MF-DFA q grid must
/// contain 2. Skipped windows are recorded with a reason and left out of
/// the value sequences.
RollingTrace rolling_spectrum(const ReturnSeries& returns,
                              const RollingConfig& cfg, const MfdfaConfig& mf);

/// Fills trace.illiq with Amihud ILLIQ over the `window_days` UTC days that
/// end just before each window end.
void attach_illiq(RollingTrace& trace, std::span<const DailyAggregate> days,
                  std::size_t window_days);

/// Inner join of several traces on their timestamps.
struct AlignedTable {
  std::vector<Timestamp> timestamps;
  /// columns[i] holds the rows of traces[i], in timestamp order.
  std::vector<RollingTrace> columns;
  std::size_t dropped_rows = 0;
  std::vector<std::string> warnings;
};

AlignedTable align_traces(std::span<const RollingTrace> traces);

}  // namespace hurst
