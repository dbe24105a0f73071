#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hurst/timeseries.hpp"

namespace hurst {

/// Amihud illiquidity over the days (window_end - window_days, window_end].
struct IlliqPoint {
  Day window_end;
  double illiq = 0.0;  // (quote currency)^-1
  std::size_t days_used = 0;
  std::size_t days_skipped = 0;
};

/// Mean of |R_t| / (p_t V_t) over usable days in the window. A day is usable
/// when it has an aggregate, V_t > 0, p_t > 0, and is not the first
/// aggregate of the sequence (whose return is a placeholder). Returns
/// nullopt when no day in the window is usable.
std::optional<IlliqPoint> amihud_illiq(std::span<const DailyAggregate> days,
                                       Day window_end, std::size_t window_days);

struct IlliqSeries {
  std::vector<IlliqPoint> points;
  std::vector<std::pair<Day, std::string>> skipped;
};

/// Evaluates amihud_illiq for window ends from the first day + window_days - 1
/// to the last aggregate day, stepping by step_days.
IlliqSeries rolling_illiq(std::span<const DailyAggregate> days,
                          std::size_t window_days, std::size_t step_days = 1);

}  // namespace hurst
