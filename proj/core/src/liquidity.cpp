#include "hurst/liquidity.hpp"

#include <algorithm>
#include <cmath>

#include "hurst/error.hpp"

namespace hurst {

std::optional<IlliqPoint> amihud_illiq(std::span<const DailyAggregate> days,
                                       Day window_end, std::size_t window_days) {
  if (window_days == 0) throw config_error("ILLIQ window must be >= 1 day");
  const Day first_day =
      window_end - std::chrono::days(static_cast<long>(window_days) - 1);

  auto begin = std::lower_bound(
      days.begin(), days.end(), first_day,
      [](const DailyAggregate& a, Day d) { return a.day < d; });
  double sum = 0.0;
  std::size_t used = 0;
  for (auto it = begin; it != days.end() && it->day <= window_end; ++it) {
    if (it == days.begin()) continue;
    if (!(it->volume > 0.0) || !(it->close > 0.0)) continue;
    sum += std::abs(it->daily_return) / (it->close * it->volume);
    ++used;
  }
  if (used == 0) return std::nullopt;
  return IlliqPoint{window_end, sum / static_cast<double>(used), used,
                    window_days - used};
}

IlliqSeries rolling_illiq(std::span<const DailyAggregate> days,
                          std::size_t window_days, std::size_t step_days) {
  if (window_days == 0) throw config_error("ILLIQ window must be >= 1 day");
  if (step_days == 0) throw config_error("ILLIQ step must be >= 1 day");
  IlliqSeries out;
  if (days.empty()) return out;
  const Day last = days.back().day;
  for (Day end = days.front().day +
                 std::chrono::days(static_cast<long>(window_days) - 1);
       end <= last; end += std::chrono::days(static_cast<long>(step_days))) {
    if (auto point = amihud_illiq(days, end, window_days))
      out.points.push_back(*point);
    else
      out.skipped.emplace_back(end, "no usable days in window");
  }
  return out;
}

}  // namespace hurst
