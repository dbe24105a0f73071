#include "hurst/rolling.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "hurst/error.hpp"
#include "hurst/parallel.hpp"

namespace hurst {
namespace {

struct WindowOutcome {
  bool ok = false;
  double h2 = 0.0;
  double delta_h = 0.0;
  std::string reason;
};

}  // namespace

std::pair<std::size_t, std::size_t> window_in_samples(const RollingConfig& cfg,
                                                      Seconds dt) {
  if (dt <= Seconds{0}) throw config_error("rolling: dt must be positive");
  if (cfg.window <= Seconds{0} || cfg.step <= Seconds{0})
    throw config_error("rolling: window and step must be positive");
  if (cfg.step > cfg.window)
    throw config_error("rolling: step must not exceed window");
  if (cfg.window % dt != Seconds{0} || cfg.step % dt != Seconds{0})
    throw config_error(fmt::format(
        "rolling: window ({}s) and step ({}s) must be multiples of dt ({}s)",
        cfg.window.count(), cfg.step.count(), dt.count()));
  if (!(cfg.min_coverage > 0.0 && cfg.min_coverage <= 1.0))
    throw config_error("rolling: min_coverage must lie in (0, 1]");
  return {static_cast<std::size_t>(cfg.window / dt),
          static_cast<std::size_t>(cfg.step / dt)};
}

RollingTrace rolling_spectrum(const ReturnSeries& returns,
                              const RollingConfig& cfg, const MfdfaConfig& mf) {
  const auto [window, step] = window_in_samples(cfg, returns.dt);
  validate(mf);
  const auto q_grid = mf.q_grid.empty() ? default_q_grid() : mf.q_grid;
  if (std::find(q_grid.begin(), q_grid.end(), 2.0) == q_grid.end())
    throw config_error("rolling: the q grid must contain q = 2");
  if (returns.size() < window)
    throw data_error(fmt::format(
        "rolling: series of {} samples is shorter than one window ({})",
        returns.size(), window));

  std::size_t offset = 0;
  if (cfg.anchor) {
    const Timestamp first_end = returns.start + cfg.window;
    auto phase = (first_end - *cfg.anchor) % cfg.step;
    if (phase < Seconds{0}) phase += cfg.step;
    const Seconds delay = phase == Seconds{0} ? Seconds{0} : cfg.step - phase;
    if (delay % returns.dt != Seconds{0})
      throw config_error("rolling: anchor grid is not reachable on the sample grid");
    offset = static_cast<std::size_t>(delay / returns.dt);
    if (returns.size() < window + offset)
      throw data_error("rolling: no anchored window fits in the series");
  }
  const std::size_t n_windows = (returns.size() - window - offset) / step + 1;
  const bool has_mask = returns.filled.size() == returns.size();

  // Each window runs single-threaded; parallelism is across windows.
  MfdfaConfig per_window = mf;
  per_window.q_grid = q_grid;
  per_window.threads = 1;

  std::vector<WindowOutcome> outcomes(n_windows);
  parallel_for(n_windows, cfg.threads, [&](std::size_t w) {
    const std::size_t first = offset + w * step;
    auto& out = outcomes[w];
    if (has_mask) {
      const auto filled = static_cast<std::size_t>(
          std::count(returns.filled.begin() + static_cast<std::ptrdiff_t>(first),
                     returns.filled.begin() +
                         static_cast<std::ptrdiff_t>(first + window),
                     true));
      const double coverage =
          1.0 - static_cast<double>(filled) / static_cast<double>(window);
      if (coverage < cfg.min_coverage) {
        out.reason = fmt::format("coverage {:.4f} below minimum {}", coverage,
                                 cfg.min_coverage);
        return;
      }
    }
    try {
      const auto result = analyze(
          std::span<const double>(returns.returns).subspan(first, window),
          per_window);
      out.h2 = result.spectrum.at(2.0);
      out.delta_h = result.spectrum.delta_h;
      out.ok = true;
    } catch (const Error& e) {
      out.reason = e.what();
    }
  });

  RollingTrace trace;
  trace.step = cfg.step;
  for (std::size_t w = 0; w < n_windows; ++w) {
    const Timestamp end = returns.time_at(offset + w * step + window);
    if (!outcomes[w].ok) {
      trace.skipped.emplace_back(end, std::move(outcomes[w].reason));
      continue;
    }
    trace.timestamps.push_back(end);
    trace.h2.push_back(outcomes[w].h2);
    trace.delta_h.push_back(outcomes[w].delta_h);
    trace.illiq.emplace_back(std::nullopt);
  }
  return trace;
}

void attach_illiq(RollingTrace& trace, std::span<const DailyAggregate> days,
                  std::size_t window_days) {
  trace.illiq.assign(trace.size(), std::nullopt);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Day last_day = utc_day(trace.timestamps[i] - Seconds{1});
    if (auto point = amihud_illiq(days, last_day, window_days))
      trace.illiq[i] = point->illiq;
  }
}

AlignedTable align_traces(std::span<const RollingTrace> traces) {
  AlignedTable table;
  if (traces.empty()) return table;
  for (const auto& t : traces)
    if (t.step != traces.front().step)
      throw config_error(fmt::format(
          "align: traces have different steps ({}s vs {}s)",
          traces.front().step.count(), t.step.count()));

  // Timestamp -> row index, per trace.
  std::vector<std::map<Timestamp, std::size_t>> index(traces.size());
  std::map<Timestamp, std::size_t> presence;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    for (std::size_t r = 0; r < traces[t].size(); ++r) {
      index[t].emplace(traces[t].timestamps[r], r);
      ++presence[traces[t].timestamps[r]];
    }
  }

  table.columns.resize(traces.size());
  for (std::size_t t = 0; t < traces.size(); ++t)
    table.columns[t].step = traces[t].step;
  for (const auto& [ts, count] : presence) {
    if (count != traces.size()) {
      ++table.dropped_rows;
      continue;
    }
    table.timestamps.push_back(ts);
    for (std::size_t t = 0; t < traces.size(); ++t) {
      const std::size_t r = index[t].at(ts);
      auto& col = table.columns[t];
      col.timestamps.push_back(ts);
      col.h2.push_back(traces[t].h2[r]);
      col.delta_h.push_back(traces[t].delta_h[r]);
      col.illiq.push_back(r < traces[t].illiq.size() ? traces[t].illiq[r]
                                                     : std::nullopt);
    }
  }
  if (table.timestamps.empty())
    table.warnings.emplace_back("align: traces share no timestamps");
  return table;
}

}  // namespace hurst
