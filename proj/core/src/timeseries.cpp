#include "hurst/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

#include <fmt/format.h>

#include "hurst/error.hpp"

namespace hurst {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Returns an empty string on success, otherwise the rejection reason.
std::string parse_tick(std::string_view line, TickRecord& tick) {
  std::string_view fields[3];
  std::size_t count = 0;
  while (count < 3) {
    auto comma = line.find(',');
    fields[count++] = line.substr(0, comma);
    if (comma == std::string_view::npos) {
      line = {};
      break;
    }
    line.remove_prefix(comma + 1);
  }
  if (count != 3 || !trim(line).empty()) return "expected 3 columns";

  std::int64_t ts = 0;
  if (!parse_number(fields[0], ts)) {
    // Some dumps write the timestamp with a fractional part.
    double fractional = 0.0;
    if (!parse_number(fields[0], fractional) || !std::isfinite(fractional))
      return "unparseable timestamp";
    ts = static_cast<std::int64_t>(std::floor(fractional));
  }
  double price = 0.0;
  double amount = 0.0;
  if (!parse_number(fields[1], price) || !std::isfinite(price))
    return "unparseable price";
  if (!parse_number(fields[2], amount) || !std::isfinite(amount))
    return "unparseable amount";
  if (price <= 0.0) return "non-positive price";
  if (amount < 0.0) return "negative amount";

  tick = TickRecord{Timestamp{Seconds{ts}}, price, amount};
  return {};
}

}  // namespace

IngestResult ingest_ticks(std::istream& source) {
  if (!source.good()) throw io_error("tick source is not readable");

  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty()) continue;
    ++result.rows_seen;
    TickRecord tick;
    if (auto reason = parse_tick(view, tick); reason.empty()) {
      result.records.push_back(tick);
    } else {
      result.rejected.push_back({line_no, std::move(reason)});
    }
  }
  if (source.bad()) throw io_error("read failure while ingesting ticks");

  if (result.rows_seen == 0) {
    result.warnings.emplace_back("tick source is empty");
    return result;
  }
  const double rejected_fraction =
      static_cast<double>(result.rejected.size()) /
      static_cast<double>(result.rows_seen);
  if (rejected_fraction > kMaxRejectedFraction) {
    const auto& first = result.rejected.front();
    throw data_error(fmt::format(
        "{} of {} tick rows rejected (limit 1%); first at line {}: {}",
        result.rejected.size(), result.rows_seen, first.line, first.reason));
  }
  for (const auto& row : result.rejected)
    result.warnings.push_back(
        fmt::format("line {} rejected: {}", row.line, row.reason));

  std::stable_sort(result.records.begin(), result.records.end(),
                   [](const TickRecord& a, const TickRecord& b) {
                     return a.timestamp < b.timestamp;
                   });
  return result;
}

FillPolicy parse_fill_policy(const std::string& name) {
  if (name == "carry-forward") return FillPolicy::carry_forward;
  if (name == "reject") return FillPolicy::reject;
  throw config_error(fmt::format(
      "unsupported fill policy '{}' (expected carry-forward or reject)", name));
}

const char* to_string(FillPolicy policy) noexcept {
  switch (policy) {
    case FillPolicy::carry_forward:
      return "carry-forward";
    case FillPolicy::reject:
      return "reject";
  }
  return "unknown";
}

PriceSeries resample(std::span<const TickRecord> ticks,
                     const ResampleOptions& options) {
  if (options.dt <= Seconds{0})
    throw config_error("resample: dt must be positive");
  if (ticks.empty()) throw data_error("resample: no ticks, all bins empty");
  if (!std::is_sorted(ticks.begin(), ticks.end(),
                      [](const TickRecord& a, const TickRecord& b) {
                        return a.timestamp < b.timestamp;
                      }))
    throw config_error("resample: ticks must be sorted by timestamp");

  const Timestamp origin = options.origin.value_or(ticks.front().timestamp);
  if (origin > ticks.front().timestamp)
    throw config_error("resample: origin is later than the first tick");

  const auto dt = options.dt.count();
  auto bin_of = [&](Timestamp t) {
    return static_cast<std::size_t>((t - origin).count() / dt);
  };
  const std::size_t n_bins = bin_of(ticks.back().timestamp) + 1;

  PriceSeries out;
  out.start = origin;
  out.dt = options.dt;
  out.prices.assign(n_bins, 0.0);
  out.filled.assign(n_bins, false);

  std::vector<bool> seen(n_bins, false);
  for (const auto& tick : ticks) {
    const auto bin = bin_of(tick.timestamp);
    out.prices[bin] = tick.price;
    seen[bin] = true;
  }
  // The first bin always holds the first tick; only later bins can be empty.
  for (std::size_t n = 1; n < n_bins; ++n) {
    if (seen[n]) continue;
    if (options.fill == FillPolicy::reject)
      throw data_error(fmt::format(
          "resample: bin {} is empty and the fill policy is reject", n));
    out.prices[n] = out.prices[n - 1];
    out.filled[n] = true;
    ++out.n_filled;
  }
  return out;
}

ReturnSeries log_returns(const PriceSeries& prices) {
  if (prices.size() < 2)
    throw data_error("log_returns: need at least 2 prices");
  for (double p : prices.prices)
    if (!(p > 0.0)) throw data_error("log_returns: non-positive price");

  ReturnSeries out;
  out.start = prices.time_at(1);
  out.dt = prices.dt;
  out.returns.resize(prices.size() - 1);
  for (std::size_t n = 0; n + 1 < prices.size(); ++n)
    out.returns[n] = std::log(prices.prices[n + 1]) - std::log(prices.prices[n]);
  if (prices.filled.size() == prices.size())
    out.filled.assign(prices.filled.begin() + 1, prices.filled.end());
  out.source_meta = fmt::format("log_returns dt={}s n_filled={}",
                                prices.dt.count(), prices.n_filled);
  return out;
}

Day utc_day(Timestamp t) { return std::chrono::floor<std::chrono::days>(t); }

std::vector<DailyAggregate> daily_aggregates(std::span<const TickRecord> ticks) {
  std::vector<DailyAggregate> days;
  for (const auto& tick : ticks) {
    const Day day = utc_day(tick.timestamp);
    if (days.empty() || days.back().day != day) {
      if (!days.empty() && day < days.back().day)
        throw config_error("daily_aggregates: ticks must be sorted");
      days.push_back({day, tick.price, 0.0, 0.0});
    }
    days.back().close = tick.price;
    days.back().volume += tick.amount;
  }
  for (std::size_t i = 1; i < days.size(); ++i)
    days[i].daily_return = std::log(days[i].close / days[i - 1].close);
  return days;
}

}  // namespace hurst
