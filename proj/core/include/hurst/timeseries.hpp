#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hurst {

using Seconds = std::chrono::seconds;
using Timestamp = std::chrono::sys_seconds;
using Day = std::chrono::sys_days;

/// One raw trade as found in a Bitcoincharts dump.
struct TickRecord {
  Timestamp timestamp;
  double price = 0.0;   // quote currency, > 0
  double amount = 0.0;  // base currency, >= 0

  friend bool operator==(const TickRecord&, const TickRecord&) = default;
};

struct RejectedRow {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct IngestResult {
  std::vector<TickRecord> records;  // stably sorted by timestamp
  std::vector<RejectedRow> rejected;
  std::vector<std::string> warnings;
  std::size_t rows_seen = 0;
};

/// Fraction of rejected rows above which ingestion fails as a whole.
inline constexpr double kMaxRejectedFraction = 0.01;

/// Parses `unix_timestamp,price,amount` rows (no header, LF or CRLF).
/// Throws an io error if the stream is unreadable and a data-quality error
/// when more than 1% of the rows are rejected.
IngestResult ingest_ticks(std::istream& source);

/// Uniformly sampled prices. Sample n sits at `start + n * dt`.
struct PriceSeries {
  Timestamp start;
  Seconds dt{0};
  std::vector<double> prices;
  std::vector<bool> filled;  // per sample: true when produced by the gap policy
  std::size_t n_filled = 0;

  std::size_t size() const noexcept { return prices.size(); }
  Timestamp time_at(std::size_t n) const {
    return start + dt * static_cast<std::int64_t>(n);
  }
};

/// Log-returns on a uniform grid. Return n sits at `start + n * dt`, the
/// time of the later of the two prices it differences.
struct ReturnSeries {
  Timestamp start;
  Seconds dt{0};
  std::vector<double> returns;
  std::vector<bool> filled;  // empty, or per return: later price was gap-filled
  std::string source_meta;

  std::size_t size() const noexcept { return returns.size(); }
  Timestamp time_at(std::size_t n) const {
    return start + dt * static_cast<std::int64_t>(n);
  }
};

enum class FillPolicy {
  carry_forward,  // empty bin repeats the last known price
  reject,         // any empty bin is a data-quality error
};

/// Accepts "carry-forward" and "reject"; anything else is a config error.
FillPolicy parse_fill_policy(const std::string& name);
const char* to_string(FillPolicy policy) noexcept;

struct ResampleOptions {
  Seconds dt{86400};
  FillPolicy fill = FillPolicy::carry_forward;
  /// Grid anchor. Defaults to the first tick's timestamp; when set it must
  /// not be later than the first tick.
  std::optional<Timestamp> origin;
};

/// Bins ticks into [start + n dt, start + (n+1) dt); each bin keeps the
/// price of its last tick.
PriceSeries resample(std::span<const TickRecord> ticks,
                     const ResampleOptions& options);

/// r[n] = ln p[n+1] - ln p[n].
ReturnSeries log_returns(const PriceSeries& prices);

struct DailyAggregate {
  Day day;
  double close = 0.0;
  double volume = 0.0;
  double daily_return = 0.0;  // ln(close / previous close); 0 for the first day
};

/// One aggregate per UTC day that has at least one tick.
std::vector<DailyAggregate> daily_aggregates(std::span<const TickRecord> ticks);

/// Floor of a timestamp to its UTC calendar day.
Day utc_day(Timestamp t);

}  // namespace hurst
