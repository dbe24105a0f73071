#include "hurst/io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>

#include <fmt/format.h>

#include "hurst/error.hpp"

namespace hurst {
namespace {

using namespace std::chrono;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

std::string_view strip_cr(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw data_error(
        fmt::format("line {}: '{}' is not a number", line, std::string(text)));
  return value;
}

// Reads a headed CSV whose header must equal `header`.
std::vector<std::pair<std::size_t, std::string>> read_body(
    std::istream& in, std::string_view header) {
  if (!in.good()) throw io_error("CSV source is not readable");
  std::string line;
  if (!std::getline(in, line))
    throw data_error(fmt::format("empty CSV; expected header '{}'", header));
  if (strip_cr(line) != header)
    throw data_error(fmt::format("unexpected CSV header '{}'; expected '{}'",
                                 std::string(strip_cr(line)), header));
  std::vector<std::pair<std::size_t, std::string>> body;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip_cr(line).empty()) continue;
    body.emplace_back(line_no, std::string(strip_cr(line)));
  }
  if (in.bad()) throw io_error("read failure in CSV source");
  return body;
}

template <typename Series>
Series read_uniform(std::istream& in, Seconds fallback_dt,
                    std::vector<double> Series::*values) {
  const auto body = read_body(in, "timestamp,value");
  if (body.empty()) throw data_error("series CSV has no rows");
  Series out;
  out.dt = fallback_dt;
  std::optional<Timestamp> previous;
  for (const auto& [line_no, text] : body) {
    const auto fields = split(text);
    if (fields.size() != 2)
      throw data_error(fmt::format("line {}: expected 2 columns", line_no));
    const Timestamp t = parse_rfc3339(fields[0]);
    if (!previous) {
      out.start = t;
    } else {
      const Seconds gap = t - *previous;
      if (previous == out.start && (out.*values).size() == 1) out.dt = gap;
      if (gap <= Seconds{0} || gap != out.dt)
        throw data_error(fmt::format(
            "line {}: samples are not uniformly spaced ({}s after {}s)", line_no,
            gap.count(), out.dt.count()));
    }
    previous = t;
    (out.*values).push_back(parse_double(fields[1], line_no));
  }
  return out;
}

}  // namespace

std::string format_rfc3339(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

Timestamp parse_rfc3339(std::string_view text) {
  const std::string s(text);
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%d-%u-%uT%u:%u:%u%n", &y, &mo, &d, &h, &mi, &sec,
                  &consumed) != 6)
    throw data_error(fmt::format("'{}' is not an RFC-3339 timestamp", s));
  const std::string_view zone = std::string_view(s).substr(
      static_cast<std::size_t>(consumed));
  if (zone != "Z" && zone != "+00:00")
    throw data_error(fmt::format("'{}' is not a UTC RFC-3339 timestamp", s));
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60)
    throw data_error(fmt::format("'{}' is not a valid date-time", s));
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

void write_ticks(std::ostream& out, std::span<const TickRecord> ticks) {
  for (const auto& t : ticks)
    out << t.timestamp.time_since_epoch().count() << ',' << format_double(t.price)
        << ',' << format_double(t.amount) << '\n';
}

void write_prices(std::ostream& out, const PriceSeries& prices) {
  out << "timestamp,value\n";
  for (std::size_t n = 0; n < prices.size(); ++n)
    out << format_rfc3339(prices.time_at(n)) << ','
        << format_double(prices.prices[n]) << '\n';
}

void write_returns(std::ostream& out, const ReturnSeries& returns) {
  out << "timestamp,value\n";
  for (std::size_t n = 0; n < returns.size(); ++n)
    out << format_rfc3339(returns.time_at(n)) << ','
        << format_double(returns.returns[n]) << '\n';
}

ReturnSeries read_returns(std::istream& in, Seconds fallback_dt) {
  auto out = read_uniform<ReturnSeries>(in, fallback_dt, &ReturnSeries::returns);
  out.source_meta = "csv";
  return out;
}

PriceSeries read_prices(std::istream& in, Seconds fallback_dt) {
  auto out = read_uniform<PriceSeries>(in, fallback_dt, &PriceSeries::prices);
  out.filled.assign(out.prices.size(), false);
  for (double p : out.prices)
    if (!(p > 0.0)) throw data_error("price CSV contains a non-positive price");
  return out;
}

void write_surface(std::ostream& out, const FluctuationSurface& surface) {
  out << "q,s,F\n";
  for (std::size_t qi = 0; qi < surface.q_grid.size(); ++qi)
    for (std::size_t si = 0; si < surface.scales.size(); ++si)
      out << format_double(surface.q_grid[qi]) << ',' << surface.scales[si] << ','
          << format_double(surface.at(qi, si)) << '\n';
}

void write_spectrum(std::ostream& out, const HurstSpectrum& spectrum) {
  out << "q,h,stderr,r2\n";
  for (std::size_t i = 0; i < spectrum.q_grid.size(); ++i)
    out << format_double(spectrum.q_grid[i]) << ',' << format_double(spectrum.h[i])
        << ',' << format_double(spectrum.stderr_h[i]) << ','
        << format_double(spectrum.r2[i]) << '\n';
}

void write_trace(std::ostream& out, const RollingTrace& trace) {
  out << "timestamp,h2,delta_h,illiq\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << format_rfc3339(trace.timestamps[i]) << ','
        << format_double(trace.h2[i]) << ',' << format_double(trace.delta_h[i])
        << ',';
    if (i < trace.illiq.size() && trace.illiq[i]) out << format_double(*trace.illiq[i]);
    out << '\n';
  }
}

RollingTrace read_trace(std::istream& in) {
  const auto body = read_body(in, "timestamp,h2,delta_h,illiq");
  RollingTrace trace;
  for (const auto& [line_no, text] : body) {
    const auto fields = split(text);
    if (fields.size() != 4)
      throw data_error(fmt::format("line {}: expected 4 columns", line_no));
    const Timestamp t = parse_rfc3339(fields[0]);
    if (!trace.timestamps.empty() && t <= trace.timestamps.back())
      throw data_error(
          fmt::format("line {}: trace timestamps must increase", line_no));
    trace.timestamps.push_back(t);
    trace.h2.push_back(parse_double(fields[1], line_no));
    trace.delta_h.push_back(parse_double(fields[2], line_no));
    if (fields[3].empty())
      trace.illiq.emplace_back(std::nullopt);
    else
      trace.illiq.emplace_back(parse_double(fields[3], line_no));
  }
  Seconds step{0};
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const Seconds gap = trace.timestamps[i] - trace.timestamps[i - 1];
    if (step == Seconds{0} || gap < step) step = gap;
  }
  trace.step = step;
  return trace;
}

void write_illiq(std::ostream& out, std::span<const IlliqPoint> points) {
  out << "timestamp,illiq,days_used,days_skipped\n";
  for (const auto& p : points)
    out << format_rfc3339(Timestamp{p.window_end + days{1}}) << ','
        << format_double(p.illiq) << ',' << p.days_used << ',' << p.days_skipped
        << '\n';
}

void write_aligned(std::ostream& out, const AlignedTable& table,
                   std::span<const std::string> labels) {
  if (labels.size() != table.columns.size())
    throw config_error("align: one label per trace is required");
  out << "timestamp";
  for (const auto& label : labels)
    out << ',' << label << ".h2," << label << ".delta_h," << label << ".illiq";
  out << '\n';
  for (std::size_t r = 0; r < table.timestamps.size(); ++r) {
    out << format_rfc3339(table.timestamps[r]);
    for (const auto& col : table.columns) {
      out << ',' << format_double(col.h2[r]) << ',' << format_double(col.delta_h[r])
          << ',';
      if (col.illiq[r]) out << format_double(*col.illiq[r]);
    }
    out << '\n';
  }
}

}  // namespace hurst
