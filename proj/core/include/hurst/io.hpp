#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurst/liquidity.hpp"
#include "hurst/mfdfa.hpp"
#include "hurst/rolling.hpp"
#include "hurst/spectrum.hpp"
#include "hurst/timeseries.hpp"

namespace hurst {

// CSV schemas. Floats are written with 17 significant digits so a write /
// read cycle is exact; timestamps are RFC-3339 UTC ("2017-06-01T00:00:00Z").

std::string format_rfc3339(Timestamp t);
/// Accepts a trailing "Z" or "+00:00"; throws a data-quality error otherwise.
Timestamp parse_rfc3339(std::string_view text);
std::string format_double(double value);

/// Headerless `unix_timestamp,price,amount`, the ingest layout.
void write_ticks(std::ostream& out, std::span<const TickRecord> ticks);

/// `timestamp,value`
void write_prices(std::ostream& out, const PriceSeries& prices);
void write_returns(std::ostream& out, const ReturnSeries& returns);

/// Reads `timestamp,value`. The spacing must be uniform; a one-row file
/// takes `fallback_dt`.
ReturnSeries read_returns(std::istream& in, Seconds fallback_dt = Seconds{86400});
PriceSeries read_prices(std::istream& in, Seconds fallback_dt = Seconds{86400});

/// `q,s,F`
void write_surface(std::ostream& out, const FluctuationSurface& surface);
/// `q,h,stderr,r2`
void write_spectrum(std::ostream& out, const HurstSpectrum& spectrum);

/// `timestamp,h2,delta_h,illiq`, the illiq field empty where not computed.
void write_trace(std::ostream& out, const RollingTrace& trace);
/// Reads a trace; the step is the smallest spacing between rows.
RollingTrace read_trace(std::istream& in);

/// `timestamp,illiq,days_used,days_skipped`; the timestamp is the end of the
/// window's last day, matching rolling-trace window ends.
void write_illiq(std::ostream& out, std::span<const IlliqPoint> points);

/// `timestamp,<label>.h2,<label>.delta_h,<label>.illiq,...`
void write_aligned(std::ostream& out, const AlignedTable& table,
                   std::span<const std::string> labels);

}  // namespace hurst
