#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hurst/error.hpp"
#include "hurst/io.hpp"
#include "hurst/liquidity.hpp"
#include "hurst/mfdfa.hpp"
#include "hurst/rolling.hpp"
#include "hurst/spectrum.hpp"
#include "hurst/synth.hpp"
#include "hurst/timeseries.hpp"
#include "manifest.hpp"

#ifndef HURST_VERSION
#define HURST_VERSION "0.0.0"
#endif

namespace hurst::cli {
namespace {

using json = nlohmann::ordered_json;

// Options that describe where the run's provenance goes rather than what it
// computes; they are left out of the effective config.
const std::set<std::string> kMetaOptions{"help", "config", "dump-config",
                                         "manifest"};

std::string now_rfc3339() {
  return format_rfc3339(
      std::chrono::floor<Seconds>(std::chrono::system_clock::now()));
}

class Session {
 public:
  Session(Streams io, std::string command) : io_(io) {
    manifest_.command = std::move(command);
    manifest_.started = now_rfc3339();
  }

  std::string read(const std::string& path) {
    std::string bytes;
    if (path == "-") {
      std::ostringstream buf;
      buf << io_.in.rdbuf();
      if (io_.in.bad()) throw io_error("failed reading standard input");
      bytes = buf.str();
    } else {
      std::ifstream file(path, std::ios::binary);
      if (!file) throw io_error(fmt::format("cannot open '{}' for reading", path));
      std::ostringstream buf;
      buf << file.rdbuf();
      if (file.bad()) throw io_error(fmt::format("failed reading '{}'", path));
      bytes = buf.str();
    }
    manifest_.input_digests[path == "-" ? "stdin" : path] = sha256_digest(bytes);
    return bytes;
  }

  void write(const std::string& path, const std::string& bytes) {
    if (path == "-") {
      io_.out << bytes;
      io_.out.flush();
      if (!io_.out) throw io_error("failed writing standard output");
    } else {
      write_file(path, bytes);
    }
    manifest_.output_digests[path == "-" ? "stdout" : path] = sha256_digest(bytes);
    if (primary_output_.empty()) primary_output_ = path;
  }

  void warn(const std::string& message) {
    io_.err << json{{"warning", message}}.dump() << '\n';
  }

  RunManifest& manifest() { return manifest_; }

  /// Writes the manifest to `explicit_path`, or next to the primary output
  /// when that is a file.
  void finish(const std::string& explicit_path) {
    manifest_.finished = now_rfc3339();
    std::string path = explicit_path;
    if (path.empty() && !primary_output_.empty() && primary_output_ != "-")
      path = primary_output_ + ".manifest.json";
    if (path.empty()) return;
    write_file(path, manifest_.to_json().dump(2) + "\n");
  }

 private:
  static void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw io_error(fmt::format("cannot open '{}' for writing", path));
    file << bytes;
    file.flush();
    if (!file) throw io_error(fmt::format("failed writing '{}'", path));
  }

  Streams io_;
  RunManifest manifest_;
  std::string primary_output_;
};

void check_dt(Seconds dt, bool allow_any) {
  using std::chrono::hours;
  if (allow_any) return;
  if (dt == hours{1} || dt == hours{6} || dt == hours{12} || dt == hours{24})
    return;
  throw config_error(fmt::format(
      "dt = {} is not in the supported set {{1h, 6h, 12h, 24h}}; pass "
      "--allow-any-dt to override",
      format_duration(dt)));
}

std::vector<TickRecord> ingest_bytes(const std::string& bytes, Session& session) {
  std::istringstream in(bytes);
  auto result = ingest_ticks(in);
  for (const auto& w : result.warnings) session.warn(w);
  session.manifest().summary["ticks"] = result.records.size();
  session.manifest().summary["rejected_rows"] = result.rejected.size();
  return std::move(result.records);
}

// Options shared by the mfdfa and rolling subcommands.
struct SpectrumOptions {
  double q_min = -25.0;
  double q_max = 25.0;
  double q_step = 0.5;
  int poly_order = 3;
  std::vector<std::size_t> scales;
  std::size_t s_min = 16;
  std::size_t s_max = 0;
  std::size_t n_scales = 20;
  double variance_floor = 1e-30;
  unsigned threads = 1;

  void attach(CLI::App& app) {
    app.add_option("--q-min", q_min, "Smallest q")->capture_default_str();
    app.add_option("--q-max", q_max, "Largest q")->capture_default_str();
    app.add_option("--q-step", q_step, "q grid spacing")->capture_default_str();
    app.add_option("--poly-order", poly_order, "Detrending polynomial order")
        ->capture_default_str();
    app.add_option("--scales", scales, "Explicit scale list (overrides s-min/s-max)")
        ->delimiter(',');
    app.add_option("--s-min", s_min, "Smallest default scale")->capture_default_str();
    app.add_option("--s-max", s_max, "Largest default scale (0 = N/4)")
        ->capture_default_str();
    app.add_option("--n-scales", n_scales, "Number of default scales")
        ->capture_default_str();
    app.add_option("--variance-floor", variance_floor, "Segment variance floor")
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  MfdfaConfig build(std::size_t n) const {
    MfdfaConfig cfg;
    cfg.poly_order = poly_order;
    cfg.q_grid = make_q_grid(q_min, q_max, q_step);
    cfg.variance_floor = variance_floor;
    cfg.threads = threads;
    if (!scales.empty()) {
      cfg.scales = scales;
    } else {
      const std::size_t upper = s_max > 0 ? std::min(s_max, n / 4) : n / 4;
      cfg.scales = log_spaced_scales(s_min, upper, n_scales);
      if (cfg.scales.empty())
        throw data_error(fmt::format(
            "series of length {} admits no scales between {} and {}", n, s_min,
            upper));
    }
    validate(cfg);
    return cfg;
  }
};

json spectrum_summary(const HurstSpectrum& spectrum, double band) {
  json j;
  const auto two = std::find(spectrum.q_grid.begin(), spectrum.q_grid.end(), 2.0);
  if (two != spectrum.q_grid.end()) {
    const double h2 = spectrum.h[static_cast<std::size_t>(two - spectrum.q_grid.begin())];
    j["h2"] = h2;
    j["classification"] = to_string(classify_persistence(h2, band));
  } else {
    j["h2"] = nullptr;
    j["classification"] = nullptr;
  }
  j["delta_h"] = spectrum.delta_h;
  j["scale_range_used"] = {spectrum.scale_range_used.first,
                           spectrum.scale_range_used.second};
  return j;
}

// Flat `key = value` document; '#' starts a comment line.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw io_error(fmt::format("cannot open config '{}'", path));
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(file, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(
          fmt::format("{}:{}: expected 'key = value'", path, line_no));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    entries[key] = value;
  }
  return entries;
}

std::string option_key(const std::string& arg) {
  if (arg.rfind("--", 0) != 0) return {};
  const auto eq = arg.find('=');
  return arg.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
}

// Splices config-file entries in front of the user's flags; an entry is
// dropped when the same option appears on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
  std::string config_path;
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto key = option_key(args[i]);
    if (key.empty()) continue;
    given.insert(key);
    if (key == "config") {
      const auto eq = args[i].find('=');
      if (eq != std::string::npos)
        config_path = args[i].substr(eq + 1);
      else if (i + 1 < args.size())
        config_path = args[i + 1];
    }
  }
  if (config_path.empty() || args.empty()) return args;

  std::vector<std::string> merged{args.front()};
  for (const auto& [key, value] : read_config_file(config_path)) {
    if (given.count(key) || kMetaOptions.count(key)) continue;
    merged.push_back(fmt::format("--{}={}", key, value));
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

// Flags are read from their bound variables: CLI11's default string for a
// negatable flag describes the negation, not the value.
std::string effective_config(const CLI::App& sub,
                             const std::map<std::string, const bool*>& flags) {
  std::string out;
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || kMetaOptions.count(name)) continue;
    std::string value;
    if (const auto flag = flags.find(name); flag != flags.end()) {
      value = *flag->second ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i)
        value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    if (value.empty()) continue;
    out += fmt::format("{} = {}\n", name, value);
  }
  return out;
}

struct Common {
  std::string config;
  std::string dump_config;
  std::string manifest;

  void attach(CLI::App& app) {
    app.add_option("--config", config, "Flat key = value config file");
    app.add_option("--dump-config", dump_config,
                   "Write the effective configuration to this path");
    app.add_option("--manifest", manifest,
                   "Manifest path (default: <out>.manifest.json for file output)");
  }
};

int run_checked(const std::vector<std::string>& raw_args, Streams io) {
  CLI::App app{"Multifractal detrended fluctuation analysis for market data",
               "hurst"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));
  app.footer(
      "Exit codes: 0 ok, 2 configuration, 3 data quality, 4 I/O, 1 internal.");

  Common common;

  // ingest
  std::string in_path = "-";
  std::string out_path = "-";
  auto* ingest = app.add_subcommand("ingest", "Parse and sort a tick CSV");
  ingest->add_option("--in", in_path, "Tick CSV (unix_timestamp,price,amount)")
      ->capture_default_str();
  ingest->add_option("--out", out_path, "Sorted tick CSV")->capture_default_str();

  // resample
  std::string dt_text = "24h";
  std::string fill = "carry-forward";
  bool align_utc = true;
  bool emit_returns = false;
  bool allow_any_dt = false;
  auto* resample_cmd =
      app.add_subcommand("resample", "Bin ticks into a fixed-period series");
  resample_cmd->add_option("--in", in_path, "Tick CSV")->capture_default_str();
  resample_cmd->add_option("--out", out_path, "timestamp,value CSV")
      ->capture_default_str();
  resample_cmd->add_option("--dt", dt_text, "Sampling period (1h, 6h, 12h, 24h)")
      ->capture_default_str();
  resample_cmd->add_option("--fill", fill, "Gap policy: carry-forward or reject")
      ->capture_default_str();
  resample_cmd->add_flag("--align-utc,!--no-align-utc", align_utc,
                         "Anchor bins on the UTC dt grid (default on)")
      ->capture_default_str();
  resample_cmd->add_flag("--returns", emit_returns,
                         "Emit log-returns instead of prices")
      ->capture_default_str();
  resample_cmd->add_flag("--allow-any-dt", allow_any_dt,
                         "Accept a dt outside the supported set")
      ->capture_default_str();

  // mfdfa
  SpectrumOptions spec_opts;
  std::string expected_dt;
  std::string summary_path;
  std::string surface_path;
  double band = kDefaultEfficiencyBand;
  auto* mfdfa_cmd =
      app.add_subcommand("mfdfa", "Generalized Hurst spectrum of a return series");
  mfdfa_cmd->add_option("--in", in_path, "Return series CSV")->capture_default_str();
  mfdfa_cmd->add_option("--out", out_path, "Spectrum CSV (q,h,stderr,r2)")
      ->capture_default_str();
  mfdfa_cmd->add_option("--summary", summary_path,
                        "Summary JSON (default: <out stem>.summary.json)");
  mfdfa_cmd->add_option("--surface", surface_path, "Optional q,s,F CSV");
  mfdfa_cmd->add_option("--dt", expected_dt,
                        "Expected sampling period of the input");
  mfdfa_cmd->add_option("--band", band, "Efficiency band around 0.5")
      ->capture_default_str();
  mfdfa_cmd->add_flag("--allow-any-dt", allow_any_dt,
                      "Accept a dt outside the supported set")
      ->capture_default_str();
  spec_opts.attach(*mfdfa_cmd);

  // rolling
  std::string ticks_path;
  std::string window_text = "365d";
  std::string step_text = "1d";
  double min_coverage = 0.9;
  std::size_t illiq_days = 0;
  auto* rolling_cmd =
      app.add_subcommand("rolling", "h(2), delta h and ILLIQ in rolling windows");
  rolling_cmd->add_option("--in", in_path, "Return series CSV (or use --ticks)");
  rolling_cmd->add_option("--ticks", ticks_path,
                          "Tick CSV; resampled at --dt, also enables ILLIQ")
      ->excludes(rolling_cmd->get_option("--in"));
  rolling_cmd->add_option("--out", out_path, "Trace CSV")->capture_default_str();
  rolling_cmd->add_option("--dt", dt_text, "Sampling period when using --ticks")
      ->capture_default_str();
  rolling_cmd->add_option("--fill", fill, "Gap policy for --ticks")
      ->capture_default_str();
  rolling_cmd->add_flag("--align-utc,!--no-align-utc", align_utc,
                        "Anchor bins and window ends on the UTC grid (default on)")
      ->capture_default_str();
  rolling_cmd->add_option("--window", window_text, "Window length")
      ->capture_default_str();
  rolling_cmd->add_option("--step", step_text, "Window step")->capture_default_str();
  rolling_cmd->add_option("--min-coverage", min_coverage,
                          "Minimum fraction of real (not gap-filled) samples")
      ->capture_default_str();
  rolling_cmd->add_option("--illiq-window-days", illiq_days,
                          "ILLIQ lookback in days (0 = window length)")
      ->capture_default_str();
  rolling_cmd->add_flag("--allow-any-dt", allow_any_dt,
                        "Accept a dt outside the supported set")
      ->capture_default_str();
  spec_opts.attach(*rolling_cmd);

  // illiq
  std::size_t window_days = 365;
  std::size_t step_days = 1;
  auto* illiq_cmd = app.add_subcommand("illiq", "Amihud illiquidity from ticks");
  illiq_cmd->add_option("--in", in_path, "Tick CSV")->capture_default_str();
  illiq_cmd->add_option("--out", out_path, "ILLIQ CSV")->capture_default_str();
  illiq_cmd->add_option("--window-days", window_days, "Window length in days")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  illiq_cmd->add_option("--step-days", step_days, "Step in days")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // synth
  GeneratorSpec gen;
  std::string kind = "gaussian-noise";
  std::string start_text = "1970-01-01T00:00:00Z";
  auto* synth_cmd =
      app.add_subcommand("synth", "Synthetic series with known scaling");
  synth_cmd->add_option("--kind", kind, "gaussian-noise, fgn or binomial-cascade")
      ->capture_default_str();
  synth_cmd->add_option("--n", gen.length, "Length (gaussian-noise, fgn)")
      ->capture_default_str();
  synth_cmd->add_option("--H", gen.hurst, "Hurst parameter (fgn)")
      ->capture_default_str();
  synth_cmd->add_option("--a", gen.cascade_a, "Cascade weight in (0.5, 1)")
      ->capture_default_str();
  synth_cmd->add_option("--k", gen.cascade_depth, "Cascade depth, N = 2^k")
      ->capture_default_str();
  synth_cmd->add_option("--total", gen.cascade_total, "Cascade mass (0 = N)")
      ->capture_default_str();
  synth_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--dt", dt_text, "Time grid spacing")->capture_default_str();
  synth_cmd->add_option("--start", start_text, "First timestamp (RFC-3339)")
      ->capture_default_str();
  synth_cmd->add_option("--out", out_path, "Return series CSV")->capture_default_str();
  synth_cmd->add_flag("--allow-any-dt", allow_any_dt,
                      "Accept a dt outside the supported set")
      ->capture_default_str();

  // align
  std::vector<std::string> trace_paths;
  std::vector<std::string> labels;
  auto* align_cmd = app.add_subcommand("align", "Inner-join rolling traces");
  align_cmd->add_option("--in", trace_paths, "Trace CSVs")->required()->delimiter(',');
  align_cmd->add_option("--label", labels, "Column prefix per trace")->delimiter(',');
  align_cmd->add_option("--out", out_path, "Joined CSV")->capture_default_str();

  const std::map<std::string, const bool*> flags{
      {"align-utc", &align_utc}, {"returns", &emit_returns}, {"allow-any-dt", &allow_any_dt}};
  for (auto* sub : app.get_subcommands({})) common.attach(*sub);

  const auto args = merge_config(raw_args);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    io.out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    io.out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      io.out << (app.get_subcommands().empty() ? app.help()
                                               : app.get_subcommands().front()->help());
      return kExitOk;
    }
    throw config_error(e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  Session session(io, sub->get_name());
  const std::string config_text = effective_config(*sub, flags);
  session.manifest().effective_config = config_text;
  if (!common.dump_config.empty()) {
    std::ofstream dump(common.dump_config, std::ios::trunc);
    if (!(dump << config_text))
      throw io_error(fmt::format("cannot write config dump '{}'", common.dump_config));
  }

  auto& summary = session.manifest().summary;

  if (sub == ingest) {
    const auto ticks = ingest_bytes(session.read(in_path), session);
    std::ostringstream out;
    write_ticks(out, ticks);
    session.write(out_path, out.str());
  } else if (sub == resample_cmd) {
    const Seconds dt = parse_duration(dt_text);
    check_dt(dt, allow_any_dt);
    const auto ticks = ingest_bytes(session.read(in_path), session);
    ResampleOptions options{dt, parse_fill_policy(fill), std::nullopt};
    if (align_utc && !ticks.empty())
      options.origin = Timestamp{ticks.front().timestamp -
                                 Seconds{ticks.front().timestamp.time_since_epoch() % dt}};
    const auto prices = resample(ticks, options);
    summary["samples"] = prices.size();
    summary["n_filled"] = prices.n_filled;
    std::ostringstream out;
    if (emit_returns)
      write_returns(out, log_returns(prices));
    else
      write_prices(out, prices);
    session.write(out_path, out.str());
  } else if (sub == mfdfa_cmd) {
    std::istringstream in(session.read(in_path));
    const auto returns = read_returns(in);
    if (!expected_dt.empty() && returns.size() > 1 &&
        parse_duration(expected_dt) != returns.dt)
      throw config_error(fmt::format("--dt {} does not match the input spacing {}",
                                     expected_dt, format_duration(returns.dt)));
    check_dt(returns.size() > 1 || expected_dt.empty() ? returns.dt
                                                       : parse_duration(expected_dt),
             allow_any_dt);
    const auto cfg = spec_opts.build(returns.size());
    const auto result = analyze(returns.returns, cfg);
    for (const auto& d : result.surface.rejected_scales)
      session.warn(fmt::format("scale {} rejected: {}", d.scale, d.reason));

    std::ostringstream spectrum_csv;
    write_spectrum(spectrum_csv, result.spectrum);
    session.write(out_path, spectrum_csv.str());

    json j = spectrum_summary(result.spectrum, band);
    j["n"] = returns.size();
    j["n_scales"] = result.surface.surface.scales.size();
    j["n_floored"] = result.surface.n_floored;
    summary = j;
    std::string summary_target = summary_path;
    if (summary_target.empty() && out_path != "-")
      summary_target = std::filesystem::path(out_path)
                           .replace_extension(".summary.json")
                           .string();
    if (!summary_target.empty()) session.write(summary_target, j.dump(2) + "\n");
    if (!surface_path.empty()) {
      std::ostringstream surface_csv;
      write_surface(surface_csv, result.surface.surface);
      session.write(surface_path, surface_csv.str());
    }
  } else if (sub == rolling_cmd) {
    RollingConfig rc;
    rc.window = parse_duration(window_text);
    rc.step = parse_duration(step_text);
    rc.min_coverage = min_coverage;
    rc.threads = spec_opts.threads;
    if (align_utc) rc.anchor = Timestamp{};

    ReturnSeries returns;
    std::vector<DailyAggregate> days;
    if (!ticks_path.empty()) {
      const Seconds dt = parse_duration(dt_text);
      check_dt(dt, allow_any_dt);
      const auto ticks = ingest_bytes(session.read(ticks_path), session);
      ResampleOptions options{dt, parse_fill_policy(fill), std::nullopt};
      if (align_utc && !ticks.empty())
        options.origin =
            Timestamp{ticks.front().timestamp -
                      Seconds{ticks.front().timestamp.time_since_epoch() % dt}};
      returns = log_returns(resample(ticks, options));
      days = daily_aggregates(ticks);
    } else {
      std::istringstream in(session.read(in_path));
      returns = read_returns(in);
      check_dt(returns.dt, allow_any_dt);
      // Off-grid inputs keep the plain start + window convention.
      if (returns.start.time_since_epoch() % returns.dt != Seconds{0}) rc.anchor.reset();
    }
    const auto [window_samples, step_samples] = window_in_samples(rc, returns.dt);
    (void)step_samples;
    const auto cfg = spec_opts.build(window_samples);
    auto trace = rolling_spectrum(returns, rc, cfg);
    if (!days.empty()) {
      const std::size_t lookback =
          illiq_days > 0 ? illiq_days
                         : static_cast<std::size_t>(
                               std::max<long>(1, std::chrono::floor<std::chrono::days>(
                                                     rc.window)
                                                     .count()));
      attach_illiq(trace, days, lookback);
    }
    for (const auto& [t, reason] : trace.skipped)
      session.warn(fmt::format("window ending {} skipped: {}", format_rfc3339(t), reason));
    summary["windows"] = trace.size();
    summary["skipped"] = trace.skipped.size();
    std::ostringstream out;
    write_trace(out, trace);
    session.write(out_path, out.str());
  } else if (sub == illiq_cmd) {
    const auto ticks = ingest_bytes(session.read(in_path), session);
    const auto days = daily_aggregates(ticks);
    const auto series = rolling_illiq(days, window_days, step_days);
    for (const auto& [d, reason] : series.skipped)
      session.warn(fmt::format("window ending {} skipped: {}",
                               format_rfc3339(Timestamp{d}), reason));
    summary["points"] = series.points.size();
    summary["skipped"] = series.skipped.size();
    std::ostringstream out;
    write_illiq(out, series.points);
    session.write(out_path, out.str());
  } else if (sub == synth_cmd) {
    gen.kind = parse_generator_kind(kind);
    gen.dt = parse_duration(dt_text);
    check_dt(gen.dt, allow_any_dt);
    gen.start = parse_rfc3339(start_text);
    const auto series = generate(gen);
    summary["source"] = series.source_meta;
    if (series.source_meta.find("APPROXIMATE") != std::string::npos)
      session.warn(series.source_meta);
    std::ostringstream out;
    write_returns(out, series);
    session.write(out_path, out.str());
  } else if (sub == align_cmd) {
    if (!labels.empty() && labels.size() != trace_paths.size())
      throw config_error("align: give one --label per --in, or none");
    std::vector<RollingTrace> traces;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < trace_paths.size(); ++i) {
      std::istringstream in(session.read(trace_paths[i]));
      traces.push_back(read_trace(in));
      names.push_back(labels.empty()
                          ? (trace_paths[i] == "-"
                                 ? std::string("stdin")
                                 : std::filesystem::path(trace_paths[i]).stem().string())
                          : labels[i]);
    }
    const auto table = align_traces(traces);
    for (const auto& w : table.warnings) session.warn(w);
    summary["rows"] = table.timestamps.size();
    summary["dropped_rows"] = table.dropped_rows;
    std::ostringstream out;
    write_aligned(out, table, names);
    session.write(out_path, out.str());
  }

  session.finish(common.manifest);
  return kExitOk;
}

}  // namespace

const char* tool_version() noexcept { return HURST_VERSION; }

Seconds parse_duration(const std::string& text) {
  if (text.size() < 2)
    throw config_error(fmt::format("invalid duration '{}' (e.g. 24h, 365d)", text));
  const char unit = text.back();
  const std::string number = text.substr(0, text.size() - 1);
  long long value = 0;
  std::size_t consumed = 0;
  try {
    value = std::stoll(number, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != number.size() || value <= 0)
    throw config_error(fmt::format("invalid duration '{}' (e.g. 24h, 365d)", text));
  switch (unit) {
    case 's':
      return Seconds{value};
    case 'm':
      return Seconds{value * 60};
    case 'h':
      return Seconds{value * 3600};
    case 'd':
      return Seconds{value * 86400};
    default:
      throw config_error(
          fmt::format("invalid duration unit in '{}' (use s, m, h or d)", text));
  }
}

std::string format_duration(Seconds d) {
  const auto s = d.count();
  if (s != 0 && s % 86400 == 0) return fmt::format("{}d", s / 86400);
  if (s != 0 && s % 3600 == 0) return fmt::format("{}h", s / 3600);
  if (s != 0 && s % 60 == 0) return fmt::format("{}m", s / 60);
  return fmt::format("{}s", s);
}

int run(const std::vector<std::string>& args, Streams io) {
  auto fail = [&](const char* category, const std::string& message, int code) {
    io.err << json{{"error", category}, {"message", message}}.dump() << '\n';
    return code;
  };
  try {
    return run_checked(args, io);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::config:
        return fail("config", e.what(), kExitConfig);
      case ErrorKind::data_quality:
        return fail("data_quality", e.what(), kExitData);
      case ErrorKind::io:
        return fail("io", e.what(), kExitIo);
    }
    return fail("internal", e.what(), kExitInternal);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kExitInternal);
  }
}

}  // namespace hurst::cli
