#include "mktcx/report.hpp"

#include <future>
#include <fstream>

#include "mktcx/format.hpp"
#include "mktcx/returns.hpp"
#include "mktcx/version.hpp"

namespace mktcx {
namespace {

std::string metric_cell(const Metric& m) { return m.present() ? format_shortest(*m.value) : "NA"; }

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + '"';
}

std::string date_or_empty(const std::optional<AbsoluteTime>& t) {
  return t ? format_timestamp(to_calendar_time(*t)) : std::string{};
}

void write_file(const std::filesystem::path& path, const std::string& body,
                std::vector<std::filesystem::path>& written) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) throw Error("failed writing " + path.string());
  written.push_back(path);
}

bdm::CtmTable obtain_table(const RunConfig& config) {
  if (!config.ctm_table.empty()) {
    auto table = bdm::load_ctm_table(config.ctm_table);
    bdm::verify_compatible(table.meta());
    return table;
  }
  bdm::EnumerationOptions opts;
  opts.states = config.ctm_states;
  opts.threads = config.threads;
  return bdm::ctm_from_frequency(bdm::enumerate_machines(opts));
}

}  // namespace

std::string file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out.empty() ? "_" : out;
}

std::string output_header(const RunConfig& config) {
  return std::string("# mktcx ") + kVersion + " config=" + hex64(config_hash(config));
}

std::string write_report_csv(const MetricReport& report, const std::string& header) {
  std::string out = header + '\n';
  out += "id,kind,history_points,window_points,window_first,window_last";
  for (auto name : kMetricNames) {
    out += ',';
    out += name;
  }
  out += '\n';
  for (const auto& m : report.markets) {
    out += csv_field(m.id) + ',' + std::string(to_string(m.kind)) + ',' +
           std::to_string(m.history_points) + ',' + std::to_string(m.window_points) + ',' +
           date_or_empty(m.window_first) + ',' + date_or_empty(m.window_last);
    for (auto name : kMetricNames) out += ',' + metric_cell(m.at(name));
    out += '\n';
  }
  return out;
}

std::string write_report_text(const ReportOutcome& outcome, const RunConfig& config,
                              const std::string& header) {
  std::string out = header + '\n';
  out += "[run]\n";
  out += "window_start = " + (config.window_start ? format_timestamp(*config.window_start) : "") + '\n';
  out += "window_end = " + (config.window_end ? format_timestamp(*config.window_end) : "") + '\n';
  out += "block_max = " + std::to_string(config.max_block) + '\n';
  out += "bdm_block = " + std::to_string(config.bdm_block) + '\n';
  out += "bdm_offset = " + std::to_string(config.bdm_offset) + '\n';
  out += "hw_scales = " + std::to_string(config.hw_scales) + '\n';
  out += "ctm_table = " + outcome.ctm_header + '\n';
  out += "kurtosis = plain (normal = 3)\n";

  for (const auto& m : outcome.report.markets) {
    out += "\n[market " + m.id + "]\n";
    out += "kind = " + std::string(to_string(m.kind)) + '\n';
    out += "history_points = " + std::to_string(m.history_points) + '\n';
    out += "window_points = " + std::to_string(m.window_points) + '\n';
    out += "window_first = " + date_or_empty(m.window_first) + '\n';
    out += "window_last = " + date_or_empty(m.window_last) + '\n';
    for (auto name : kMetricNames) {
      const Metric& v = m.at(name);
      out += std::string(name) + " = " +
             (v.present() ? format_shortest(*v.value) : "FAILED: " + v.failure) + '\n';
    }
  }

  for (const auto& p : outcome.pairs) {
    out += "\n[correlation " + p.spec.source + " -> " + p.spec.dest + "]\n";
    if (!p.result) {
      out += "status = FAILED: " + p.failure + '\n';
      continue;
    }
    const auto& r = *p.result;
    out += "slope = " + format_shortest(r.map.slope) + '\n';
    out += "intercept = " + format_shortest(r.map.intercept) + '\n';
    out += "pairs = " + std::to_string(r.pair.size()) + '\n';
    out += "price_correlation = " + format_shortest(r.price) + '\n';
    out += "movement_correlation = " +
           (r.movement ? format_shortest(*r.movement) : "FAILED: " + r.movement_failure) + '\n';
  }
  return out;
}

ReportOutcome run_report(const RunConfig& config) {
  if (auto problems = validate(config); !problems.empty()) throw ConfigError(std::move(problems));

  ReportOutcome outcome;
  std::optional<bdm::CtmTable> table;
  try {
    table = obtain_table(config);
  } catch (const Error& e) {
    throw ConfigError({std::string("ctm_table: ") + e.what()});
  }
  outcome.ctm_header = table->meta().header_line();

  MetricSettings settings;
  if (config.window_start) settings.window_start = to_absolute_time(*config.window_start);
  if (config.window_end) settings.window_end = to_absolute_time(*config.window_end);
  settings.max_block = config.max_block;
  settings.window_mode = config.window_mode;
  settings.ties = config.ties;
  settings.bdm = {config.bdm_block, config.bdm_offset};
  settings.hw_scales = config.hw_scales;

  struct Loaded {
    std::optional<PriceSeries> series;
    std::string load_failure;
    MarketMetrics metrics;
    std::optional<HistogramSpec> histogram;
    std::string histogram_failure;
  };

  const auto process = [&](const MarketSource& src) {
    Loaded l;
    try {
      l.series = load_csv(src.path, src.id, src.kind);
    } catch (const std::exception& e) {
      l.load_failure = e.what();
      l.metrics.id = src.id;
      l.metrics.kind = src.kind;
      for (auto name : kMetricNames) {
        l.metrics.values[std::string(name)] = Metric::failed(std::string("load failed: ") + e.what());
      }
      l.histogram_failure = l.load_failure;
      return l;
    }
    l.metrics = compute_market_metrics(*l.series, settings, &*table);
    try {
      const auto window = l.series->between(
          settings.window_start.value_or(AbsoluteTime{-INFINITY}),
          settings.window_end.value_or(AbsoluteTime{INFINITY}));
      if (window.empty()) throw DegenerateInput("empty window");
      const Eigen::VectorXd lr = log_returns(window);
      const Eigen::VectorXd edges = config.histogram_bins == 0
                                        ? freedman_diaconis_edges(lr)
                                        : uniform_edges(lr, config.histogram_bins);
      l.histogram = return_histogram(lr, edges);
    } catch (const std::exception& e) {
      l.histogram_failure = e.what();
    }
    return l;
  };

  // Markets are independent; results are collected in config order so the
  // single writer below sees a deterministic sequence.
  std::vector<Loaded> loaded;
  loaded.reserve(config.markets.size());
  {
    std::vector<std::future<Loaded>> jobs;
    for (const auto& src : config.markets) {
      jobs.push_back(std::async(config.threads == 1 ? std::launch::deferred : std::launch::async,
                                process, std::cref(src)));
    }
    for (auto& j : jobs) loaded.push_back(j.get());
  }

  for (auto& l : loaded) {
    for (auto name : kMetricNames) {
      const Metric& m = l.metrics.at(name);
      if (!m.present()) outcome.failures.push_back({l.metrics.id, std::string(name), m.failure});
    }
    if (!l.histogram) outcome.failures.push_back({l.metrics.id, "histogram", l.histogram_failure});
    outcome.report.markets.push_back(l.metrics);
  }

  const auto find_series = [&](const std::string& id) -> const PriceSeries* {
    for (std::size_t i = 0; i < config.markets.size(); ++i) {
      if (config.markets[i].id == id) return loaded[i].series ? &*loaded[i].series : nullptr;
    }
    return nullptr;
  };
  for (const auto& spec : config.pairs) {
    PairOutcome p{spec, std::nullopt, {}};
    const auto* src = find_series(spec.source);
    const auto* dst = find_series(spec.dest);
    try {
      if (!src || !dst) throw Error("market data unavailable");
      p.result = correlate_markets(*src, *dst, peak_anchors(*src, *dst), config.selection);
    } catch (const std::exception& e) {
      p.failure = e.what();
      outcome.failures.push_back({spec.source + "->" + spec.dest, "correlation", p.failure});
    }
    outcome.pairs.push_back(std::move(p));
  }

  const std::string header = output_header(config);
  const auto& dir = config.output_dir;
  auto& written = outcome.written;
  if (config.csv) write_file(dir / "report.csv", write_report_csv(outcome.report, header), written);
  if (config.text) {
    write_file(dir / "report.txt", write_report_text(outcome, config, header), written);
  }

  std::string failures = header + "\nmarket,item,reason\n";
  for (const auto& f : outcome.failures) {
    failures += csv_field(f[0]) + ',' + f[1] + ',' + csv_field(f[2]) + '\n';
  }
  write_file(dir / "failures.csv", failures, written);

  for (const auto& l : loaded) {
    if (!l.histogram) continue;
    write_file(dir / "histograms" / (file_stem(l.metrics.id) + ".csv"),
               header + '\n' + write_histogram_csv(*l.histogram), written);
  }

  std::string corr = header + "\nsource,dest,slope,intercept,pairs,price_correlation,movement_correlation\n";
  for (const auto& p : outcome.pairs) {
    corr += csv_field(p.spec.source) + ',' + csv_field(p.spec.dest) + ',';
    if (!p.result) {
      corr += "NA,NA,NA,NA,NA\n";
      continue;
    }
    const auto& r = *p.result;
    corr += format_shortest(r.map.slope) + ',' + format_shortest(r.map.intercept) + ',' +
            std::to_string(r.pair.size()) + ',' + format_shortest(r.price) + ',' +
            (r.movement ? format_shortest(*r.movement) : "NA") + '\n';
    write_file(dir / "aligned" / (file_stem(p.spec.source) + "__" + file_stem(p.spec.dest) + ".csv"),
               header + '\n' + write_aligned_csv(r.pair), written);
  }
  if (!config.pairs.empty()) write_file(dir / "correlations.csv", corr, written);

  outcome.exit_code = outcome.failures.empty() ? kExitSuccess : kExitPartialFailure;
  return outcome;
}

}  // namespace mktcx
