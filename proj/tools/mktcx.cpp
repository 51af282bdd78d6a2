// mktcx: command-line front end for the market complexity toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mktcx/align.hpp"
#include "mktcx/analysis.hpp"
#include "mktcx/bdm.hpp"
#include "mktcx/encode.hpp"
#include "mktcx/entropy.hpp"
#include "mktcx/format.hpp"
#include "mktcx/fractal.hpp"
#include "mktcx/ingest.hpp"
#include "mktcx/lzw.hpp"
#include "mktcx/report.hpp"
#include "mktcx/returns.hpp"
#include "mktcx/version.hpp"

namespace {

using namespace mktcx;

struct SeriesArgs {
  std::string path;
  std::string id;
  std::string kind = "stock-index";
};

void add_series(CLI::App* cmd, SeriesArgs& a, const std::string& name = "file") {
  cmd->add_option(name, a.path, "price CSV (date,price)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--id", a.id, "market name (default: file stem)");
  cmd->add_option("--kind", a.kind, "cryptocurrency | precious-metal | foreign-exchange | stock-index");
}

PriceSeries load(const SeriesArgs& a) {
  const std::string id = a.id.empty() ? std::filesystem::path(a.path).stem().string() : a.id;
  return load_csv(a.path, id, parse_market_kind(a.kind));
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << body;
  if (!out) throw Error("failed writing " + out_path);
}

std::string value_line(const std::string& key, double v) {
  return key + " = " + format_shortest(v) + '\n';
}

std::optional<AnchorPair> parse_anchor_pair(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error("anchors must be '<date>,<date>'");
  return AnchorPair{to_absolute_time(parse_timestamp(text.substr(0, comma))),
                    to_absolute_time(parse_timestamp(text.substr(comma + 1)))};
}

MarketAnchors resolve_anchors(const PriceSeries& src, const PriceSeries& dst,
                              const std::string& src_text, const std::string& dst_text) {
  MarketAnchors anchors;
  const auto s = parse_anchor_pair(src_text);
  const auto d = parse_anchor_pair(dst_text);
  anchors.source = s ? *s : peak_anchors(src, dst).source;
  anchors.dest = d ? *d : peak_anchors(src, dst).dest;
  return anchors;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complexity measures for market price histories"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // ingest
  SeriesArgs ingest_in;
  std::string ingest_out;
  auto* ingest = app.add_subcommand("ingest", "validate a price CSV and write its canonical form");
  add_series(ingest, ingest_in);
  ingest->add_option("-o,--out", ingest_out, "output file (default stdout)");

  // align / correlate
  SeriesArgs align_src, align_dst;
  std::string src_anchors, dst_anchors, align_out;
  bool unique = false;
  auto* align = app.add_subcommand("align", "map a source market onto a destination time axis");
  auto* correlate = app.add_subcommand("correlate", "correlate two markets after alignment");
  for (auto* cmd : {align, correlate}) {
    cmd->add_option("source", align_src.path, "source price CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("dest", align_dst.path, "destination price CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--source-id", align_src.id);
    cmd->add_option("--dest-id", align_dst.id);
    cmd->add_option("--source-anchors", src_anchors, "two dates; default: two largest peaks");
    cmd->add_option("--dest-anchors", dst_anchors, "two dates; default: two largest peaks");
    cmd->add_flag("--unique", unique, "use each destination point at most once");
  }
  align->add_option("-o,--out", align_out, "aligned-pair CSV (default stdout)");

  // returns
  SeriesArgs returns_in;
  std::string hist_out;
  std::size_t hist_bins = 0;
  auto* returns = app.add_subcommand("returns", "log-return moments and histogram plot data");
  add_series(returns, returns_in);
  returns->add_option("--histogram", hist_out, "write bin_lo,bin_hi,observed,expected CSV");
  returns->add_option("--bins", hist_bins, "bin count (default Freedman-Diaconis)");

  // entropy
  SeriesArgs entropy_in;
  std::size_t max_block = 4;
  bool disjoint = false;
  bool strict_ties = false;
  auto* entropy = app.add_subcommand("entropy", "entropy of the up/down movement series");
  add_series(entropy, entropy_in);
  entropy->add_option("--max-block", max_block, "largest window length")->check(CLI::PositiveNumber);
  entropy->add_flag("--disjoint", disjoint, "non-overlapping windows");
  entropy->add_flag("--strict-ties", strict_ties, "fail on unchanged prices");

  // compress
  SeriesArgs compress_in;
  auto* compress = app.add_subcommand("compress", "LZW compressibility of prices and movements");
  add_series(compress, compress_in);

  // bdm
  SeriesArgs bdm_in;
  std::string table_path;
  std::size_t bdm_block = 4, bdm_offset = 4;
  std::optional<int> expect_states;
  auto* bdm_cmd = app.add_subcommand("bdm", "block decomposition complexity of the movement series");
  add_series(bdm_cmd, bdm_in);
  bdm_cmd->add_option("--table", table_path, "CTM table from ctm-gen")->required()->check(CLI::ExistingFile);
  bdm_cmd->add_option("--block", bdm_block, "window length");
  bdm_cmd->add_option("--offset", bdm_offset, "distance between window starts");
  bdm_cmd->add_option("--expect-states", expect_states, "reject tables built for other state counts");

  // ctm-gen
  int states = 3;
  std::string ctm_out, checkpoint_dir;
  std::size_t shards = 1, threads = 0, max_length = 12;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0, step_bound = 0;
  auto* ctm = app.add_subcommand("ctm-gen", "enumerate small Turing machines into a CTM table");
  ctm->add_option("--states", states, "machine states (1-3 exhaustive, 4 needs --samples)")
      ->check(CLI::Range(1, 4));
  ctm->add_option("-o,--out", ctm_out, "table file")->required();
  ctm->add_option("--shards", shards, "independent work units")->check(CLI::PositiveNumber);
  ctm->add_option("--threads", threads, "worker threads (0 = all cores)");
  ctm->add_option("--checkpoint-dir", checkpoint_dir, "persist finished shards for resumption");
  ctm->add_option("--samples", samples, "sample this many machines uniformly");
  ctm->add_option("--seed", seed, "sampling seed");
  ctm->add_option("--step-bound", step_bound, "step limit (default Busy Beaver time)");
  ctm->add_option("--max-length", max_length, "longest string tabulated")->check(CLI::Range(1, 24));

  // fractal
  SeriesArgs fractal_in;
  long scales = 2;
  auto* fractal = app.add_subcommand("fractal", "Hall-Wood fractal dimension");
  add_series(fractal, fractal_in);
  fractal->add_option("--scales", scales, "number of scales L in the OLS fit")->check(CLI::Range(2L, 1L << 30));

  // report
  std::string config_path;
  std::vector<std::string> overrides;
  std::string report_out;
  auto* report = app.add_subcommand("report", "compute every measure for a configured market set");
  report->add_option("-c,--config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  report->add_option("--set", overrides, "override a config key: key=value (repeatable)");
  report->add_option("-o,--output-dir", report_out, "override output_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*ingest) {
      emit(write_csv(load(ingest_in)), ingest_out);
    } else if (*align || *correlate) {
      const auto src = load(align_src);
      const auto dst = load(align_dst);
      const auto anchors = resolve_anchors(src, dst, src_anchors, dst_anchors);
      const auto r = correlate_markets(src, dst, anchors,
                                       unique ? Selection::unique : Selection::allow_repeats);
      if (*align) {
        emit(write_aligned_csv(r.pair), align_out);
        std::cerr << "slope = " << format_shortest(r.map.slope)
                  << "\nintercept = " << format_shortest(r.map.intercept) << '\n';
      } else {
        std::cout << value_line("slope", r.map.slope) << value_line("intercept", r.map.intercept)
                  << "pairs = " << r.pair.size() << '\n'
                  << value_line("price_correlation", r.price)
                  << "movement_correlation = "
                  << (r.movement ? format_shortest(*r.movement) : "FAILED: " + r.movement_failure)
                  << '\n';
      }
    } else if (*returns) {
      const auto s = load(returns_in);
      const Eigen::VectorXd lr = log_returns(s);
      const auto st = moments(lr);
      std::cout << "n = " << st.n() << '\n'
                << value_line("mean", st.mean()) << value_line("std_dev", st.std_dev());
      if (st.has_shape()) {
        std::cout << value_line("kurtosis", st.kurtosis()) << value_line("skewness", st.skewness());
      } else {
        std::cout << "kurtosis = FAILED: zero variance\nskewness = FAILED: zero variance\n";
      }
      if (!hist_out.empty()) {
        const Eigen::VectorXd edges =
            hist_bins == 0 ? freedman_diaconis_edges(lr) : uniform_edges(lr, hist_bins);
        emit(write_histogram_csv(return_histogram(lr, edges)), hist_out);
      }
    } else if (*entropy) {
      const auto bits = binarize(load(entropy_in), strict_ties ? TieMode::strict : TieMode::as_decrease);
      const auto h1 = shannon_entropy(bits.bits);
      const auto hb = block_entropy(bits.bits, max_block,
                                    disjoint ? WindowMode::disjoint : WindowMode::overlapping);
      std::cout << "length = " << bits.size() << '\n'
                << value_line("shannon_bits", h1)
                << value_line("block_bits", hb.bits)
                << value_line("block_normalized", hb.normalized)
                << value_line("block_deficiency", randomness_deficiency(hb.bits, bits.size()));
    } else if (*compress) {
      const auto s = load(compress_in);
      const auto text = serialize_prices(s);
      const auto bits = binarize(s).to_ascii();
      std::cout << value_line("compress_real", compressibility(text))
                << value_line("compress_binary", compressibility(bits));
    } else if (*bdm_cmd) {
      const auto table = bdm::load_ctm_table(table_path);
      bdm::verify_compatible(table.meta(), expect_states);
      const auto bits = binarize(load(bdm_in));
      const auto r = bdm::block_decomposition(bits, table, {bdm_block, bdm_offset});
      std::cout << "table = " << table.meta().header_line() << '\n'
                << value_line("bdm_complexity", r.complexity)
                << value_line("bdm_normalized", r.normalized)
                << value_line("bdm_deficiency", r.deficiency)
                << "windows = " << r.windows << '\n'
                << "blocks_missing_from_table = " << r.blocks_missing_from_table << '\n';
    } else if (*ctm) {
      bdm::EnumerationOptions opts;
      opts.states = states;
      opts.step_bound = step_bound;
      opts.shards = shards;
      opts.samples = samples;
      opts.seed = seed;
      opts.threads = threads;
      opts.checkpoint_dir = checkpoint_dir;
      const auto dist = bdm::enumerate_machines(opts);
      const auto table = bdm::ctm_from_frequency(dist, max_length);
      bdm::save_ctm_table(table, ctm_out);
      std::cerr << table.meta().header_line() << "\nhalted = " << dist.halted
                << "\nentries = " << table.entries().size()
                << "\nfallback = " << table.fallback_count() << '\n';
    } else if (*fractal) {
      const auto grid = to_unit_grid(load(fractal_in));
      const auto est = scales == 2 ? hall_wood_dimension(grid) : hall_wood_ols(grid, scales);
      std::cout << value_line("dimension", est.dimension) << value_line("raw", est.raw);
    } else if (*report) {
      auto config = load_run_config(config_path);
      std::vector<std::string> problems;
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
          problems.push_back("--set " + o + ": expected key=value");
          continue;
        }
        apply_setting(config, o.substr(0, eq), o.substr(eq + 1), std::filesystem::current_path(),
                      problems);
      }
      if (!report_out.empty()) config.output_dir = report_out;
      if (!problems.empty()) throw ConfigError(problems);
      const auto outcome = run_report(config);
      for (const auto& f : outcome.failures) {
        std::cerr << "failed: " << f[0] << ' ' << f[1] << ": " << f[2] << '\n';
      }
      std::cerr << "wrote " << outcome.written.size() << " files to " << config.output_dir.string()
                << '\n';
      return outcome.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPartialFailure;
  }
  return kExitSuccess;
}
