#pragma once

// Command-line front end: gen, analyze, netlist, cycles, compare.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 every requested
// analysis failed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <locale>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptent/ptent.hpp"

namespace ptent::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kAllAnalysesFailed = 3 };

// Configuration problem detected after argument parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string hex_word(Word w, BitWidth width, bool prefix) {
  std::ostringstream os;
  if (prefix) os << "0x";
  os << std::uppercase << std::hex << std::setw((width.bits() + 3) / 4)
     << std::setfill('0') << w;
  return os.str();
}

inline Word parse_word(const std::string& text, BitWidth width) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    v = std::stoull(hex ? text.substr(2) : text, &used, hex ? 16 : 10);
    if (hex) used += 2;
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse seed '" + text + "'");
  }
  if (used != text.size() || text[0] == '-') throw UsageError("cannot parse seed '" + text + "'");
  if (!width.contains(v)) {
    throw UsageError("seed " + text + " does not fit in " + std::to_string(width.bits()) +
                     " bits");
  }
  return v;
}

/// Resolves "random" from OS entropy (never a degenerate seed) or parses it.
inline Word resolve_seed(const std::string& text, BitWidth width, std::ostream& err) {
  if (text == "random") {
    std::random_device rd;
    Word w = 0;
    do {
      w = ((static_cast<Word>(rd()) << 32) | rd()) & width.mask();
    } while (is_degenerate_seed(w, width));
    err << "seed: " << hex_word(w, width, true) << '\n';
    return w;
  }
  return parse_word(text, width);
}

enum class Format { bits, hex, csv, raw };

inline void write_trajectory(std::ostream& os, const std::vector<Word>& words, BitWidth width,
                             Format format, Tap tap) {
  switch (format) {
    case Format::bits:
      for (Word w : words) os << output_bit(w, width, tap) << '\n';
      break;
    case Format::hex:
      for (Word w : words) os << hex_word(w, width, false) << '\n';
      break;
    case Format::csv: {
      os.imbue(std::locale::classic());
      os << std::setprecision(std::numeric_limits<double>::max_digits10);
      os << "index,word,value\n";
      for (std::size_t i = 0; i < words.size(); ++i) {
        os << i << ',' << hex_word(words[i], width, true) << ',' << decode(words[i], width)
           << '\n';
      }
      break;
    }
    case Format::raw: {
      unsigned char byte = 0;
      int filled = 0;
      for (Word w : words) {
        byte = static_cast<unsigned char>((byte << 1) | output_bit(w, width, tap));
        if (++filled == 8) {
          os.put(static_cast<char>(byte));
          byte = 0;
          filled = 0;
        }
      }
      if (filled) os.put(static_cast<char>(byte << (8 - filled)));
      break;
    }
  }
}

// Opens path for writing, or hands back the fallback stream for "" / "-".
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback, bool binary = false) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(
        path, binary ? std::ios::out | std::ios::binary | std::ios::trunc
                     : std::ios::out | std::ios::trunc);
    if (!*file_) throw UsageError("cannot write to '" + path + "'");
    os_ = file_.get();
  }

  std::ostream& stream() { return *os_; }

  void finish(const std::string& path) {
    os_->flush();
    if (!*os_) throw UsageError("write failed for '" + (path.empty() ? "-" : path) + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

struct RunOptions {
  int bits = 0;
  std::string seed;
  std::size_t n = 0;
  bool no_perturb = false;
  std::string backend = "word";
  std::string tap = "msb";
  std::string format = "bits";
  std::string out;
};

inline const std::map<std::string, Format> kFormats{
    {"bits", Format::bits}, {"hex", Format::hex}, {"csv", Format::csv}, {"raw", Format::raw}};
inline const std::map<std::string, Tap> kTaps{{"msb", Tap::msb}, {"lsb", Tap::lsb}};

inline void add_width(CLI::App* app, RunOptions& o) {
  app->add_option("--bits", o.bits, "Register width k (2..64)")->required();
}

inline void add_run_options(CLI::App* app, RunOptions& o, bool with_format) {
  app->add_option("--seed", o.seed, "Initial word: decimal, 0x-hex, or 'random'");
  app->add_option("--n", o.n, "Number of steps")->check(CLI::PositiveNumber);
  app->add_flag("--no-perturb", o.no_perturb, "Disable the perturbation bit");
  app->add_option("--tap", o.tap, "Output bit: msb (default) or lsb")
      ->check(CLI::IsMember({"msb", "lsb"}));
  if (with_format) {
    app->add_option("--format", o.format, "bits | hex | csv | raw")
        ->check(CLI::IsMember({"bits", "hex", "csv", "raw"}));
    app->add_option("--out", o.out, "Output path (default stdout)");
  }
}

inline BitWidth checked_width(int bits) {
  try {
    return BitWidth(bits);
  } catch (const RangeError& e) {
    throw UsageError(e.what());
  }
}

struct ResolvedRun {
  MapConfig config;
  Word seed;
};

inline ResolvedRun resolve_run(const RunOptions& o, std::ostream& err) {
  const BitWidth width = checked_width(o.bits);
  if (o.seed.empty()) throw UsageError("--seed is required (use --seed random for OS entropy)");
  if (o.n < 1) throw UsageError("--n is required and must be >= 1");
  const Word seed = resolve_seed(o.seed, width, err);
  if (is_degenerate_seed(seed, width)) {
    err << "warning: degenerate seed " << hex_word(seed, width, true)
        << " falls into the fixed point 0\n";
  }
  return {{width, !o.no_perturb}, seed};
}

inline std::vector<Word> trajectory(const ResolvedRun& r, std::size_t n, bool netlist_backend) {
  if (netlist_backend) return ptent::run(build_tent_netlist(r.config.width, r.config.perturbed), r.seed, n);
  return iterate(r.config, r.seed, n);
}

inline void emit_trajectory(const RunOptions& o, const std::vector<Word>& words, BitWidth width,
                            std::ostream& out) {
  const Format format = kFormats.at(o.format);
  OutputTarget target(o.out, out, format == Format::raw);
  write_trajectory(target.stream(), words, width, format, kTaps.at(o.tap));
  target.finish(o.out);
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOptions {
  std::vector<std::string> tests;
  std::string report;
  std::string csv_dir;
  std::size_t max_lag = 100;
  std::size_t bins = 64;
  RosensteinParams lyap;
};

inline const std::vector<std::string> kAnalyses{"entropy", "autocorr", "lyapunov", "histogram",
                                                "return-map"};

class Analyzer {
 public:
  Analyzer(const AnalyzeOptions& opt, const ResolvedRun& run, std::vector<Word> words, Tap tap)
      : opt_(opt), run_(run), words_(std::move(words)), tap_(tap) {
    series_ = decode_series(words_, run_.config.width);
    bits_ = output_bits(words_, run_.config.width, tap_);
  }

  nlohmann::json run_test(const std::string& name) {
    nlohmann::json entry{{"test", name}};
    try {
      if (name == "entropy") entropy(entry);
      else if (name == "autocorr") autocorr(entry);
      else if (name == "lyapunov") lyapunov(entry);
      else if (name == "histogram") hist(entry);
      else if (name == "return-map") return_map(entry);
    } catch (const std::exception& e) {
      entry.erase("value");
      entry["error"] = e.what();
    }
    return entry;
  }

 private:
  template <class Fn>
  std::string write_csv(const std::string& file, Fn&& fn) {
    if (opt_.csv_dir.empty()) return {};
    const std::filesystem::path path = std::filesystem::path(opt_.csv_dir) / file;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    fn(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + path.string());
    return path.string();
  }

  static void attach_csv(nlohmann::json& entry, const std::string& path) {
    entry["csv"] = path.empty() ? nlohmann::json::array() : nlohmann::json::array({path});
  }

  void entropy(nlohmann::json& entry) {
    const EntropyResult bitwise = bit_entropy(bits_);
    std::uint64_t ones = 0;
    for (int b : bits_) ones += static_cast<std::uint64_t>(b);
    const HistogramResult h = histogram(series_, 64);
    entry["value"] = bitwise.h;
    entry["parameters"] = {{"symbols", "output bit"},
                           {"tap", tap_ == Tap::msb ? "msb" : "lsb"},
                           {"log_base", 2}};
    entry["summary"] = {{"ones", ones},
                        {"zeros", bits_.size() - ones},
                        {"value_entropy_64_bins", shannon_entropy(h.counts).h}};
    attach_csv(entry, {});
  }

  void autocorr(nlohmann::json& entry) {
    const AutocorrResult a = autocorrelation(series_, opt_.max_lag);
    const auto [lag, peak] = a.peak_off_zero();
    entry["value"] = peak;
    entry["parameters"] = {{"max_lag", opt_.max_lag}, {"series", "decoded values"}};
    nlohmann::json summary{{"r0", a.r[0]}, {"lag_of_max", lag}};
    std::vector<double> bitseries(bits_.begin(), bits_.end());
    try {
      summary["output_bit_max_abs_r"] = autocorrelation(bitseries, opt_.max_lag).peak_off_zero().second;
    } catch (const std::exception&) {
      summary["output_bit_max_abs_r"] = nullptr;
    }
    entry["summary"] = summary;
    attach_csv(entry, write_csv("autocorr.csv", [&](std::ostream& os) {
                 csv::write_autocorrelation(os, a);
               }));
  }

  void lyapunov(nlohmann::json& entry) {
    const RosensteinParams& p = opt_.lyap;
    const LyapunovEstimate e = lyapunov_rosenstein(series_, p);
    entry["value"] = e.lambda;
    entry["parameters"] = {{"embed_dim", p.embed_dim},
                           {"delay", p.delay},
                           {"theiler_window", p.theiler_window},
                           {"max_steps", p.max_steps},
                           {"fit_range", {p.fit_first, p.fit_last}},
                           {"units", "natural log per iteration"}};
    entry["summary"] = {{"neighbor_count", e.neighbor_count},
                        {"direct", lyapunov_direct(series_.size())}};
    attach_csv(entry, write_csv("divergence.csv", [&](std::ostream& os) {
                 csv::write_divergence(os, e);
               }));
  }

  void hist(nlohmann::json& entry) {
    const HistogramResult h = histogram(series_, opt_.bins);
    entry["value"] = h.max_relative_deviation();
    entry["parameters"] = {{"bins", opt_.bins}};
    entry["summary"] = {{"expected_per_bin", h.expected},
                        {"chi_square", h.chi_square},
                        {"min_count", *std::min_element(h.counts.begin(), h.counts.end())},
                        {"max_count", *std::max_element(h.counts.begin(), h.counts.end())}};
    attach_csv(entry, write_csv("histogram.csv", [&](std::ostream& os) {
                 csv::write_histogram(os, h);
               }));
  }

  void return_map(nlohmann::json& entry) {
    const auto pairs = first_return_pairs(series_);
    entry["value"] = max_tent_deviation(pairs);
    entry["parameters"] = nlohmann::json::object();
    entry["summary"] = {{"pairs", pairs.size()},
                        {"ulp_bound", static_cast<double>(run_.config.width.ulp_star())}};
    attach_csv(entry, write_csv("return_map.csv", [&](std::ostream& os) {
                 csv::write_first_return(os, pairs);
               }));
  }

  const AnalyzeOptions& opt_;
  ResolvedRun run_;
  std::vector<Word> words_;
  Tap tap_;
  std::vector<double> series_;
  std::vector<int> bits_;
};

// ---------------------------------------------------------------------------

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarized fixed-point tent map generator"};
  app.require_subcommand(1);

  RunOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "Generate a trajectory");
  add_width(gen, gen_opt);
  add_run_options(gen, gen_opt, true);
  gen->add_option("--backend", gen_opt.backend, "word | netlist")
      ->check(CLI::IsMember({"word", "netlist"}));

  RunOptions an_opt;
  AnalyzeOptions analyze_opt;
  std::string tests_arg;
  auto* analyze = app.add_subcommand("analyze", "Run statistical analyses on a trajectory");
  add_width(analyze, an_opt);
  add_run_options(analyze, an_opt, false);
  analyze->add_option("--backend", an_opt.backend, "word | netlist")
      ->check(CLI::IsMember({"word", "netlist"}));
  analyze->add_option("--tests", analyze_opt.tests,
                      "Comma list of entropy,autocorr,lyapunov,histogram,return-map")
      ->delimiter(',')
      ->required()
      ->check(CLI::IsMember(kAnalyses));
  analyze->add_option("--report", analyze_opt.report, "JSON report path (default stdout)");
  analyze->add_option("--csv-dir", analyze_opt.csv_dir, "Directory for CSV outputs");
  analyze->add_option("--max-lag", analyze_opt.max_lag, "Autocorrelation lags")->check(CLI::PositiveNumber);
  analyze->add_option("--hist-bins", analyze_opt.bins, "Histogram bins")->check(CLI::Range(2, 1 << 20));
  analyze->add_option("--embed-dim", analyze_opt.lyap.embed_dim);
  analyze->add_option("--delay", analyze_opt.lyap.delay);
  analyze->add_option("--theiler", analyze_opt.lyap.theiler_window);
  analyze->add_option("--max-steps", analyze_opt.lyap.max_steps);
  analyze->add_option("--fit-first", analyze_opt.lyap.fit_first);
  analyze->add_option("--fit-last", analyze_opt.lyap.fit_last);

  RunOptions nl_opt;
  bool nl_stats = false, nl_simulate = false;
  std::optional<std::string> nl_export;
  std::string nl_input;
  auto* netlist = app.add_subcommand("netlist", "Gate-level circuit: census, export, simulation");
  add_width(netlist, nl_opt);
  add_run_options(netlist, nl_opt, true);
  netlist->add_flag("--stats", nl_stats, "Print the element census");
  netlist->add_option("--export", nl_export, "Write the text netlist (path or -)")
      ->expected(0, 1);
  netlist->add_flag("--simulate", nl_simulate, "Run the gate-level simulation");
  netlist->add_option("--input", nl_input, "Read a text netlist instead of building one");

  RunOptions cy_opt;
  bool cy_exhaustive = false;
  auto* cycles = app.add_subcommand("cycles", "Transient and period of orbits");
  add_width(cycles, cy_opt);
  cycles->add_option("--seed", cy_opt.seed, "Single seed");
  cycles->add_flag("--exhaustive", cy_exhaustive, "Every seed (k <= 20)");
  cycles->add_flag("--no-perturb", cy_opt.no_perturb, "Disable the perturbation bit");
  cycles->add_option("--out", cy_opt.out, "CSV path (default stdout)");

  std::vector<int> cmp_widths{16, 32, 64};
  auto* compare = app.add_subcommand("compare", "Elements per bit against published designs");
  compare->add_option("--bits", cmp_widths, "Widths to list")->delimiter(',');

  std::vector<std::string> argv_store{"ptent"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const ResolvedRun r = resolve_run(gen_opt, err);
      emit_trajectory(gen_opt, trajectory(r, gen_opt.n, gen_opt.backend == "netlist"),
                      r.config.width, out);
      return kOk;
    }

    if (*analyze) {
      const ResolvedRun r = resolve_run(an_opt, err);
      const Tap tap = kTaps.at(an_opt.tap);
      if (!analyze_opt.csv_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(analyze_opt.csv_dir, ec);
      }
      std::vector<Word> words = trajectory(r, an_opt.n, an_opt.backend == "netlist");
      words.erase(words.begin());  // analyses see the n states after the seed
      Analyzer analyzer(analyze_opt, r, std::move(words), tap);

      nlohmann::json report{{"width", r.config.width.bits()},
                            {"seed", hex_word(r.seed, r.config.width, true)},
                            {"variant", r.config.perturbed ? "perturbed" : "unperturbed"},
                            {"backend", an_opt.backend},
                            {"tap", an_opt.tap},
                            {"n", an_opt.n},
                            {"tests", nlohmann::json::array()}};
      bool any_ok = false;
      for (const auto& name : analyze_opt.tests) {
        nlohmann::json entry = analyzer.run_test(name);
        any_ok = any_ok || !entry.contains("error");
        report["tests"].push_back(std::move(entry));
      }
      OutputTarget target(analyze_opt.report, out);
      target.stream() << report.dump(2) << '\n';
      target.finish(analyze_opt.report);
      return any_ok ? kOk : kAllAnalysesFailed;
    }

    if (*netlist) {
      const BitWidth width = checked_width(nl_opt.bits);
      Netlist nl;
      if (!nl_input.empty()) {
        std::ifstream in(nl_input);
        if (!in) throw UsageError("cannot read '" + nl_input + "'");
        nl = parse_netlist(in);
        if (nl.width != width) throw UsageError("netlist width does not match --bits");
      } else {
        nl = build_tent_netlist(width, !nl_opt.no_perturb);
      }
      if (!nl_stats && !nl_export && !nl_simulate) {
        throw UsageError("netlist needs --stats, --export or --simulate");
      }
      if (nl_stats) {
        const ElementCensus c = element_stats(nl);
        out << "XOR2 " << c.xor2 << ", DFF " << c.dff << ", MUX " << c.mux << ", total "
            << c.total() << '\n';
      }
      if (nl_export) {
        OutputTarget target(*nl_export, out);
        target.stream() << to_text(nl);
        target.finish(*nl_export);
      }
      if (nl_simulate) {
        const ResolvedRun r = resolve_run(nl_opt, err);
        emit_trajectory(nl_opt, ptent::run(nl, r.seed, nl_opt.n), width, out);
      }
      return kOk;
    }

    if (*cycles) {
      const BitWidth width = checked_width(cy_opt.bits);
      const MapConfig config{width, !cy_opt.no_perturb};
      std::vector<CycleReport> reports;
      if (!cy_opt.seed.empty()) {
        reports.push_back(cycle_detect(config, resolve_seed(cy_opt.seed, width, err)));
      } else if (cy_exhaustive) {
        if (width.bits() > kMaxCensusBits) {
          throw UsageError("--exhaustive supports k <= " + std::to_string(kMaxCensusBits));
        }
        reports = cycle_census(width, config.perturbed).reports;
      } else {
        throw UsageError("cycles needs --seed or --exhaustive");
      }

      OutputTarget target(cy_opt.out, out);
      std::ostream& os = target.stream();
      os << "seed,transient,period,reaches_zero\n";
      std::uint64_t max_period = 0, zero = 0;
      double sum = 0.0;
      for (const auto& rep : reports) {
        os << hex_word(rep.seed, width, true) << ',' << rep.transient << ',' << rep.period << ','
           << (rep.reaches_zero ? 1 : 0) << '\n';
        max_period = std::max(max_period, rep.period);
        zero += rep.reaches_zero ? 1 : 0;
        sum += static_cast<double>(rep.period);
      }
      target.finish(cy_opt.out);
      out << "# seeds: " << reports.size() << '\n'
          << "# variant: " << (config.perturbed ? "perturbed" : "unperturbed") << '\n'
          << "# mean period: " << sum / static_cast<double>(reports.size()) << '\n'
          << "# max period: " << max_period << '\n'
          << "# zero-reaching seeds: " << zero << '\n';
      return kOk;
    }

    if (*compare) {
      std::vector<ComparisonRow> rows;
      for (int k : cmp_widths) rows.push_back(this_design_row(checked_width(k)));
      for (auto& row : literature_rows()) rows.push_back(row);
      char line[128];
      std::snprintf(line, sizeof line, "%-32s %5s %9s %7s\n", "source", "bits", "elements", "ratio");
      out << line;
      for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%-32s %5d %9zu %7.3f\n", row.source.c_str(), row.bits,
                      row.elements, row.ratio);
        out << line;
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ptent::cli
