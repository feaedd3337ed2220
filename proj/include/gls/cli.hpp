#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gls/codec.hpp"
#include "gls/core.hpp"
#include "gls/dimension.hpp"
#include "gls/estimator.hpp"
#include "gls/io.hpp"
#include "gls/measures.hpp"
#include "gls/scheduler.hpp"

// Command-line front end. Results go to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 2 validation failure (bad flags, config, alpha),
// 3 hypothesis failure (domination, positive marginals), 4 non-convergence.

namespace gls::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kHypothesis = 3, kConvergence = 4 };

struct RunConfig {
  std::string config_path;
  std::string alpha;
  std::size_t depth = 0;
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  std::string scales;
  double tol = 1e-8;
  std::string format = "json";
  std::string mode = "all";
  // command-specific inputs
  std::optional<double> x;
  std::optional<double> w;
  std::string jseq;
  std::string word;
  std::string target = "level";
  std::string estimator = "coverage";
  double s = 1.0;
  std::string q;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(what + ": " + err.what());
  }
}

inline GlsFamily load_family(const RunConfig& cfg) {
  if (cfg.config_path.empty()) throw ValidationError("--config is required");
  return io::family_from_json(parse_json(read_file(cfg.config_path), "config"));
}

// --alpha is a JSON file keyed "j,k", or the inline form.
inline FrequencyVector load_alpha(const GlsFamily& family, const RunConfig& cfg) {
  if (cfg.alpha.empty()) throw ValidationError("--alpha is required");
  std::error_code ec;
  if (std::filesystem::is_regular_file(cfg.alpha, ec)) {
    return io::frequency_from_json(family, parse_json(read_file(cfg.alpha), "alpha"));
  }
  return io::parse_inline_alpha(family, cfg.alpha);
}

inline std::size_t require_depth(const RunConfig& cfg) {
  if (cfg.depth == 0) throw ValidationError("--depth must be positive");
  return cfg.depth;
}

inline JSequence driving_sequence(const GlsFamily& family, const RunConfig& cfg, std::size_t n) {
  if (!cfg.jseq.empty()) {
    JSequence j = io::parse_jseq(cfg.jseq);
    if (j.size() < n) throw ValidationError("--jseq shorter than --depth");
    return j;
  }
  if (cfg.w) return w_to_jseq(family, *cfg.w, n);
  throw ValidationError("one of --jseq or --w is required");
}

inline void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << '\n'; }

inline std::string word_text(std::span<const Digit> word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? " " : "") + to_string(word[i]);
  return s;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GlsFamily family = load_family(cfg);
  const auto dom = check_domination(family);
  nlohmann::json offenders = nlohmann::json::array();
  for (const Digit& e : dom.offenders) offenders.push_back({e.j, e.k});
  emit(out, {{"valid", true},
             {"systems", family.system_count()},
             {"digits", family.digit_count()},
             {"domination", dom.holds},
             {"offenders", offenders}});
  if (!dom) {
    err << "warning: hypothesis p_e > l_e fails for " << word_text(dom.offenders)
        << "; level-set dimension formulas do not apply\n";
  }
  return kOk;
}

inline int cmd_dim(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GlsFamily family = load_family(cfg);
  const FrequencyVector alpha = load_alpha(family, cfg);
  const auto report = dimension_report(family, alpha, parse_dimension_mode(cfg.mode), cfg.tol);
  for (const auto& note : report.notes) err << "note: " << note << '\n';
  emit(out, io::report_to_json(report));
  return kOk;
}

inline int cmd_encode(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GlsFamily family = load_family(cfg);
  const std::size_t n = require_depth(cfg);
  if (!cfg.x) throw ValidationError("--x is required");
  const JSequence jseq = driving_sequence(family, cfg, n);
  const Word word = encode(family, jseq, *cfg.x, n);
  emit(out, {{"word", io::word_to_json(word)}, {"triples", io::triples_to_json(to_triples(family, word))}});
  return kOk;
}

inline int cmd_decode(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GlsFamily family = load_family(cfg);
  if (cfg.word.empty()) throw ValidationError("--word is required");
  const Word word = io::word_from_json(family, parse_json(cfg.word, "word"));
  const DecodedPoint p = decode(family, word);
  emit(out, {{"w", p.w},
             {"x", p.x},
             {"w_interval", {p.w_lo, p.w_hi}},
             {"x_interval", {p.x_lo, p.x_hi}},
             {"w_width", p.w_width},
             {"x_width", p.x_width},
             {"series", series_partial_sum(to_triples(family, word))}});
  return kOk;
}

inline int cmd_schedule(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::size_t n = require_depth(cfg);
  if (cfg.config_path.empty()) {
    // Bare alphabet: symbols are printed as e1, e2, ...
    const auto alpha = io::parse_real_list(cfg.alpha, "alpha");
    const auto symbols = freq_sequence(alpha, n);
    if (cfg.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (std::size_t s : symbols) arr.push_back(s + 1);
      emit(out, {{"symbols", arr}, {"deviation", deviation(symbols, alpha)}});
    } else {
      for (std::size_t i = 0; i < symbols.size(); ++i) out << (i ? " " : "") << 'e' << symbols[i] + 1;
      out << '\n';
    }
    return kOk;
  }
  const GlsFamily family = load_family(cfg);
  const FrequencyVector alpha = load_alpha(family, cfg);
  const Word word = freq_sequence(family, alpha, n);
  if (cfg.format == "json") {
    emit(out, {{"word", io::word_to_json(word)}, {"deviation", deviation(family, word, alpha)}});
  } else {
    out << word_text(word) << '\n';
  }
  return kOk;
}

inline int cmd_weave(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GlsFamily family = load_family(cfg);
  const FrequencyVector alpha = load_alpha(family, cfg);
  const std::size_t n = require_depth(cfg);
  const Word word = weave(family, driving_sequence(family, cfg, n), alpha, n);
  if (cfg.format == "json") {
    emit(out, {{"word", io::word_to_json(word)}});
  } else {
    out << word_text(word) << '\n';
  }
  return kOk;
}

inline int cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GlsFamily family = load_family(cfg);
  const FrequencyVector alpha = load_alpha(family, cfg);
  const std::size_t n = cfg.depth == 0 ? 12 : cfg.depth;
  if (cfg.samples == 0) throw ValidationError("--samples must be positive");
  const std::vector<double> scales =
      cfg.scales.empty() ? default_scales(family) : io::parse_real_list(cfg.scales, "scales");
  EntropyEstimator estimator;
  if (cfg.estimator == "coverage") {
    estimator = EntropyEstimator::coverage_adjusted;
  } else if (cfg.estimator == "plugin") {
    estimator = EntropyEstimator::plug_in;
  } else {
    throw ValidationError("--estimator must be coverage or plugin");
  }

  nlohmann::json result;
  if (cfg.target == "level") {
    const PlanarCloud cloud = sample_points(family, alpha, n, cfg.samples, cfg.seed);
    if (cfg.format == "csv") {
      out << io::cloud_to_csv(cloud);
      return kOk;
    }
    result = io::fit_to_json(grid_entropy_dim(cloud, scales, estimator));
    if (check_domination(family)) result["analytic"] = dim_level_set(family, alpha);
  } else if (cfg.target == "fibre") {
    const FibreCloud cloud = sample_fibre_points(family, alpha, n, cfg.samples, cfg.seed);
    if (cfg.format == "csv") {
      out << io::cloud_to_csv(cloud);
      return kOk;
    }
    result = io::fit_to_json(grid_entropy_dim(cloud, scales, estimator));
    result["analytic"] = dim_fibre(family, alpha);
  } else {
    throw ValidationError("--target must be level or fibre");
  }
  result["target"] = cfg.target;
  result["depth"] = n;
  result["samples"] = cfg.samples;
  result["seed"] = cfg.seed;
  emit(out, result);
  return kOk;
}

inline int cmd_pressure(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GlsFamily family = load_family(cfg);
  const FrequencyVector alpha = load_alpha(family, cfg);
  std::vector<double> q(family.digit_count(), 0.0);
  if (!cfg.q.empty()) {
    q = io::parse_real_list(cfg.q, "q");
    if (q.size() != family.digit_count()) throw ValidationError("--q needs one value per digit");
  }
  const auto minimum = inf_q_pressure(family, alpha, cfg.s);
  emit(out, {{"s", cfg.s},
             {"pressure", pressure(family, alpha, cfg.s, q)},
             {"inf_q", minimum.value},
             {"iterations", minimum.iterations}});
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"GLS number systems with redundancy: expansions, digit frequencies, dimensions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_alpha) {
    sub->add_option("--config", cfg.config_path, "family config (JSON)");
    if (needs_alpha) sub->add_option("--alpha", cfg.alpha, "alpha: JSON file keyed \"j,k\", inline \"j,k:v ...\", uniform, lebesgue");
    sub->add_option("--format", cfg.format, "json, text or csv");
  };

  auto* validate = app.add_subcommand("validate", "validate a family and check domination");
  add_common(validate, false);

  auto* dim = app.add_subcommand("dim", "dimension report");
  add_common(dim, true);
  dim->add_option("--mode", cfg.mode, "closed, variational, lyapunov, fibre, all");
  dim->add_option("--tol", cfg.tol, "bisection tolerance");

  auto* enc = app.add_subcommand("encode", "encode x along a driving sequence");
  add_common(enc, false);
  enc->add_option("--x", cfg.x, "point in [0,1]");
  enc->add_option("--w", cfg.w, "driving coordinate; its greedy coding is used");
  enc->add_option("--jseq", cfg.jseq, "explicit driving sequence, e.g. 0,1,1");
  enc->add_option("--depth", cfg.depth, "number of digits");

  auto* dec = app.add_subcommand("decode", "decode a word to a point");
  add_common(dec, false);
  dec->add_option("--word", cfg.word, "JSON array of [j,k] pairs");

  auto* sched = app.add_subcommand("schedule", "digit sequence with prescribed frequencies");
  add_common(sched, true);
  sched->add_option("--depth", cfg.depth, "sequence length");

  auto* wv = app.add_subcommand("weave", "weave branch digits onto a driving sequence");
  add_common(wv, true);
  wv->add_option("--w", cfg.w, "driving coordinate");
  wv->add_option("--jseq", cfg.jseq, "explicit driving sequence");
  wv->add_option("--depth", cfg.depth, "sequence length");

  auto* est = app.add_subcommand("estimate", "Monte-Carlo dimension estimate");
  add_common(est, true);
  est->add_option("--depth", cfg.depth, "word depth per sample (default 12)");
  est->add_option("--samples", cfg.samples, "number of samples");
  est->add_option("--seed", cfg.seed, "master seed");
  est->add_option("--scales", cfg.scales, "grid meshes, e.g. 1/9,1/27,1/81,1/243");
  est->add_option("--target", cfg.target, "level or fibre");
  est->add_option("--estimator", cfg.estimator, "coverage or plugin");

  auto* pres = app.add_subcommand("pressure", "pressure and its infimum over q");
  add_common(pres, true);
  pres->add_option("--s", cfg.s, "singular value exponent in [0,2]");
  pres->add_option("--q", cfg.q, "q vector, one value per digit (default 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*validate) return detail::cmd_validate(cfg, out, err);
    if (*dim) return detail::cmd_dim(cfg, out, err);
    if (*enc) return detail::cmd_encode(cfg, out, err);
    if (*dec) return detail::cmd_decode(cfg, out, err);
    if (*sched) return detail::cmd_schedule(cfg, out, err);
    if (*wv) return detail::cmd_weave(cfg, out, err);
    if (*est) return detail::cmd_estimate(cfg, out, err);
    if (*pres) return detail::cmd_pressure(cfg, out, err);
  } catch (const HypothesisError& e) {
    err << "hypothesis failure: " << e.what() << '\n';
    return kHypothesis;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << '\n';
    return kConvergence;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace gls::cli
