#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gls/core.hpp"
#include "gls/dimension.hpp"
#include "gls/estimator.hpp"
#include "gls/frequency.hpp"
#include "gls/rational.hpp"

// JSON and CSV formats shared by the CLI and by callers that persist results.
//
//   family:     {"systems":[{"partition":[...],"flips":[...]}...],"weights":[...]}
//               Numbers may be JSON numbers or strings ("1/3", "0.25"); strings
//               are read exactly.
//   word:       [[j,k], ...]
//   triples:    [[s,K,t], ...]
//   frequency:  {"j,k": value, ...}  (missing digits are 0)
//   cloud CSV:  header "w,x" (or "x" for a fibre cloud), one point per row

namespace gls::io {

using nlohmann::json;

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

inline const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

inline const json& array_at(const json& obj, const char* key, const std::string& path) {
  const json& a = member(obj, key, path);
  if (!a.is_array()) fail(path + "." + key, "expected an array");
  return a;
}

// Exact rational when the value is a string or an integer, nullopt for a
// JSON float.
inline std::optional<Rational> exact_number(const json& v, const std::string& path) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>(), 1);
    if (v.is_number()) return std::nullopt;
  } catch (const ValidationError& err) {
    fail(path, err.what());
  }
  fail(path, "expected a number or numeric string");
}

inline double real_number(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_real(v.get<std::string>());
    } catch (const ValidationError& err) {
      fail(path, err.what());
    }
  }
  fail(path, "expected a number or numeric string");
}

}  // namespace detail

inline GlsSystem system_from_json(const json& j, const std::string& path) {
  const json& part = detail::array_at(j, "partition", path);
  const json& flips_json = detail::array_at(j, "flips", path);
  std::vector<int> flips;
  for (std::size_t i = 0; i < flips_json.size(); ++i) {
    if (!flips_json[i].is_number_integer()) {
      detail::fail(path + ".flips[" + std::to_string(i) + "]", "expected 0 or 1");
    }
    flips.push_back(flips_json[i].get<int>());
  }
  std::vector<Rational> exact;
  std::vector<double> approx;
  bool all_exact = true;
  for (std::size_t i = 0; i < part.size(); ++i) {
    const std::string p = path + ".partition[" + std::to_string(i) + "]";
    auto r = detail::exact_number(part[i], p);
    if (r) {
      exact.push_back(*r);
      approx.push_back(r->to_double());
    } else {
      all_exact = false;
      approx.push_back(detail::real_number(part[i], p));
    }
  }
  try {
    return all_exact ? GlsSystem(exact, std::move(flips)) : GlsSystem(std::move(approx), std::move(flips));
  } catch (const ValidationError& err) {
    detail::fail(path, err.what());
  }
}

inline GlsFamily family_from_json(const json& j) {
  const json& systems_json = detail::array_at(j, "systems", "config");
  const json& weights_json = detail::array_at(j, "weights", "config");
  std::vector<GlsSystem> systems;
  for (std::size_t i = 0; i < systems_json.size(); ++i) {
    systems.push_back(system_from_json(systems_json[i], "config.systems[" + std::to_string(i) + "]"));
  }
  std::vector<double> weights;
  for (std::size_t i = 0; i < weights_json.size(); ++i) {
    weights.push_back(detail::real_number(weights_json[i], "config.weights[" + std::to_string(i) + "]"));
  }
  try {
    return GlsFamily(std::move(systems), std::move(weights));
  } catch (const ValidationError& err) {
    detail::fail("config", err.what());
  }
}

inline json family_to_json(const GlsFamily& family) {
  json systems = json::array();
  for (const GlsSystem& s : family.systems()) {
    json flips = json::array();
    for (std::size_t k = 0; k < s.size(); ++k) flips.push_back(s.flipped(k) ? 1 : 0);
    systems.push_back({{"partition", std::vector<double>(s.partition().begin(), s.partition().end())},
                       {"flips", flips}});
  }
  return {{"systems", systems},
          {"weights", std::vector<double>(family.weights().begin(), family.weights().end())}};
}

inline json word_to_json(std::span<const Digit> word) {
  json out = json::array();
  for (const Digit& e : word) out.push_back({e.j, e.k});
  return out;
}

inline Word word_from_json(const GlsFamily& family, const json& j) {
  if (!j.is_array()) detail::fail("word", "expected an array of [j,k] pairs");
  Word out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& pair = j[i];
    const std::string path = "word[" + std::to_string(i) + "]";
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() || !pair[1].is_number_unsigned()) {
      detail::fail(path, "expected [j,k] with nonnegative integers");
    }
    Digit e{pair[0].get<std::size_t>(), pair[1].get<std::size_t>()};
    if (!family.contains(e)) detail::fail(path, "unknown digit " + to_string(e));
    out.push_back(e);
  }
  return out;
}

inline json triples_to_json(std::span<const DigitTriple> triples) {
  json out = json::array();
  for (const DigitTriple& d : triples) out.push_back({d.s, d.K, d.t});
  return out;
}

inline std::string digit_key(const Digit& e) { return std::to_string(e.j) + "," + std::to_string(e.k); }

inline Digit parse_digit_key(std::string_view key, const std::string& path) {
  auto comma = key.find(',');
  if (comma == std::string_view::npos) detail::fail(path, "digit key must look like 'j,k'");
  try {
    auto j = gls::detail::parse_int(gls::detail::trim(key.substr(0, comma)), key);
    auto k = gls::detail::parse_int(gls::detail::trim(key.substr(comma + 1)), key);
    if (j < 0 || k < 0) detail::fail(path, "negative digit index");
    return {static_cast<std::size_t>(j), static_cast<std::size_t>(k)};
  } catch (const ValidationError& err) {
    detail::fail(path, err.what());
  }
}

inline json frequency_to_json(const GlsFamily& family, const FrequencyVector& alpha) {
  json out = json::object();
  for (std::size_t i = 0; i < alpha.size(); ++i) out[digit_key(family.digit(i))] = alpha[i];
  return out;
}

inline FrequencyVector frequency_from_json(const GlsFamily& family, const json& j) {
  if (!j.is_object()) detail::fail("alpha", "expected an object keyed \"j,k\"");
  std::vector<double> values(family.digit_count(), 0.0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string path = "alpha[\"" + it.key() + "\"]";
    const Digit e = parse_digit_key(it.key(), path);
    if (!family.contains(e)) detail::fail(path, "unknown digit " + to_string(e));
    values[family.index_of(e)] = detail::real_number(it.value(), path);
  }
  try {
    return FrequencyVector(family, std::move(values));
  } catch (const ValidationError& err) {
    detail::fail("alpha", err.what());
  }
}

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view text, std::string_view separators) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (separators.find(c) != std::string_view::npos) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

}  // namespace detail

// Inline form "j,k:value j,k:value ..." (pairs separated by spaces or ';').
// The keywords "uniform" and "lebesgue" select those frequency vectors.
inline FrequencyVector parse_inline_alpha(const GlsFamily& family, std::string_view text) {
  const std::string trimmed(gls::detail::trim(text));
  if (trimmed == "uniform") return FrequencyVector::uniform(family);
  if (trimmed == "lebesgue") return FrequencyVector::lebesgue(family);
  std::vector<double> values(family.digit_count(), 0.0);
  for (const std::string& token : detail::split_tokens(text, " ;\t\n")) {
    auto colon = token.find(':');
    if (colon == std::string::npos) detail::fail("alpha", "expected 'j,k:value', got '" + token + "'");
    const Digit e = parse_digit_key(std::string_view(token).substr(0, colon), "alpha");
    if (!family.contains(e)) detail::fail("alpha", "unknown digit " + to_string(e));
    values[family.index_of(e)] = detail::real_number(json(token.substr(colon + 1)), "alpha[" + token + "]");
  }
  try {
    return FrequencyVector(family, std::move(values));
  } catch (const ValidationError& err) {
    detail::fail("alpha", err.what());
  }
}

// Comma- or space-separated reals, exact forms allowed ("1/2,1/3,1/6").
inline std::vector<double> parse_real_list(std::string_view text, const std::string& what) {
  std::vector<double> out;
  for (const std::string& token : detail::split_tokens(text, ", ;\t\n")) {
    out.push_back(detail::real_number(json(token), what));
  }
  if (out.empty()) detail::fail(what, "empty list");
  return out;
}

inline JSequence parse_jseq(std::string_view text) {
  JSequence out;
  for (const std::string& token : detail::split_tokens(text, ", ;\t\n")) {
    auto v = gls::detail::parse_int(token, token);
    if (v < 0) detail::fail("jseq", "negative index");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

inline json report_to_json(const DimensionReport& r) {
  json out = json::object();
  out["entropy"] = r.entropy;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) out[key] = *v;
  };
  put("chi1", r.chi1);
  put("chi2", r.chi2);
  put("lyapunov_dim", r.lyapunov_dim);
  put("dim_level_set", r.dim_level_set);
  put("dim_variational", r.dim_variational);
  put("dim_fibre", r.dim_fibre);
  if (r.arm) out["arm"] = to_string(*r.arm);
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

inline json fit_to_json(const ScalingFit& fit) {
  return {{"scales", fit.scales},
          {"statistics", fit.statistics},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"residual", fit.residual}};
}

template <std::size_t D>
std::string cloud_to_csv(const PointCloud<D>& cloud) {
  std::ostringstream out;
  out << (D == 2 ? "w,x" : "x") << '\n';
  for (const auto& p : cloud.points) {
    for (std::size_t d = 0; d < D; ++d) out << (d ? "," : "") << format_double(p[d]);
    out << '\n';
  }
  return out.str();
}

}  // namespace gls::io
