#pragma once

// JSON and file plumbing: scalars, points, lines, orbit and census reports.
//
// Lines serialize as [n, q or "Q", p_01, p_02, ..., p_{n-1,n}] with the
// canonical Plücker normalization.  Scalars are integers over F_p, text
// ("3+2g") over extension fields, and over Q integers when they fit in 64
// bits, decimal strings otherwise.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fano/census.hpp"
#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/nodal.hpp"
#include "fano/phi.hpp"
#include "fano/polynomial.hpp"
#include "fano/projective.hpp"

namespace fano {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

template <Field K>
json scalar_to_json(const K& k, const element_t<K>& x) {
  if constexpr (std::same_as<K, PrimeField>) {
    (void)k;
    return x;
  } else if constexpr (std::same_as<K, RationalField>) {
    (void)k;
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) return static_cast<std::int64_t>(x.get_num().get_si());
    return x.get_str(10);
  } else {
    return k.to_text(x);
  }
}

template <Field K>
element_t<K> scalar_from_json(const K& k, const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) {
      const auto v = j.get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError("integer out of range");
      return k.from_int(static_cast<std::int64_t>(v));
    }
    return k.from_int(j.get<std::int64_t>());
  }
  if (j.is_string()) return k.parse(j.get<std::string>());
  throw ParseError("expected an integer or a string scalar");
}

template <Field K>
json vector_to_json(const K& k, std::span<const element_t<K>> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(k, x));
  return a;
}

template <Field K>
std::vector<element_t<K>> vector_from_json(const K& k, const json& j) {
  if (!j.is_array()) throw ParseError("expected a JSON array of scalars");
  std::vector<element_t<K>> v;
  for (const auto& x : j) v.push_back(scalar_from_json(k, x));
  return v;
}

template <Field K>
json line_to_json(const ProjectiveLine<K>& L) {
  const K& k = L.field();
  json a = json::array();
  a.push_back(L.ambient_dim());
  if constexpr (FiniteField<K>) {
    a.push_back(k.order());
  } else {
    a.push_back("Q");
  }
  for (const auto& p : L.plucker()) a.push_back(scalar_to_json(k, p));
  return a;
}

template <Field K>
ProjectiveLine<K> line_from_json(const K& k, const json& j) {
  if (!j.is_array() || j.size() < 3) throw ParseError("a line is [n, q, p_01, ...]");
  if (!j[0].is_number_unsigned()) throw ParseError("line dimension must be a nonnegative integer");
  const auto n = j[0].get<std::size_t>();
  if (n < 1 || n > 15) throw ParseError("line dimension out of range");
  if constexpr (FiniteField<K>) {
    if (!j[1].is_number_unsigned() || j[1].get<std::uint64_t>() != k.order())
      throw ParseError("line field does not match the working field");
  } else {
    if (!j[1].is_string() || j[1].get<std::string>() != "Q") throw ParseError("line field does not match Q");
  }
  if (j.size() != 2 + plucker_size(n)) throw ParseError("wrong number of Plücker coordinates");
  std::vector<element_t<K>> p;
  for (std::size_t i = 2; i < j.size(); ++i) p.push_back(scalar_from_json(k, j[i]));
  try {
    return line_from_plucker(k, n, std::span<const element_t<K>>(p));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid line: ") + e.what());
  }
}

// "1,-1,0,0,0,0" into a vector of scalars.
template <Field K>
std::vector<element_t<K>> parse_point(const K& k, std::string_view s) {
  std::vector<element_t<K>> v;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    auto tok = s.substr(start, end - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.empty()) throw ParseError("empty coordinate in point");
    v.push_back(k.parse(tok));
    start = end + 1;
  }
  return v;
}

// A line given either as its JSON array or as two points "a;b".
template <Field K>
ProjectiveLine<K> parse_line(const K& k, std::string_view s) {
  auto first = s.find_first_not_of(' ');
  if (first != std::string_view::npos && s[first] == '[') {
    json j;
    try {
      j = json::parse(s);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed line JSON: ") + e.what());
    }
    return line_from_json(k, j);
  }
  auto semi = s.find(';');
  if (semi == std::string_view::npos) throw ParseError("a line is a JSON array or two points 'a;b'");
  auto a = parse_point(k, s.substr(0, semi));
  auto b = parse_point(k, s.substr(semi + 1));
  if (a.size() != b.size()) throw ParseError("line points have different lengths");
  try {
    return line_from_points(k, a, b);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid line: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IOError", "cannot write " + path);
  out << text;
  if (!out) fail("IOError", "write failed for " + path);
}

// Polynomial of the given shape from its canonical text form.
template <Field K>
HomogeneousPoly<K> parse_poly_shaped(const K& k, std::string_view text, unsigned nvars, unsigned degree) {
  auto f = parse_poly(k, text);
  if (f.nvars() != nvars || f.degree() != degree)
    throw ParseError("expected a degree-" + std::to_string(degree) + " form in " + std::to_string(nvars) +
                     " variables");
  return f;
}

template <Field K>
HomogeneousPoly<K> read_poly_file(const K& k, const std::string& path, unsigned nvars, unsigned degree) {
  return parse_poly_shaped(k, read_text_file(path), nvars, degree);
}

// ---------------------------------------------------------------------------
// Reports

template <Field K>
json phi_result_to_json(const PhiResult<K>& r) {
  json j;
  j["kind"] = phi_kind_name(r.kind);
  j["kernel_dim"] = r.kernel_dim;
  if (r.image) j["image"] = line_to_json(*r.image);
  if (r.plane) {
    const K& k = r.plane->field();
    j["plane"] = json::array({vector_to_json<K>(k, r.plane->a()), vector_to_json<K>(k, r.plane->b()),
                              vector_to_json<K>(k, r.plane->c())});
  }
  if (r.residual) j["residual"] = to_text(*r.residual);
  return j;
}

template <Field K>
json orbit_to_json(const OrbitRecord<K>& rec) {
  json j;
  j["start"] = line_to_json(rec.iterates.front());
  json its = json::array();
  for (const auto& l : rec.iterates) its.push_back(line_to_json(l));
  j["iterates"] = std::move(its);
  if constexpr (std::same_as<K, RationalField>) {
    j["heights"] = rec.heights;
    std::vector<double> ratios;
    for (std::size_t i = 1; i < rec.heights.size(); ++i)
      ratios.push_back(rec.heights[i - 1] > 0 ? rec.heights[i] / rec.heights[i - 1] : 0.0);
    j["height_ratios"] = ratios;
  }
  json t;
  t["kind"] = orbit_end_name(rec.end);
  t["steps"] = rec.iterates.size() - 1;
  if (rec.end == OrbitEnd::Indeterminate || rec.end == OrbitEnd::DegenerateResidual) t["at_step"] = rec.stop_step;
  if (rec.end == OrbitEnd::CycleEntered) {
    t["preperiod"] = rec.preperiod;
    t["period"] = rec.period;
  }
  if (rec.height_capped) t["height_capped"] = true;
  j["termination"] = std::move(t);
  return j;
}

// Everything that determines a census or orbit run.
struct ExperimentConfig {
  std::string field = "7";
  std::uint64_t seed = 0;
  std::string cubic;                 // canonical text; empty when generated from the seed
  std::string cubic_source = "file"; // file | random_smooth
  std::uint64_t max_q = kDefaultMaxCensusQ;
  std::uint64_t max_steps = 0;
  double height_cap = kDefaultHeightCap;
  std::vector<std::uint64_t> primes;
  std::uint64_t samples = 0;
  std::string out;
  std::string csv_prefix;

  json to_json() const {
    json j;
    j["field"] = field;
    j["seed"] = seed;
    j["cubic_source"] = cubic_source;
    j["cubic"] = cubic;
    j["max_q"] = max_q;
    if (max_steps) j["max_steps"] = max_steps;
    if (height_cap != kDefaultHeightCap) j["height_cap"] = height_cap;
    if (!primes.empty()) j["primes"] = primes;
    if (samples) j["samples"] = samples;
    return j;
  }
};

inline json census_report_to_json(const CensusReport& rep, const ExperimentConfig& cfg) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = "census_full";
  j["config"] = cfg.to_json();
  j["field"] = rep.field;
  j["q"] = rep.q;
  j["lines"] = rep.lines;
  j["indeterminate"] = rep.indeterminate;
  j["degenerate_residual"] = rep.degenerate;
  j["mapped"] = rep.mapped;
  j["cycles"] = rep.cycles;
  j["periodic_lines"] = rep.periodic_lines;
  json cl = json::array();
  for (auto [len, n] : rep.cycle_lengths) cl.push_back({{"period", len}, {"cycles", n}});
  j["cycle_lengths"] = std::move(cl);
  json ot = json::array();
  for (const auto& [key, n] : rep.orbit_types)
    ot.push_back({{"preperiod", key.first}, {"period", key.second}, {"lines", n}});
  j["orbit_types"] = std::move(ot);
  json ua = json::array();
  for (auto [steps, n] : rep.undefined_after) ua.push_back({{"steps", steps}, {"lines", n}});
  j["undefined_after"] = std::move(ua);
  json in = json::array();
  for (auto [d, n] : rep.in_degree) in.push_back({{"in_degree", d}, {"lines", n}});
  j["in_degree"] = std::move(in);
  j["max_in_degree"] = rep.max_in_degree;
  j["image_size"] = rep.image_size;
  j["mean_preimages"] = rep.image_size ? static_cast<double>(rep.mapped) / static_cast<double>(rep.image_size) : 0.0;
  return j;
}

inline std::string in_degree_csv(const CensusReport& rep) {
  std::string s = "in_degree,lines\n";
  for (auto [d, n] : rep.in_degree) s += std::to_string(d) + "," + std::to_string(n) + "\n";
  return s;
}

inline std::string orbit_types_csv(const CensusReport& rep) {
  std::string s = "preperiod,period,lines\n";
  for (const auto& [key, n] : rep.orbit_types)
    s += std::to_string(key.first) + "," + std::to_string(key.second) + "," + std::to_string(n) + "\n";
  return s;
}

template <FiniteField K>
json node_report_to_json(const ThreeNodalReport<K>& rep, const K& k) {
  json j;
  j["q"] = rep.prime_power;
  json cn = json::array();
  for (const auto& n : rep.curve_nodes)
    cn.push_back({{"point", vector_to_json<K>(k, n.point)}, {"lambda", scalar_to_json(k, n.lambda)},
                  {"ordinary", n.ordinary}});
  j["curve_nodes"] = std::move(cn);
  json nodes = json::array();
  for (const auto& n : rep.nodes) nodes.push_back({{"point", vector_to_json<K>(k, n.point)}, {"ordinary", n.ordinary}});
  j["nodes"] = std::move(nodes);
  j["node_count"] = rep.nodes.size();
  j["collinear"] = rep.collinear;
  return j;
}

}  // namespace fano
