// fano: command-line front end for lines on cubic fourfolds, the
// tangent-plane self-map, nodal threefolds, and finite-field censuses.
//
// Exit codes: 0 success (indeterminacy is an answer), 1 domain error with a
// JSON object on stderr, 2 usage or input-format error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fano/census.hpp"
#include "fano/cubic.hpp"
#include "fano/fields.hpp"
#include "fano/io.hpp"
#include "fano/nodal.hpp"
#include "fano/phi.hpp"

using namespace fano;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

// Polynomial text given inline, or read from a file when prefixed by '@'.
std::string poly_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return read_text_file(arg.substr(1));
  return arg;
}

struct CubicSource {
  std::string file;
  std::string text;

  bool given() const { return !file.empty() || !text.empty(); }
  std::string load() const {
    if (!file.empty() && !text.empty()) throw UsageError("give either --cubic-file or --cubic, not both");
    if (!file.empty()) return read_text_file(file);
    if (!text.empty()) return text;
    throw UsageError("a cubic is required (--cubic-file or --cubic)");
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--cubic-file", file, "cubic in canonical text form");
    cmd->add_option("--cubic", text, "cubic in canonical text form, inline");
  }
};

std::vector<std::uint64_t> parse_prime_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    auto v = detail::parse_int64(std::string_view(s).substr(start, end - start));
    if (v < 5 || !detail::is_prime(static_cast<std::uint64_t>(v))) throw ParseError("check primes must be primes >= 5");
    out.push_back(static_cast<std::uint64_t>(v));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------

struct LinesArgs {
  std::string field = "2";
  unsigned n = 5;
  CubicSource cubic;
  bool list = false;
  std::string out;
};

int run_lines(const LinesArgs& a) {
  const auto spec = FieldSpec::parse(a.field);
  return with_finite_field(spec, [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    json j;
    j["field"] = field_label(k);
    if (a.cubic.given()) {
      CubicFourfold<K> X(parse_poly_shaped(k, a.cubic.load(), 6, 3));
      auto lines = enumerate_fano_lines(X);
      j["kind"] = "fano_lines";
      j["count"] = lines.size();
      if (a.list) {
        json arr = json::array();
        for (const auto& l : lines) arr.push_back(line_to_json(l));
        j["lines"] = std::move(arr);
      }
    } else {
      if (a.n < 1 || a.n > 8) throw UsageError("--n must be in [1, 8]");
      std::uint64_t count = 0;
      json arr = json::array();
      for_each_line(k, a.n, [&](std::span<const element_t<K>> p, std::span<const element_t<K>> r) {
        ++count;
        if (a.list) arr.push_back(line_to_json(ProjectiveLine<K>(k, p, r)));
      });
      j["kind"] = "grassmannian";
      j["n"] = a.n;
      j["count"] = count;
      j["gaussian_binomial"] = gaussian_binomial(a.n + 1, 2, k.order());
      if (a.list) j["lines"] = std::move(arr);
    }
    emit(j, a.out);
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct PhiArgs {
  std::string field = "Q";
  CubicSource cubic;
  std::string line;
  std::uint64_t max_steps = 10;
  double height_cap = kDefaultHeightCap;
  std::string targets = "all";
  std::uint64_t seed = 0;
  std::string out;
};

int run_phi_apply(const PhiArgs& a) {
  return with_field(FieldSpec::parse(a.field), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    CubicFourfold<K> X(parse_poly_shaped(k, a.cubic.load(), 6, 3));
    auto L = parse_line(k, a.line);
    if (L.ambient_dim() != 5) throw ParseError("line must live in P^5");
    auto r = apply_phi(X, L);
    if (r.kind == PhiKind::NotOnX) fail("NotOnX", "line is not contained in the cubic");
    json j = phi_result_to_json(r);
    j["line"] = line_to_json(L);
    emit(j, a.out);
    return 0;
  });
}

int run_phi_orbit(const PhiArgs& a) {
  return with_field(FieldSpec::parse(a.field), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    CubicFourfold<K> X(parse_poly_shaped(k, a.cubic.load(), 6, 3));
    auto L = parse_line(k, a.line);
    if (L.ambient_dim() != 5) throw ParseError("line must live in P^5");
    auto rec = iterate_orbit(X, L, a.max_steps, a.height_cap);
    if (!verify_orbit(X, rec)) fail("PostconditionFailed", "orbit re-verification failed");
    json j = orbit_to_json(rec);
    j["field"] = field_label(k);
    j["max_steps"] = a.max_steps;
    emit(j, a.out);
    return 0;
  });
}

int run_phi_census(const PhiArgs& a) {
  return with_finite_field(FieldSpec::parse(a.field), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    CubicFourfold<K> X(parse_poly_shaped(k, a.cubic.load(), 6, 3));
    auto g = phi_graph(X, enumerate_fano_lines(X));
    std::vector<std::uint64_t> indeg(g.lines.size(), 0);
    for (auto nx : g.next)
      if (nx >= 0) ++indeg[static_cast<std::size_t>(nx)];

    std::vector<std::size_t> chosen;
    if (a.targets == "all") {
      for (std::size_t i = 0; i < g.lines.size(); ++i)
        if (indeg[i] > 0) chosen.push_back(i);
    } else if (a.targets.rfind("sample:", 0) == 0) {
      const auto want = static_cast<std::size_t>(detail::parse_int64(std::string_view(a.targets).substr(7)));
      std::vector<std::size_t> all(g.lines.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      std::mt19937_64 rng(a.seed);
      // Partial Fisher-Yates with the portable sampler.
      for (std::size_t i = 0; i < std::min(want, all.size()); ++i) {
        std::swap(all[i], all[i + uniform_below(rng, all.size() - i)]);
        chosen.push_back(all[i]);
      }
      std::sort(chosen.begin(), chosen.end());
    } else {
      throw UsageError("--targets must be 'all' or 'sample:K'");
    }

    std::map<std::uint64_t, std::uint64_t> hist;
    std::uint64_t total = 0, mx = 0;
    for (auto i : chosen) {
      ++hist[indeg[i]];
      total += indeg[i];
      mx = std::max(mx, indeg[i]);
    }
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["kind"] = "phi_census";
    j["field"] = field_label(k);
    j["lines"] = g.lines.size();
    j["targets"] = a.targets;
    j["seed"] = a.seed;
    j["target_count"] = chosen.size();
    json h = json::array();
    for (auto [d, n] : hist) h.push_back({{"preimages", d}, {"targets", n}});
    j["histogram"] = std::move(h);
    j["max_preimages"] = mx;
    j["mean_preimages"] = chosen.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(chosen.size());
    emit(j, a.out);
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct NodalArgs {
  std::string field = "Q";
  std::string q, t;
  std::string primes = "101,211";
  CubicSource cubic;
  std::string node = "0,0,0,0,1";
  std::vector<std::string> pair;
  std::string line;
  std::uint64_t seed = 0;
  unsigned count = 1;
  unsigned attempts = 100;
  std::string out;
};

int run_nodal_construct(const NodalArgs& a) {
  const auto spec = FieldSpec::parse(a.field);
  const auto qtext = poly_argument(a.q), ttext = poly_argument(a.t);
  json j;
  if (spec.kind == FieldSpec::Kind::Rationals) {
    RationalField Q;
    auto q2 = parse_poly_shaped(Q, qtext, 4, 2);
    auto t3 = parse_poly_shaped(Q, ttext, 4, 3);
    auto primes = parse_prime_list(a.primes);
    auto [Y, reports] = construct_three_nodal(q2, t3, primes);
    j["field"] = "Q";
    j["equation"] = to_text(Y.poly());
    json reps = json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) reps.push_back(node_report_to_json(reports[i], PrimeField(primes[i])));
    j["reports"] = std::move(reps);
  } else {
    with_finite_field(spec, [&](const auto& k) {
      auto [Y, rep] = construct_three_nodal(parse_poly_shaped(k, qtext, 4, 2), parse_poly_shaped(k, ttext, 4, 3));
      j["field"] = field_label(k);
      j["equation"] = to_text(Y.poly());
      j["reports"] = json::array({node_report_to_json(rep, k)});
      return 0;
    });
  }
  emit(j, a.out);
  return 0;
}

int run_nodal_search(const NodalArgs& a) {
  auto primes = parse_prime_list(a.primes);
  std::mt19937_64 rng(a.seed);
  json found = json::array();
  for (unsigned i = 0; i < a.count; ++i) {
    auto in = find_binodal_input(rng, primes, a.attempts);
    if (!in) fail("SearchExhausted", "no binodal input found within the attempt budget");
    RationalField Q;
    json e;
    e["q"] = to_text(in->q2);
    e["t"] = to_text(in->t3);
    e["n1"] = vector_to_json<RationalField>(Q, in->n1);
    e["n2"] = vector_to_json<RationalField>(Q, in->n2);
    found.push_back(std::move(e));
  }
  json j;
  j["seed"] = a.seed;
  j["check_primes"] = primes;
  j["inputs"] = std::move(found);
  emit(j, a.out);
  return 0;
}

template <FiniteField K>
NodeChart<K> chart_from_args(const K& k, const CubicThreefold<K>& Y, const NodalArgs& a) {
  auto y = parse_point(k, a.node);
  if (y.size() != 5) throw ParseError("node must have 5 coordinates");
  return node_chart(Y, std::span<const element_t<K>>(y));
}

int run_nodal_lines(const NodalArgs& a) {
  return with_finite_field(FieldSpec::parse(a.field), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    const auto p = k.characteristic();
    if (p == 2 || p == 3) fail("BadCharacteristic", "characteristic 2 and 3 are excluded");
    CubicThreefold<K> Y(parse_poly_shaped(k, a.cubic.load(), 5, 3));
    auto chart = chart_from_args(k, Y, a);
    auto dirs = enumerate_node_lines_fq(chart.curve());
    auto sing = curve_singular_points_fq(chart.q_part(), chart.t_part());
    json j;
    j["field"] = field_label(k);
    j["node"] = vector_to_json<K>(k, chart.node());
    j["q"] = to_text(chart.q_part());
    j["t"] = to_text(chart.t_part());
    j["ordinary"] = is_ordinary_node(chart);
    j["count"] = dirs.size();
    json d = json::array(), lines = json::array();
    for (const auto& x : dirs) {
      d.push_back(vector_to_json<K>(k, x));
      lines.push_back(line_to_json(chart.line_through(x)));
    }
    j["directions"] = std::move(d);
    j["lines"] = std::move(lines);
    json s = json::array();
    for (const auto& x : sing) s.push_back(vector_to_json<K>(k, x));
    j["curve_singular_points"] = std::move(s);
    emit(j, a.out);
    return 0;
  });
}

int run_nodal_residual(const NodalArgs& a) {
  return with_finite_field(FieldSpec::parse(a.field), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    CubicThreefold<K> Y(parse_poly_shaped(k, a.cubic.load(), 5, 3));
    auto chart = chart_from_args(k, Y, a);
    json j;
    j["field"] = field_label(k);
    if (!a.pair.empty()) {
      if (a.pair.size() != 2 || !a.line.empty()) throw UsageError("give --pair d1 d2 or --line L");
      auto d1 = parse_point(k, a.pair[0]), d2 = parse_point(k, a.pair[1]);
      if (d1.size() != 4 || d2.size() != 4) throw ParseError("directions have 4 coordinates");
      auto L = residual_line_of_pair(Y, chart, std::span<const element_t<K>>(d1), std::span<const element_t<K>>(d2));
      j["kind"] = "residual_line";
      j["line"] = line_to_json(L);
    } else if (!a.line.empty()) {
      auto L = parse_line(k, a.line);
      auto c = residual_conic_of_line(Y, chart, L);
      j["kind"] = "residual_conic";
      j["conic"] = to_text(c.conic);
      j["discriminant"] = scalar_to_json(k, c.discriminant);
      j["split"] = conic_split_name(c.split);
      j["double_line"] = c.double_line;
      json comps = json::array(), dirs = json::array();
      for (const auto& l : c.components) comps.push_back(line_to_json(l));
      for (const auto& d : c.directions) dirs.push_back(vector_to_json<K>(k, d));
      j["components"] = std::move(comps);
      j["directions"] = std::move(dirs);
    } else {
      throw UsageError("give --pair d1 d2 or --line L");
    }
    emit(j, a.out);
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct CensusArgs {
  std::string q = "5";
  CubicSource cubic;
  bool random_smooth = false;
  std::uint64_t seed = 0;
  std::uint64_t max_q = kDefaultMaxCensusQ;
  std::string out;
  std::string csv_prefix;
};

int run_census_full(const CensusArgs& a) {
  return with_finite_field(FieldSpec::parse(a.q), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    ExperimentConfig cfg;
    cfg.field = field_label(k);
    cfg.seed = a.seed;
    cfg.max_q = a.max_q;
    std::optional<CubicFourfold<K>> X;
    if (a.random_smooth) {
      if (a.cubic.given()) throw UsageError("--random-smooth excludes an explicit cubic");
      if (k.characteristic() == 2 || k.characteristic() == 3)
        fail("BadCharacteristic", "characteristic 2 and 3 are excluded");
      std::mt19937_64 rng(a.seed);
      X.emplace(random_smooth_fourfold(k, rng));
      cfg.cubic_source = "random_smooth";
    } else {
      X.emplace(parse_poly_shaped(k, a.cubic.load(), 6, 3));
    }
    cfg.cubic = to_text(X->poly());
    cfg.out = a.out;
    cfg.csv_prefix = a.csv_prefix;
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = full_dynamics_census(*X, a.max_q);
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(census_report_to_json(rep, cfg), a.out);
    if (!a.csv_prefix.empty()) {
      write_text_file(a.csv_prefix + "_in_degree.csv", in_degree_csv(rep));
      write_text_file(a.csv_prefix + "_orbit_types.csv", orbit_types_csv(rep));
    }
    // Timing stays out of the report so reruns are byte-identical.
    std::cerr << "census: " << rep.lines << " lines in " << secs << " s\n";
    return 0;
  });
}

// ---------------------------------------------------------------------------

struct CubicArgs {
  std::string field = "7";
  std::uint64_t seed = 0;
  std::string through;
  bool smooth = false;
  CubicSource cubic;
  std::uint64_t prime = 0;
  std::string out;
};

int run_cubic_sample(const CubicArgs& a) {
  return with_field(FieldSpec::parse(a.field), [&](const auto& k) {
    using K = std::decay_t<decltype(k)>;
    std::mt19937_64 rng(a.seed);
    HomogeneousPoly<K> f(k, 6, 3);
    if (!a.through.empty()) {
      auto L = parse_line(k, a.through);
      if (L.ambient_dim() != 5) throw ParseError("line must live in P^5");
      f = sample_cubic_through_line(L, a.seed).poly();
    } else if (a.smooth) {
      if constexpr (FiniteField<K>) {
        f = random_smooth_fourfold(k, rng).poly();
      } else {
        throw UsageError("--smooth needs a finite field");
      }
    } else {
      f = random_cubic(k, 6, rng);
    }
    const std::string text = to_text(f) + "\n";
    if (a.out.empty()) {
      std::cout << text;
    } else {
      write_text_file(a.out, text);
    }
    return 0;
  });
}

int run_cubic_smooth(const CubicArgs& a) {
  const auto spec = FieldSpec::parse(a.field);
  json j;
  if (spec.kind == FieldSpec::Kind::Rationals) {
    if (a.prime == 0) throw UsageError("--prime is required over Q");
    RationalField Q;
    auto f = parse_poly(Q, a.cubic.load());
    auto r = certify_smooth(CubicHypersurface<RationalField>(f, f.nvars()), a.prime);
    j["field"] = "Q";
    j["prime"] = a.prime;
    j["smooth"] = r.smooth;
    if (r.singular_point) j["singular_point"] = vector_to_json<PrimeField>(PrimeField(a.prime), *r.singular_point);
  } else {
    with_finite_field(spec, [&](const auto& k) {
      using K = std::decay_t<decltype(k)>;
      auto f = parse_poly(k, a.cubic.load());
      auto r = certify_smooth(CubicHypersurface<K>(f, f.nvars()));
      j["field"] = field_label(k);
      j["smooth"] = r.smooth;
      if (r.singular_point) j["singular_point"] = vector_to_json<K>(k, *r.singular_point);
      return 0;
    });
  }
  emit(j, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lines on cubic fourfolds: the tangent-plane self-map, nodal threefolds, finite-field censuses"};
  app.require_subcommand(1);

  LinesArgs lines;
  auto* lines_cmd = app.add_subcommand("lines", "lines of P^n(F_q), or the lines on a cubic fourfold");
  lines_cmd->add_option("--field", lines.field, "finite field size q");
  lines_cmd->add_option("--n", lines.n, "ambient dimension (without a cubic)");
  lines.cubic.add_to(lines_cmd);
  lines_cmd->add_flag("--list", lines.list, "include the lines themselves");
  lines_cmd->add_option("--out", lines.out, "output JSON path");

  PhiArgs phi;
  auto* phi_cmd = app.add_subcommand("phi", "the tangent-plane self-map");
  phi_cmd->require_subcommand(1);
  auto* apply_cmd = phi_cmd->add_subcommand("apply", "image of one line");
  auto* orbit_cmd = phi_cmd->add_subcommand("orbit", "iterate from one line");
  auto* pcensus_cmd = phi_cmd->add_subcommand("census", "preimage counts over F_q");
  for (auto* c : {apply_cmd, orbit_cmd}) {
    c->add_option("--field", phi.field, "Q or a finite field size");
    phi.cubic.add_to(c);
    c->add_option("--line", phi.line, "JSON line array or 'a;b' points")->required();
    c->add_option("--out", phi.out, "output JSON path");
  }
  orbit_cmd->add_option("--max-steps", phi.max_steps, "maximum number of applications");
  orbit_cmd->add_option("--height-cap", phi.height_cap, "height cap in nats (Q only)");
  pcensus_cmd->add_option("--q", phi.field, "finite field size")->required();
  phi.cubic.add_to(pcensus_cmd);
  pcensus_cmd->add_option("--targets", phi.targets, "all | sample:K");
  pcensus_cmd->add_option("--seed", phi.seed, "sampling seed");
  pcensus_cmd->add_option("--out", phi.out, "output JSON path");

  NodalArgs nodal;
  auto* nodal_cmd = app.add_subcommand("nodal", "nodal cubic threefolds");
  nodal_cmd->require_subcommand(1);
  auto* construct_cmd = nodal_cmd->add_subcommand("construct", "Y = {Y4 q - t = 0} with three nodes");
  construct_cmd->add_option("--q", nodal.q, "quadric in 4 variables (text, or @file)")->required();
  construct_cmd->add_option("--t", nodal.t, "cubic in 4 variables (text, or @file)")->required();
  construct_cmd->add_option("--field", nodal.field, "Q or a prime");
  construct_cmd->add_option("--check-primes", nodal.primes, "comma-separated reduction primes (over Q)");
  construct_cmd->add_option("--out", nodal.out, "output JSON path");
  auto* search_cmd = nodal_cmd->add_subcommand("search", "random (q, t) with a binodal curve");
  search_cmd->add_option("--check-primes", nodal.primes, "comma-separated reduction primes");
  search_cmd->add_option("--seed", nodal.seed, "search seed");
  search_cmd->add_option("--count", nodal.count, "number of inputs to find");
  search_cmd->add_option("--attempts", nodal.attempts, "attempts per input");
  search_cmd->add_option("--out", nodal.out, "output JSON path");
  auto* through_cmd = nodal_cmd->add_subcommand("lines-through-node", "the curve of lines through a node");
  auto* residual_cmd = nodal_cmd->add_subcommand("residual", "residual line of a pair, or residual conic of a line");
  for (auto* c : {through_cmd, residual_cmd}) {
    c->add_option("--field", nodal.field, "prime or prime power")->required();
    nodal.cubic.add_to(c);
    c->add_option("--node", nodal.node, "node coordinates, comma-separated");
    c->add_option("--out", nodal.out, "output JSON path");
  }
  residual_cmd->add_option("--pair", nodal.pair, "two directions d1 d2 in the node chart")->expected(2);
  residual_cmd->add_option("--line", nodal.line, "a line on Y avoiding the node");

  CensusArgs census;
  auto* census_cmd = app.add_subcommand("census", "finite-field dynamics censuses");
  census_cmd->require_subcommand(1);
  auto* full_cmd = census_cmd->add_subcommand("full", "functional graph of phi on F(F_q)");
  full_cmd->add_option("--q", census.q, "finite field size")->required();
  census.cubic.add_to(full_cmd);
  full_cmd->add_flag("--random-smooth", census.random_smooth, "sample a smooth cubic from --seed");
  full_cmd->add_option("--seed", census.seed, "seed for --random-smooth");
  full_cmd->add_option("--max-q", census.max_q, "largest q allowed");
  full_cmd->add_option("--out", census.out, "output JSON path");
  full_cmd->add_option("--csv-prefix", census.csv_prefix, "write histogram CSVs with this prefix");

  CubicArgs cubic;
  auto* cubic_cmd = app.add_subcommand("cubic", "sample or certify cubics");
  cubic_cmd->require_subcommand(1);
  auto* sample_cmd = cubic_cmd->add_subcommand("sample", "random cubic fourfold");
  sample_cmd->add_option("--field", cubic.field, "Q or a finite field size");
  sample_cmd->add_option("--seed", cubic.seed, "seed");
  sample_cmd->add_option("--through-line", cubic.through, "contain this line");
  sample_cmd->add_flag("--smooth", cubic.smooth, "reject until the smoothness scan passes");
  sample_cmd->add_option("--out", cubic.out, "output path");
  auto* smooth_cmd = cubic_cmd->add_subcommand("smooth", "smoothness scan over F_q");
  smooth_cmd->add_option("--field", cubic.field, "Q or a finite field size");
  cubic.cubic.add_to(smooth_cmd);
  smooth_cmd->add_option("--prime", cubic.prime, "reduction prime (over Q)");
  smooth_cmd->add_option("--out", cubic.out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (lines_cmd->parsed()) return run_lines(lines);
    if (apply_cmd->parsed()) return run_phi_apply(phi);
    if (orbit_cmd->parsed()) return run_phi_orbit(phi);
    if (pcensus_cmd->parsed()) return run_phi_census(phi);
    if (construct_cmd->parsed()) return run_nodal_construct(nodal);
    if (search_cmd->parsed()) return run_nodal_search(nodal);
    if (through_cmd->parsed()) return run_nodal_lines(nodal);
    if (residual_cmd->parsed()) return run_nodal_residual(nodal);
    if (full_cmd->parsed()) return run_census_full(census);
    if (sample_cmd->parsed()) return run_cubic_sample(cubic);
    if (smooth_cmd->parsed()) return run_cubic_smooth(cubic);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}
