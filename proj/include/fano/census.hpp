#pragma once

// Finite-field censuses: the lines on X over F_q and the functional graph of
// phi on them.
//
// Lines are found per Schubert cell (pivots i < j) without sweeping the cell:
// with echelon rows a, b,
//     f(s a + t b) = f(a) s^3 + (grad f(a) . b) s^2 t + (grad f(b) . a) s t^2 + f(b) t^3,
// so a and b are first filtered separately by f(a) = 0 and f(b) = 0 and only
// the surviving pairs are tested on the two mixed terms.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fano/cubic.hpp"
#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/phi.hpp"
#include "fano/projective.hpp"

namespace fano {

// Worker count: FANO_THREADS if set to a positive integer, else the hardware count.
inline unsigned worker_count() {
  if (const char* env = std::getenv("FANO_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, n) on `workers` threads; each index is claimed once.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Lines of X in one Schubert cell, in enumeration order.
template <FiniteField K>
std::vector<ProjectiveLine<K>> fano_lines_in_cell(const CubicFourfold<K>& X, SchubertCell cell) {
  using E = element_t<K>;
  const K& k = X.field();
  const std::uint64_t q = k.order();
  const auto elements = all_elements(k);
  const CubicEvaluator<K> eval(X.poly());
  auto [fa, fb] = cell_free_positions(5, cell);

  struct Row {
    std::vector<E> x, grad;
  };
  auto collect = [&](std::size_t pivot, const std::vector<std::size_t>& free) {
    std::vector<Row> rows;
    std::vector<E> x(6, k.zero());
    x[pivot] = k.one();
    std::vector<std::uint64_t> d(free.size(), 0);
    do {
      for (std::size_t s = 0; s < free.size(); ++s) x[free[s]] = elements[d[s]];
      if (k.is_zero(eval(std::span<const E>(x)))) rows.push_back({x, X.gradient_at(x)});
    } while (detail::advance(d, q));
    return rows;
  };
  const auto A = collect(cell.i, fa);
  const auto B = collect(cell.j, fb);

  std::vector<ProjectiveLine<K>> out;
  for (const auto& ra : A)
    for (const auto& rb : B) {
      if (!k.is_zero(detail::dot<K>(k, ra.grad, rb.x))) continue;
      if (!k.is_zero(detail::dot<K>(k, rb.grad, ra.x))) continue;
      out.emplace_back(k, std::span<const E>(ra.x), std::span<const E>(rb.x));
    }
  return out;
}

// All lines of P^5(F_q) on X, sorted by canonical key.
template <FiniteField K>
std::vector<ProjectiveLine<K>> enumerate_fano_lines(const CubicFourfold<K>& X, unsigned workers = worker_count()) {
  const auto cells = schubert_cells(5);
  std::vector<std::vector<ProjectiveLine<K>>> per_cell(cells.size());
  parallel_for(cells.size(), workers, [&](std::size_t c) { per_cell[c] = fano_lines_in_cell(X, cells[c]); });
  std::vector<ProjectiveLine<K>> out;
  for (auto& v : per_cell)
    for (auto& l : v) out.push_back(std::move(l));
  std::sort(out.begin(), out.end());
  for (const auto& l : out)
    if (!line_on_cubic(X, l)) fail("PostconditionFailed", "enumerated line is not on the cubic");
  return out;
}

// Naive sweep of every line of P^5(F_q) with a direct membership test; the
// reference the sieved enumeration is checked against.  Returns the number of
// lines tested; `found` receives the lines on X.
template <FiniteField K>
std::uint64_t sweep_fano_lines(const CubicFourfold<K>& X, std::vector<ProjectiveLine<K>>* found = nullptr) {
  using E = element_t<K>;
  const K& k = X.field();
  const CubicEvaluator<K> eval(X.poly());
  std::uint64_t tested = 0;
  for_each_line(k, 5, [&](std::span<const E> a, std::span<const E> b) {
    ++tested;
    if (!k.is_zero(eval(a)) || !k.is_zero(eval(b))) return;
    if (!line_on_cubic(X, a, b)) return;
    if (found) found->emplace_back(k, a, b);
  });
  if (found) std::sort(found->begin(), found->end());
  return tested;
}

// ---------------------------------------------------------------------------
// Functional graph of phi

inline constexpr std::uint64_t kDefaultMaxCensusQ = 13;

struct CensusReport {
  std::uint64_t q = 0;
  std::string field;
  std::uint64_t lines = 0;          // |F(F_q)|
  std::uint64_t indeterminate = 0;
  std::uint64_t degenerate = 0;     // DegenerateResidual
  std::uint64_t mapped = 0;         // lines with an image
  std::uint64_t cycles = 0;
  std::uint64_t periodic_lines = 0;
  std::map<std::uint64_t, std::uint64_t> cycle_lengths;  // period -> number of cycles
  // Lines whose orbit enters a cycle: (preperiod, period) -> count.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> orbit_types;
  // Lines whose orbit reaches an undefined point: steps until then -> count.
  std::map<std::uint64_t, std::uint64_t> undefined_after;
  // in-degree -> number of lines with that many preimages (all lines, zero included).
  std::map<std::uint64_t, std::uint64_t> in_degree;
  std::uint64_t max_in_degree = 0;
  std::uint64_t image_size = 0;     // lines with in-degree >= 1
};

template <FiniteField K>
struct FunctionalGraph {
  static constexpr std::int64_t kIndeterminate = -1;
  static constexpr std::int64_t kDegenerate = -2;

  std::vector<ProjectiveLine<K>> lines;  // sorted
  std::vector<std::int64_t> next;        // index of phi(line) or a negative code
};

// phi on every line of X, images located by canonical key.
template <FiniteField K>
FunctionalGraph<K> phi_graph(const CubicFourfold<K>& X, std::vector<ProjectiveLine<K>> lines,
                             unsigned workers = worker_count()) {
  FunctionalGraph<K> g;
  g.lines = std::move(lines);
  std::unordered_map<ProjectiveLine<K>, std::int64_t> index;
  index.reserve(g.lines.size());
  for (std::size_t i = 0; i < g.lines.size(); ++i) index.emplace(g.lines[i], static_cast<std::int64_t>(i));
  if (index.size() != g.lines.size()) fail("PostconditionFailed", "duplicate line in the census");
  g.next.assign(g.lines.size(), 0);
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (g.lines.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t end = std::min(g.lines.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      auto r = apply_phi(X, g.lines[i]);
      switch (r.kind) {
        case PhiKind::Indeterminate: g.next[i] = FunctionalGraph<K>::kIndeterminate; break;
        case PhiKind::DegenerateResidual: g.next[i] = FunctionalGraph<K>::kDegenerate; break;
        case PhiKind::Image: {
          auto it = index.find(*r.image);
          if (it == index.end()) fail("PostconditionFailed", "image line missing from the census");
          g.next[i] = it->second;
          break;
        }
        case PhiKind::NotOnX: fail("PostconditionFailed", "census line is not on the cubic");
      }
    }
  });
  return g;
}

// Orbit statistics of a functional graph with possibly undefined points.
template <FiniteField K>
CensusReport analyze_graph(const FunctionalGraph<K>& g) {
  const std::size_t n = g.lines.size();
  CensusReport rep;
  rep.lines = n;
  std::vector<std::uint64_t> indeg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (g.next[i] == FunctionalGraph<K>::kIndeterminate) {
      ++rep.indeterminate;
    } else if (g.next[i] == FunctionalGraph<K>::kDegenerate) {
      ++rep.degenerate;
    } else {
      ++rep.mapped;
      ++indeg[static_cast<std::size_t>(g.next[i])];
    }
  }

  // Per line: the period it ends in (0 if it reaches an undefined point) and
  // the number of steps before the cycle or the undefined point.
  constexpr std::uint64_t kUnknown = UINT64_MAX;
  std::vector<std::uint64_t> period(n, kUnknown), tail(n, kUnknown);
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on current path, 2 done
  std::vector<std::size_t> path;
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s] == 2) continue;
    path.clear();
    std::size_t v = s;
    while (true) {
      if (state[v] == 2) break;
      if (state[v] == 1) {
        // New cycle: v .. end of path.
        auto it = std::find(path.begin(), path.end(), v);
        const std::uint64_t len = static_cast<std::uint64_t>(path.end() - it);
        ++rep.cycles;
        ++rep.cycle_lengths[len];
        for (auto c = it; c != path.end(); ++c) {
          period[*c] = len;
          tail[*c] = 0;
          state[*c] = 2;
        }
        path.erase(it, path.end());
        break;
      }
      state[v] = 1;
      path.push_back(v);
      if (g.next[v] < 0) {
        // Undefined at v itself.
        period[v] = 0;
        tail[v] = 0;
        state[v] = 2;
        path.pop_back();
        break;
      }
      v = static_cast<std::size_t>(g.next[v]);
    }
    // The rest of the path drains into resolved nodes.
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const auto nx = static_cast<std::size_t>(g.next[*it]);
      period[*it] = period[nx];
      tail[*it] = tail[nx] + 1;
      state[*it] = 2;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (period[i] == 0) {
      ++rep.undefined_after[tail[i]];
    } else {
      ++rep.orbit_types[{tail[i], period[i]}];
      if (tail[i] == 0) ++rep.periodic_lines;
    }
    ++rep.in_degree[indeg[i]];
    rep.max_in_degree = std::max(rep.max_in_degree, indeg[i]);
    if (indeg[i] > 0) ++rep.image_size;
  }
  return rep;
}

// Enumerates F(F_q), iterates phi from every line, and tabulates the graph.
template <FiniteField K>
CensusReport full_dynamics_census(const CubicFourfold<K>& X, std::uint64_t max_q = kDefaultMaxCensusQ,
                                  unsigned workers = worker_count()) {
  const K& k = X.field();
  if (k.order() > max_q)
    fail("BudgetExceeded", "census over F_" + std::to_string(k.order()) + " exceeds the budget q <= " +
                               std::to_string(max_q));
  if (k.characteristic() == 2 || k.characteristic() == 3) fail("BadCharacteristic", "characteristic 2 and 3 are excluded");
  auto g = phi_graph(X, enumerate_fano_lines(X, workers), workers);
  auto rep = analyze_graph(g);
  rep.q = k.order();
  rep.field = k.name();
  return rep;
}

// Number of lines of X over F_q mapped onto target by phi.
template <FiniteField K>
std::uint64_t preimage_census(const CubicFourfold<K>& X, const ProjectiveLine<K>& target,
                              const std::vector<ProjectiveLine<K>>& lines) {
  if (!line_on_cubic(X, target)) return 0;
  std::uint64_t count = 0;
  for (const auto& l : lines) {
    auto r = apply_phi(X, l);
    if (r.ok() && *r.image == target) ++count;
  }
  return count;
}

template <FiniteField K>
std::uint64_t preimage_census(const CubicFourfold<K>& X, const ProjectiveLine<K>& target) {
  if (!line_on_cubic(X, target)) return 0;
  return preimage_census(X, target, enumerate_fano_lines(X));
}

}  // namespace fano
