#pragma once

// Exhaustive search for the F_q-points of {Q_1 = ... = Q_m = 0} in P^n where
// every Q_i has degree <= 2.  Points are visited through the fibration over
// one coordinate x: on each fiber the first form is a quadratic in x, whose
// roots are the only candidates tested against the remaining forms.  Cost is
// O(q^n) field operations instead of O(q^n) polynomial evaluations.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/polynomial.hpp"
#include "fano/projective.hpp"

namespace fano {

namespace detail {

// Roots in F_q of a x^2 + b x + c; `all` when the polynomial vanishes identically.
template <FiniteField K>
struct QuadraticRoots {
  bool all = false;
  unsigned count = 0;
  element_t<K> r[2];
};

template <FiniteField K>
QuadraticRoots<K> solve_quadratic(const K& k, const element_t<K>& a, const element_t<K>& b, const element_t<K>& c,
                                  const element_t<K>* inv_two_a) {
  QuadraticRoots<K> out;
  if (k.is_zero(a)) {
    if (k.is_zero(b)) {
      out.all = k.is_zero(c);
      return out;
    }
    out.count = 1;
    out.r[0] = k.neg(k.mul(c, k.inv(b)));
    return out;
  }
  if (k.characteristic() == 2) {
    for (std::uint64_t i = 0; i < k.order() && out.count < 2; ++i) {
      auto x = k.element_at(i);
      if (k.is_zero(k.add(k.mul(k.add(k.mul(a, x), b), x), c))) out.r[out.count++] = x;
    }
    return out;
  }
  const auto disc = k.sub(k.mul(b, b), k.mul(k.mul(a, c), k.from_int(4)));
  auto root = field_sqrt(k, disc);
  if (!root) return out;
  const auto inv = inv_two_a ? *inv_two_a : k.inv(k.add(a, a));
  out.r[0] = k.mul(k.sub(*root, b), inv);
  out.count = 1;
  if (!k.is_zero(*root)) {
    out.r[1] = k.mul(k.neg(k.add(*root, b)), inv);
    out.count = 2;
  }
  return out;
}

// Q(w, t, x) = q00(w) + q10(w) t + q01(w) x + c20 t^2 + c11 t x + c02 x^2 with
// w = (x_0..x_{n-2}), t = x_{n-1}, x = x_n.
template <FiniteField K>
struct FiberedForm {
  using E = element_t<K>;
  unsigned degree = 0;
  HomogeneousPoly<K> q00;
  std::vector<E> l10, l01;  // linear in w (degree 2) or a single constant (degree 1)
  E c20, c11, c02;

  FiberedForm(const K& k, const HomogeneousPoly<K>& Q)
      : degree(Q.degree()), q00(k, Q.nvars() - 2, Q.degree()), c20(k.zero()), c11(k.zero()), c02(k.zero()) {
    const unsigned n = Q.nvars() - 1;
    if (degree == 2) {
      l10.assign(n - 1, k.zero());
      l01.assign(n - 1, k.zero());
    } else {
      l10.assign(1, k.zero());
      l01.assign(1, k.zero());
    }
    Exponent sub(n - 1);
    for (const auto& [e, c] : Q.terms()) {
      const unsigned et = e[n - 1], ex = e[n];
      if (et == 0 && ex == 0) {
        std::copy(e.begin(), e.end() - 2, sub.begin());
        q00.set(sub, c);
        continue;
      }
      if (degree == 1) {
        (et ? l10 : l01)[0] = c;
        continue;
      }
      if (et == 2) {
        c20 = c;
      } else if (ex == 2) {
        c02 = c;
      } else if (et == 1 && ex == 1) {
        c11 = c;
      } else {
        std::size_t v = std::find(e.begin(), e.end() - 2, 1u) - e.begin();
        (et ? l10 : l01)[v] = c;
      }
    }
  }

  E lin(const K& k, const std::vector<E>& l, std::span<const E> w) const {
    if (degree == 1) return l[0];
    E acc = k.zero();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (!k.is_zero(l[i])) acc = k.add(acc, k.mul(l[i], w[i]));
    return acc;
  }
};

}  // namespace detail

// Calls fn(point) for every F_q-point of P^n on all the given forms (degree 1 or 2).
// Visiting order is deterministic but fibration-dependent.
template <FiniteField K, class Fn>
void for_each_common_zero(const K& k, const std::vector<HomogeneousPoly<K>>& forms, Fn&& fn) {
  using E = element_t<K>;
  if (forms.empty()) fail("DimensionMismatch", "no forms given");
  const unsigned nv = forms.front().nvars();
  if (nv < 3) fail("DimensionMismatch", "fibered search needs at least P^2");
  std::vector<HomogeneousPoly<K>> live;
  for (const auto& f : forms) {
    if (f.nvars() != nv) fail("DimensionMismatch", "forms in different variable counts");
    if (f.degree() > 2) fail("DimensionMismatch", "fibered search takes forms of degree <= 2");
    if (f.is_zero()) continue;
    if (f.degree() == 0) return;  // nonzero constant
    live.push_back(f);
  }
  if (live.empty()) {
    for_each_point(k, nv - 1, fn);
    return;
  }

  // Fiber over a variable that appears squared in some form, moved to the last slot.
  std::size_t sieve = 0;
  unsigned fiber_var = nv - 1;
  bool found = false;
  for (std::size_t i = 0; i < live.size() && !found; ++i) {
    if (live[i].degree() != 2) continue;
    for (unsigned v = nv; v-- > 0;) {
      Exponent e(nv, 0);
      e[v] = 2;
      if (!k.is_zero(live[i].coeff(e))) {
        sieve = i;
        fiber_var = v;
        found = true;
        break;
      }
    }
  }
  std::swap(live[0], live[sieve]);
  std::vector<unsigned> perm(nv);
  for (unsigned v = 0; v < nv; ++v) perm[v] = v;
  std::swap(perm[fiber_var], perm[nv - 1]);
  DenseMatrix<K> P(k, nv, nv);
  for (unsigned v = 0; v < nv; ++v) P(perm[v], v) = k.one();
  if (fiber_var != nv - 1)
    for (auto& f : live) f = poly_substitute_linear(f, P);

  std::vector<detail::FiberedForm<K>> parts;
  parts.reserve(live.size());
  for (const auto& f : live) parts.emplace_back(k, f);

  const unsigned n = nv - 1;
  std::vector<E> pt(nv), out(nv);
  auto emit = [&](std::span<const E> x) {
    for (unsigned v = 0; v < nv; ++v) out[perm[v]] = x[v];
    fn(std::span<const E>(out));
  };

  const auto& s = parts[0];
  std::optional<E> inv_two_a;
  if (!k.is_zero(s.c02) && k.characteristic() != 2) inv_two_a = k.inv(k.add(s.c02, s.c02));

  // Remaining forms at (w, t, x), from their per-prefix decomposition.
  std::vector<E> r00(parts.size()), r10(parts.size()), r01(parts.size());
  auto others_vanish = [&](const E& t, const E& x) {
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto& f = parts[i];
      // f = r00 + r10 t + r01 x + c20 t^2 + c11 t x + c02 x^2
      E v = k.add(r00[i], k.mul(k.add(r10[i], k.mul(f.c20, t)), t));
      v = k.add(v, k.mul(k.add(r01[i], k.add(k.mul(f.c11, t), k.mul(f.c02, x))), x));
      if (!k.is_zero(v)) return false;
    }
    return true;
  };

  const auto elements = all_elements(k);
  auto scan_prefix = [&](std::span<const E> w, bool t_free) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      r00[i] = parts[i].q00.eval(w);
      r10[i] = parts[i].lin(k, parts[i].l10, w);
      r01[i] = parts[i].lin(k, parts[i].l01, w);
    }
    std::copy(w.begin(), w.end(), pt.begin());
    auto visit_t = [&](const E& t) {
      pt[n - 1] = t;
      const E b = k.add(r01[0], k.mul(s.c11, t));
      const E c = k.add(r00[0], k.mul(k.add(r10[0], k.mul(s.c20, t)), t));
      auto roots = detail::solve_quadratic(k, s.c02, b, c, inv_two_a ? &*inv_two_a : nullptr);
      if (roots.all) {
        for (const auto& x : elements) {
          if (!others_vanish(t, x)) continue;
          pt[n] = x;
          emit(pt);
        }
        return;
      }
      for (unsigned r = 0; r < roots.count; ++r) {
        if (!others_vanish(t, roots.r[r])) continue;
        pt[n] = roots.r[r];
        emit(pt);
      }
    };
    if (t_free) {
      for (const auto& t : elements) visit_t(t);
    } else {
      visit_t(k.one());
    }
  };

  // u = (w, t) ranges over P^{n-1}: lead in w with t free, then w = 0, t = 1.
  std::vector<E> w(n - 1, k.zero());
  const std::uint64_t q = k.order();
  for (std::size_t lead = 0; lead + 1 < n; ++lead) {
    std::fill(w.begin(), w.end(), k.zero());
    w[lead] = k.one();
    std::vector<std::uint64_t> d(n - 2 - lead, 0);
    do {
      for (std::size_t j = 0; j < d.size(); ++j) w[lead + 1 + j] = elements[d[j]];
      scan_prefix(w, true);
    } while (detail::advance(d, q));
  }
  std::fill(w.begin(), w.end(), k.zero());
  scan_prefix(w, false);

  // The point (0, ..., 0, 1).
  std::fill(pt.begin(), pt.end(), k.zero());
  pt[n] = k.one();
  bool all_zero = true;
  for (const auto& f : parts)
    if (!k.is_zero(f.degree == 2 ? f.c02 : f.l01[0])) all_zero = false;
  if (all_zero) emit(pt);
}

// All common zeros, normalized and sorted.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> common_zeros(const K& k, const std::vector<HomogeneousPoly<K>>& forms) {
  std::vector<std::vector<element_t<K>>> pts;
  for_each_common_zero(k, forms, [&](std::span<const element_t<K>> x) {
    std::vector<element_t<K>> v(x.begin(), x.end());
    normalize_projective(k, v);
    pts.push_back(std::move(v));
  });
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return less_vector<K>(k, a, b); });
  return pts;
}

}  // namespace fano
