#pragma once

// Reference implementations for the tests.  Deliberately naive and written
// without the library's polynomial, elimination, or enumeration code so they
// can serve as independent oracles.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "fano/fields.hpp"
#include "fano/polynomial.hpp"

namespace oracle {

using fano::element_t;
using fano::Field;
using fano::FiniteField;

// Sparse polynomial: exponent vector -> coefficient.
template <Field K>
using Sparse = std::map<std::vector<unsigned>, element_t<K>>;

template <Field K>
Sparse<K> from_poly(const fano::HomogeneousPoly<K>& f) {
  Sparse<K> s;
  const K& k = f.field();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& c = f.coeff(i);
    if (!k.is_zero(c)) s[std::vector<unsigned>(f.basis().exponent(i).begin(), f.basis().exponent(i).end())] = c;
  }
  return s;
}

template <Field K>
void add_term(const K& k, Sparse<K>& s, const std::vector<unsigned>& e, const element_t<K>& c) {
  auto it = s.find(e);
  if (it == s.end()) {
    if (!k.is_zero(c)) s.emplace(e, c);
    return;
  }
  it->second = k.add(it->second, c);
  if (k.is_zero(it->second)) s.erase(it);
}

template <Field K>
Sparse<K> mul(const K& k, const Sparse<K>& a, const Sparse<K>& b) {
  Sparse<K> r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<unsigned> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_term(k, r, e, k.mul(ca, cb));
    }
  return r;
}

// f(M p) expanded term by term: every variable x_i becomes sum_j M[i][j] p_j.
template <Field K>
Sparse<K> substitute(const K& k, const Sparse<K>& f, const std::vector<std::vector<element_t<K>>>& M) {
  const std::size_t m = M.empty() ? 0 : M[0].size();
  std::vector<Sparse<K>> lin(M.size());
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<unsigned> e(m, 0);
      e[j] = 1;
      add_term(k, lin[i], e, M[i][j]);
    }
  Sparse<K> out;
  for (const auto& [e, c] : f) {
    Sparse<K> term;
    term[std::vector<unsigned>(m, 0)] = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned p = 0; p < e[i]; ++p) term = mul(k, term, lin[i]);
    for (const auto& [te, tc] : term) add_term(k, out, te, tc);
  }
  return out;
}

template <Field K>
element_t<K> eval(const K& k, const Sparse<K>& f, const std::vector<element_t<K>>& x) {
  auto acc = k.zero();
  for (const auto& [e, c] : f) {
    auto t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned p = 0; p < e[i]; ++p) t = k.mul(t, x[i]);
    acc = k.add(acc, t);
  }
  return acc;
}

template <Field K>
Sparse<K> derivative(const K& k, const Sparse<K>& f, std::size_t var) {
  Sparse<K> d;
  for (const auto& [e, c] : f) {
    if (e[var] == 0) continue;
    auto e2 = e;
    e2[var] -= 1;
    add_term(k, d, e2, k.mul(k.from_int(e[var]), c));
  }
  return d;
}

template <Field K>
bool equal(const fano::HomogeneousPoly<K>& f, const Sparse<K>& s) {
  return from_poly(f) == s;
}

// Leibniz expansion over all permutations.
template <Field K>
element_t<K> det(const K& k, const std::vector<std::vector<element_t<K>>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  auto total = k.zero();
  do {
    bool odd = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) odd = !odd;
    auto t = k.one();
    for (std::size_t i = 0; i < n; ++i) t = k.mul(t, a[i][perm[i]]);
    total = odd ? k.sub(total, t) : k.add(total, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void subsets(std::size_t n, std::size_t r, std::vector<std::vector<std::size_t>>& out,
                    std::vector<std::size_t>& cur, std::size_t start = 0) {
  if (cur.size() == r) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, r, out, cur, i + 1);
    cur.pop_back();
  }
}

// Largest r with a nonzero r x r minor.
template <Field K>
std::size_t minor_rank(const K& k, const std::vector<std::vector<element_t<K>>>& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t r = std::min(rows, cols); r > 0; --r) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, r, rs, cur);
    subsets(cols, r, cs, cur);
    for (const auto& ri : rs)
      for (const auto& ci : cs) {
        std::vector<std::vector<element_t<K>>> m(r, std::vector<element_t<K>>(r));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) m[i][j] = a[ri[i]][ci[j]];
        if (!k.is_zero(det(k, m))) return r;
      }
  }
  return 0;
}

// Every point of P^n(F_q), first nonzero coordinate 1, by filtering all of F_q^{n+1}.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> all_points(const K& k, std::size_t n) {
  std::vector<std::vector<element_t<K>>> pts;
  const std::uint64_t q = k.order();
  std::vector<std::uint64_t> idx(n + 1, 0);
  for (;;) {
    std::size_t i = n + 1;
    while (i-- > 0) {
      if (++idx[i] < q) break;
      idx[i] = 0;
      if (i == 0) return pts;
    }
    std::vector<element_t<K>> x(n + 1);
    for (std::size_t j = 0; j <= n; ++j) x[j] = k.element_at(idx[j]);
    std::size_t lead = 0;
    while (lead <= n && k.is_zero(x[lead])) ++lead;
    if (lead <= n && x[lead] == k.one()) pts.push_back(std::move(x));
  }
}

// Points where f and all partials vanish, by evaluating at every point.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> singular_scan(const K& k, const Sparse<K>& f, std::size_t nvars) {
  std::vector<Sparse<K>> d;
  for (std::size_t i = 0; i < nvars; ++i) d.push_back(derivative(k, f, i));
  std::vector<std::vector<element_t<K>>> out;
  for (auto& x : all_points(k, nvars - 1)) {
    if (!k.is_zero(eval(k, f, x))) continue;
    bool sing = true;
    for (const auto& di : d)
      if (!k.is_zero(eval(k, di, x))) {
        sing = false;
        break;
      }
    if (sing) out.push_back(std::move(x));
  }
  return out;
}

// Gaussian binomial [n 2]_q as a plain product.
inline std::uint64_t gauss2(unsigned n, std::uint64_t q) {
  std::uint64_t qn = 1, qn1 = 1;
  for (unsigned i = 0; i < n; ++i) qn *= q;
  for (unsigned i = 0; i + 1 < n; ++i) qn1 *= q;
  return (qn - 1) * (qn1 - 1) / ((q * q - 1) * (q - 1));
}

}  // namespace oracle
