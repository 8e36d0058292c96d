#pragma once

// Shared fixtures for the unit tests.

#include <algorithm>
#include <random>
#include <vector>

#include "fano/cubic.hpp"
#include "fano/nodal.hpp"

namespace support {

using fano::element_t;
using fano::Field;

template <Field K>
fano::HomogeneousPoly<K> fermat(const K& k, unsigned nvars) {
  fano::HomogeneousPoly<K> f(k, nvars, 3);
  for (unsigned i = 0; i < nvars; ++i) {
    fano::Exponent e(nvars, 0);
    e[i] = 3;
    f.set(f.basis().index(e), k.one());
  }
  return f;
}

template <Field K>
std::vector<element_t<K>> ints(const K& k, std::initializer_list<long> v) {
  std::vector<element_t<K>> r;
  for (long x : v) r.push_back(k.from_int(x));
  return r;
}

// L0 = span{(1,-1,0,0,0,0), (0,0,1,-1,0,0)}, a line on the Fermat cubic.
template <Field K>
fano::ProjectiveLine<K> fermat_line(const K& k) {
  return fano::line_from_points(k, ints(k, {1, -1, 0, 0, 0, 0}), ints(k, {0, 0, 1, -1, 0, 0}));
}

// A random cubic whose gradient vanishes at each given point.
template <Field K>
fano::HomogeneousPoly<K> cubic_singular_at(const K& k, unsigned nvars, const std::vector<std::vector<element_t<K>>>& pts,
                                           std::mt19937_64& rng) {
  fano::HomogeneousPoly<K> probe(k, nvars, 3);
  fano::DenseMatrix<K> cond(k, nvars * pts.size() + pts.size(), probe.size());
  for (std::size_t idx = 0; idx < probe.size(); ++idx) {
    fano::HomogeneousPoly<K> mono(k, nvars, 3);
    mono.set(idx, k.one());
    for (std::size_t p = 0; p < pts.size(); ++p) {
      auto g = mono.gradient();
      for (unsigned v = 0; v < nvars; ++v) cond(p * nvars + v, idx) = g[v].eval(pts[p]);
      cond(nvars * pts.size() + p, idx) = mono.eval(pts[p]);
    }
  }
  auto basis = fano::kernel_basis(cond);
  for (;;) {
    fano::HomogeneousPoly<K> f(k, nvars, 3);
    for (const auto& v : basis) {
      auto c = fano::random_scalar(k, rng);
      for (std::size_t i = 0; i < v.size(); ++i) f.add_to(i, k.mul(c, v[i]));
    }
    if (!f.is_zero()) return f;
  }
}

// Point lists sorted by the field's element order.
template <Field K>
std::vector<std::vector<element_t<K>>> sorted(const K& k, std::vector<std::vector<element_t<K>>> v) {
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return fano::less_vector<K>(k, a, b); });
  return v;
}

inline std::vector<std::uint64_t> nonzero_point(const fano::PrimeField& k, std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    auto v = fano::random_vector(k, n, rng);
    if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; })) {
      fano::normalize_projective(k, v);
      return v;
    }
  }
}

// A cubic threefold with an ordinary node at a random point.
inline fano::CubicThreefold<fano::PrimeField> nodal_threefold(const fano::PrimeField& k, std::mt19937_64& rng,
                                                              std::vector<std::uint64_t>& node) {
  for (;;) {
    node = nonzero_point(k, rng, 5);
    fano::CubicThreefold<fano::PrimeField> Y(cubic_singular_at(k, 5, {node}, rng));
    if (fano::is_ordinary_node(fano::node_chart(Y, std::span<const std::uint64_t>(node)))) return Y;
  }
}

}  // namespace support
