#pragma once

// Points, lines and planes of P^n with canonical normal forms.
//
// Point normalization: over Q, primitive integer coordinates with first nonzero
// entry positive; over a finite field, first nonzero entry equal to 1.
// A line keeps the normalized rows of its reduced row echelon basis and its
// normalized Plücker vector (p_ij for i < j in lexicographic pair order);
// two lines are equal iff their Plücker vectors are.

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/linalg.hpp"

namespace fano {

// Scales v in place to the canonical representative of its projective class.
template <Field K>
void normalize_projective(const K& k, std::vector<element_t<K>>& v) {
  std::size_t lead = 0;
  while (lead < v.size() && k.is_zero(v[lead])) ++lead;
  if (lead == v.size()) fail("ZeroPoint", "the zero vector is not a projective point");
  if constexpr (std::same_as<K, RationalField>) {
    mpz_class l = 1, g = 0;
    for (const auto& c : v)
      if (sgn(c) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      ints[i] = v[i].get_num() * (l / v[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (sgn(ints[lead]) < 0) g = -g;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mpq_class(ints[i] / g);
  } else {
    const auto inv = k.inv(v[lead]);
    for (auto& c : v) c = k.mul(c, inv);
  }
}

template <Field K>
std::size_t hash_vector(const K& k, std::span<const element_t<K>> v) {
  std::size_t h = v.size();
  for (const auto& c : v) h = detail::hash_mix(h, k.hash(c));
  return h;
}

template <Field K>
bool less_vector(const K& k, std::span<const element_t<K>> a, std::span<const element_t<K>> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (k.less(a[i], b[i])) return true;
    if (k.less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

template <Field K>
class ProjectivePoint {
 public:
  using E = element_t<K>;

  ProjectivePoint(const K& k, std::vector<E> coords) : k_(k), coords_(std::move(coords)) {
    normalize_projective(k_, coords_);
  }

  const K& field() const noexcept { return k_; }
  std::size_t ambient_dim() const noexcept { return coords_.size() - 1; }
  const std::vector<E>& coords() const noexcept { return coords_; }
  const E& operator[](std::size_t i) const { return coords_[i]; }

  bool operator==(const ProjectivePoint& o) const { return coords_ == o.coords_; }
  std::size_t hash() const { return hash_vector<K>(k_, coords_); }

 private:
  K k_;
  std::vector<E> coords_;
};

// Number of Plücker coordinates of a line in P^n.
inline std::size_t plucker_size(std::size_t n) { return (n + 1) * n / 2; }

// Position of p_ij (i < j) in the Plücker vector of a line in P^n.
inline std::size_t plucker_index(std::size_t n, std::size_t i, std::size_t j) {
  // Pairs (0,1..n), (1,2..n), ...
  return i * (2 * n - i + 1) / 2 + (j - i - 1);
}

inline std::vector<std::pair<std::size_t, std::size_t>> plucker_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

template <Field K>
std::vector<element_t<K>> raw_plucker(const K& k, std::span<const element_t<K>> a, std::span<const element_t<K>> b) {
  const std::size_t n = a.size() - 1;
  std::vector<element_t<K>> p;
  p.reserve(plucker_size(n));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) p.push_back(k.sub(k.mul(a[i], b[j]), k.mul(a[j], b[i])));
  return p;
}

// Values of all three-term Grassmann-Plücker relations p_ij p_kl - p_ik p_jl + p_il p_jk (i<j<k<l).
template <Field K>
std::vector<element_t<K>> plucker_relations(const K& k, std::size_t n, std::span<const element_t<K>> p) {
  if (p.size() != plucker_size(n)) fail("DimensionMismatch", "Plücker vector length mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> const element_t<K>& { return p[plucker_index(n, i, j)]; };
  std::vector<element_t<K>> out;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      for (std::size_t l = j + 1; l <= n; ++l)
        for (std::size_t m = l + 1; m <= n; ++m) {
          auto v = k.add(k.sub(k.mul(at(i, j), at(l, m)), k.mul(at(i, l), at(j, m))), k.mul(at(i, m), at(j, l)));
          out.push_back(std::move(v));
        }
  return out;
}

template <Field K>
class ProjectiveLine {
 public:
  using E = element_t<K>;

  // Spans the two points; throws DependentPoints when they coincide projectively.
  ProjectiveLine(const K& k, std::span<const E> a, std::span<const E> b) : k_(k) {
    if (a.size() != b.size() || a.size() < 2) fail("DimensionMismatch", "line points must share an ambient space");
    DenseMatrix<K> m(k, 2, a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      m(0, j) = a[j];
      m(1, j) = b[j];
    }
    auto pivots = rref_in_place(m);
    if (pivots.size() < 2) fail("DependentPoints", "points do not span a line");
    a_ = m.row(0);
    b_ = m.row(1);
    plucker_ = raw_plucker<K>(k, a_, b_);
    normalize_projective(k_, plucker_);
    normalize_projective(k_, a_);
    normalize_projective(k_, b_);
  }

  ProjectiveLine(const ProjectivePoint<K>& a, const ProjectivePoint<K>& b)
      : ProjectiveLine(a.field(), a.coords(), b.coords()) {}

  const K& field() const noexcept { return k_; }
  std::size_t ambient_dim() const noexcept { return a_.size() - 1; }
  // Canonical spanning points (normalized reduced-echelon rows).
  const std::vector<E>& a() const noexcept { return a_; }
  const std::vector<E>& b() const noexcept { return b_; }
  const std::vector<E>& plucker() const noexcept { return plucker_; }

  const E& p(std::size_t i, std::size_t j) const { return plucker_[plucker_index(ambient_dim(), i, j)]; }

  bool operator==(const ProjectiveLine& o) const { return plucker_ == o.plucker_; }
  bool operator<(const ProjectiveLine& o) const { return less_vector<K>(k_, plucker_, o.plucker_); }
  std::size_t hash() const { return hash_vector<K>(k_, plucker_); }

  // True iff x lies on the line.
  bool contains(std::span<const E> x) const {
    DenseMatrix<K> m(k_, 3, a_.size());
    for (std::size_t j = 0; j < a_.size(); ++j) {
      m(0, j) = a_[j];
      m(1, j) = b_[j];
      m(2, j) = x[j];
    }
    return rank(m) == 2;
  }

  // Point s*a + t*b of the canonical parametrization.
  std::vector<E> point(const E& s, const E& t) const {
    std::vector<E> x(a_.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = k_.add(k_.mul(s, a_[i]), k_.mul(t, b_[i]));
    return x;
  }

 private:
  K k_;
  std::vector<E> a_, b_, plucker_;
};

template <Field K>
ProjectiveLine<K> line_from_points(const K& k, std::span<const element_t<K>> a, std::span<const element_t<K>> b) {
  return ProjectiveLine<K>(k, a, b);
}

template <Field K>
ProjectiveLine<K> line_from_points(const K& k, const std::vector<element_t<K>>& a, const std::vector<element_t<K>>& b) {
  return ProjectiveLine<K>(k, std::span<const element_t<K>>(a), std::span<const element_t<K>>(b));
}

// Rebuilds a line from a (not necessarily normalized) Plücker vector.
template <Field K>
ProjectiveLine<K> line_from_plucker(const K& k, std::size_t n, std::span<const element_t<K>> p) {
  if (p.size() != plucker_size(n)) fail("DimensionMismatch", "Plücker vector length mismatch");
  for (const auto& r : plucker_relations<K>(k, n, p))
    if (!k.is_zero(r)) fail("NotDecomposable", "Plücker vector violates a Grassmann-Plücker relation");
  std::size_t i0 = n + 1, j0 = n + 1;
  for (std::size_t i = 0; i <= n && i0 > n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (!k.is_zero(p[plucker_index(n, i, j)])) {
        i0 = i;
        j0 = j;
        break;
      }
  if (i0 > n) fail("ZeroPoint", "zero Plücker vector");
  auto signed_p = [&](std::size_t i, std::size_t j) {
    if (i == j) return k.zero();
    return i < j ? p[plucker_index(n, i, j)] : k.neg(p[plucker_index(n, j, i)]);
  };
  std::vector<element_t<K>> u(n + 1), v(n + 1);
  for (std::size_t c = 0; c <= n; ++c) {
    u[c] = signed_p(i0, c);
    v[c] = signed_p(j0, c);
  }
  ProjectiveLine<K> line(k, std::span<const element_t<K>>(u), std::span<const element_t<K>>(v));
  std::vector<element_t<K>> normalized(p.begin(), p.end());
  normalize_projective(k, normalized);
  if (normalized != line.plucker()) fail("NotDecomposable", "Plücker vector does not match its reconstruction");
  return line;
}

template <Field K>
class ProjectivePlane {
 public:
  using E = element_t<K>;

  ProjectivePlane(const K& k, std::vector<E> a, std::vector<E> b, std::vector<E> c) : k_(k) {
    if (a.size() != b.size() || a.size() != c.size()) fail("DimensionMismatch", "plane points must share an ambient space");
    DenseMatrix<K> m(k, {a, b, c});
    if (rank(m) < 3) fail("DependentPoints", "points do not span a plane");
    normalize_projective(k_, a);
    normalize_projective(k_, b);
    normalize_projective(k_, c);
    a_ = std::move(a);
    b_ = std::move(b);
    c_ = std::move(c);
  }

  const K& field() const noexcept { return k_; }
  const std::vector<E>& a() const noexcept { return a_; }
  const std::vector<E>& b() const noexcept { return b_; }
  const std::vector<E>& c() const noexcept { return c_; }

  // Ambient-space matrix whose columns are a, b, c (plane parameters s, t, u).
  DenseMatrix<K> frame() const { return DenseMatrix<K>::from_columns(k_, {a_, b_, c_}); }

  bool contains(std::span<const E> x) const {
    DenseMatrix<K> m(k_, {a_, b_, c_, std::vector<E>(x.begin(), x.end())});
    return rank(m) == 3;
  }

  bool contains(const ProjectiveLine<K>& l) const { return contains(l.a()) && contains(l.b()); }

  // Same plane as o, independent of spanning points.
  bool same_as(const ProjectivePlane& o) const { return contains(o.a_) && contains(o.b_) && contains(o.c_); }

 private:
  K k_;
  std::vector<E> a_, b_, c_;
};

// Natural log of max |p_ij| over the primitive integer Plücker vector.
struct Height {
  double value = 0.0;
};

inline double log_abs(const mpz_class& z) {
  if (sgn(z) == 0) return -INFINITY;
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

template <Field K>
Height line_height(const ProjectiveLine<K>& line) {
  if constexpr (!std::same_as<K, RationalField>) {
    (void)line;
    fail("WrongField", "heights are defined for lines over Q");
  } else {
    double best = 0.0;
    mpz_class biggest = 0;
    for (const auto& c : line.plucker()) {
      mpz_class a = abs(c.get_num());
      if (a > biggest) biggest = a;
    }
    best = log_abs(biggest);
    return Height{best};
  }
}

// ---------------------------------------------------------------------------
// Finite-field enumeration

inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  // [n k]_q = prod_{i<k} (q^{n-i} - 1) / (q^{i+1} - 1), evaluated exactly.
  mpz_class num = 1, den = 1, qq = q;
  for (unsigned i = 0; i < k; ++i) {
    mpz_class a, b;
    mpz_pow_ui(a.get_mpz_t(), qq.get_mpz_t(), n - i);
    mpz_pow_ui(b.get_mpz_t(), qq.get_mpz_t(), i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  mpz_class r = num / den;
  return r.get_ui();
}

namespace detail {

// Mixed-radix counter over `slots` digits in [0, q).  Returns false on wrap-around.
inline bool advance(std::vector<std::uint64_t>& digits, std::uint64_t q) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < q) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace detail

// The Schubert cell of 2-planes whose echelon basis has pivots (i, j).
struct SchubertCell {
  std::size_t i = 0, j = 1;
  bool operator==(const SchubertCell&) const = default;
};

inline std::vector<SchubertCell> schubert_cells(std::size_t n) {
  std::vector<SchubertCell> cells;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) cells.push_back({i, j});
  return cells;
}

// Free positions of the cell's first row (after i, excluding j) and second row (after j).
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> cell_free_positions(std::size_t n, SchubertCell cell) {
  std::vector<std::size_t> fa, fb;
  for (std::size_t t = cell.i + 1; t <= n; ++t)
    if (t != cell.j) fa.push_back(t);
  for (std::size_t t = cell.j + 1; t <= n; ++t) fb.push_back(t);
  return {fa, fb};
}

// Calls fn(a, b) with the echelon rows of every line in the cell, a-entries
// varying slowest, each row's free entries in lexicographic index order.
template <FiniteField K, class Fn>
void for_each_line_in_cell(const K& k, std::size_t n, SchubertCell cell, Fn&& fn) {
  using E = element_t<K>;
  const std::uint64_t q = k.order();
  const auto elements = all_elements(k);
  auto [fa, fb] = cell_free_positions(n, cell);
  std::vector<E> a(n + 1, k.zero()), b(n + 1, k.zero());
  a[cell.i] = k.one();
  b[cell.j] = k.one();
  std::vector<std::uint64_t> da(fa.size(), 0), db(fb.size(), 0);
  do {
    for (std::size_t s = 0; s < fa.size(); ++s) a[fa[s]] = elements[da[s]];
    std::fill(db.begin(), db.end(), 0);
    do {
      for (std::size_t s = 0; s < fb.size(); ++s) b[fb[s]] = elements[db[s]];
      fn(std::span<const E>(a), std::span<const E>(b));
    } while (detail::advance(db, q));
  } while (detail::advance(da, q));
}

// Streams every line of P^n(F_q) exactly once, cells in lexicographic pivot order.
template <FiniteField K, class Fn>
void for_each_line(const K& k, std::size_t n, Fn&& fn) {
  for (auto cell : schubert_cells(n)) for_each_line_in_cell(k, n, cell, fn);
}

template <FiniteField K>
std::vector<ProjectiveLine<K>> enumerate_lines(const K& k, std::size_t n) {
  std::vector<ProjectiveLine<K>> out;
  for_each_line(k, n, [&](std::span<const element_t<K>> a, std::span<const element_t<K>> b) {
    out.emplace_back(k, a, b);
  });
  return out;
}

// Streams every point of P^n(F_q), normalized, in lexicographic order.
template <FiniteField K, class Fn>
void for_each_point(const K& k, std::size_t n, Fn&& fn) {
  using E = element_t<K>;
  const std::uint64_t q = k.order();
  const auto elements = all_elements(k);
  std::vector<E> x(n + 1);
  for (std::size_t lead = 0; lead <= n; ++lead) {
    std::fill(x.begin(), x.end(), k.zero());
    x[lead] = k.one();
    std::vector<std::uint64_t> d(n - lead, 0);
    do {
      for (std::size_t s = 0; s < d.size(); ++s) x[lead + 1 + s] = elements[d[s]];
      fn(std::span<const E>(x));
    } while (detail::advance(d, q));
  }
}

inline std::uint64_t projective_point_count(std::size_t n, std::uint64_t q) {
  std::uint64_t count = 0, pw = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    count += pw;
    pw *= q;
  }
  return count;
}

}  // namespace fano

template <fano::Field K>
struct std::hash<fano::ProjectiveLine<K>> {
  std::size_t operator()(const fano::ProjectiveLine<K>& l) const { return l.hash(); }
};

template <fano::Field K>
struct std::hash<fano::ProjectivePoint<K>> {
  std::size_t operator()(const fano::ProjectivePoint<K>& p) const { return p.hash(); }
};
