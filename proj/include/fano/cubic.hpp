#pragma once

// Cubic hypersurfaces: the fourfold X = {f = 0} in P^5 and threefolds
// Y = {g = 0} in P^4, restriction to lines, smoothness certificates, random
// cubics through a prescribed line, and hyperplane sections.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/linalg.hpp"
#include "fano/point_search.hpp"
#include "fano/polynomial.hpp"
#include "fano/projective.hpp"

namespace fano {

// Cubic hypersurface in P^{nvars-1} with cached first partials.
template <Field K>
class CubicHypersurface {
 public:
  using E = element_t<K>;

  CubicHypersurface(HomogeneousPoly<K> f, unsigned expected_vars) : f_(std::move(f)) {
    if (f_.degree() != 3) fail("DimensionMismatch", "a cubic form must have degree 3");
    if (f_.nvars() != expected_vars) fail("DimensionMismatch", "cubic has the wrong number of variables");
    if (f_.is_zero()) fail("ZeroForm", "the zero form does not define a hypersurface");
    partials_ = f_.gradient();
  }

  const K& field() const noexcept { return f_.field(); }
  const HomogeneousPoly<K>& poly() const noexcept { return f_; }
  const std::vector<HomogeneousPoly<K>>& partials() const noexcept { return partials_; }
  unsigned nvars() const noexcept { return f_.nvars(); }

  E eval(std::span<const E> x) const { return f_.eval(x); }
  std::vector<E> gradient_at(std::span<const E> x) const {
    std::vector<E> g;
    g.reserve(partials_.size());
    for (const auto& d : partials_) g.push_back(d.eval(x));
    return g;
  }

 private:
  HomogeneousPoly<K> f_;
  std::vector<HomogeneousPoly<K>> partials_;
};

template <Field K>
class CubicFourfold : public CubicHypersurface<K> {
 public:
  explicit CubicFourfold(HomogeneousPoly<K> f) : CubicHypersurface<K>(std::move(f), 6) {}
};

template <Field K>
class CubicThreefold : public CubicHypersurface<K> {
 public:
  explicit CubicThreefold(HomogeneousPoly<K> g) : CubicHypersurface<K>(std::move(g), 5) {}

  // Born as a section: g = f o frame with frame a 6x5 matrix of rank 5.
  CubicThreefold(HomogeneousPoly<K> g, DenseMatrix<K> frame) : CubicHypersurface<K>(std::move(g), 5) {
    if (frame.rows() != 6 || frame.cols() != 5) fail("DimensionMismatch", "section frame must be 6x5");
    frame_ = std::move(frame);
  }

  const std::optional<DenseMatrix<K>>& frame() const noexcept { return frame_; }

  // Image in P^5 of a point of the section's P^4.
  std::vector<element_t<K>> to_ambient(std::span<const element_t<K>> y) const {
    if (!frame_) fail("NoFrame", "threefold was not constructed as a hyperplane section");
    return frame_->apply(y);
  }

  ProjectiveLine<K> line_to_ambient(const ProjectiveLine<K>& l) const {
    return line_from_points(this->field(), to_ambient(l.a()), to_ambient(l.b()));
  }

 private:
  std::optional<DenseMatrix<K>> frame_;
};

// f(s a + t b) = c[0] s^3 + c[1] s^2 t + c[2] s t^2 + c[3] t^3.
template <Field K>
struct BinaryCubic {
  std::array<element_t<K>, 4> c;

  bool is_zero(const K& k) const {
    for (const auto& x : c)
      if (!k.is_zero(x)) return false;
    return true;
  }
};

namespace detail {

template <Field K>
element_t<K> dot(const K& k, std::span<const element_t<K>> u, std::span<const element_t<K>> v) {
  element_t<K> acc = k.zero();
  for (std::size_t i = 0; i < u.size(); ++i) acc = k.add(acc, k.mul(u[i], v[i]));
  return acc;
}

}  // namespace detail

template <Field K>
BinaryCubic<K> restrict_to_line(const CubicHypersurface<K>& X, std::span<const element_t<K>> a,
                                std::span<const element_t<K>> b) {
  const K& k = X.field();
  if (a.size() != X.nvars() || b.size() != X.nvars()) fail("DimensionMismatch", "line lives in another ambient space");
  const auto ga = X.gradient_at(a);
  const auto gb = X.gradient_at(b);
  return BinaryCubic<K>{{X.eval(a), detail::dot<K>(k, ga, b), detail::dot<K>(k, gb, a), X.eval(b)}};
}

template <Field K>
BinaryCubic<K> restrict_to_line(const CubicHypersurface<K>& X, const ProjectiveLine<K>& L) {
  return restrict_to_line(X, std::span<const element_t<K>>(L.a()), std::span<const element_t<K>>(L.b()));
}

template <Field K>
bool line_on_cubic(const CubicHypersurface<K>& X, std::span<const element_t<K>> a, std::span<const element_t<K>> b) {
  const K& k = X.field();
  if (!k.is_zero(X.eval(a)) || !k.is_zero(X.eval(b))) return false;
  return restrict_to_line(X, a, b).is_zero(k);
}

template <Field K>
bool line_on_cubic(const CubicHypersurface<K>& X, const ProjectiveLine<K>& L) {
  return line_on_cubic(X, std::span<const element_t<K>>(L.a()), std::span<const element_t<K>>(L.b()));
}

// Cubic evaluation tuned for enumeration sweeps.  Over F_p with p < 2^10 all
// intermediate sums fit in 64 bits and a single reduction per evaluation
// suffices; other fields use the generic path.
template <Field K>
class CubicEvaluator {
 public:
  using E = element_t<K>;

  explicit CubicEvaluator(const HomogeneousPoly<K>& f) : k_(f.field()), f_(f), n_(f.nvars()) {
    if (f.degree() != 3) fail("DimensionMismatch", "CubicEvaluator needs a cubic");
    if constexpr (std::same_as<K, PrimeField>) {
      narrow_ = k_.characteristic() < (1U << 10);
      if (narrow_) {
        // f = sum_{i <= j} x_i x_j L_ij(x),  L_ij = sum_{l >= j} c_ijl x_l.
        lin_.assign(n_ * n_ * n_, 0);
        for (std::size_t idx = 0; idx < f.size(); ++idx) {
          const auto& fac = f.basis().factors(idx);
          lin_[(fac[0] * n_ + fac[1]) * n_ + fac[2]] = f.coeff(idx);
        }
        for (unsigned i = 0; i < n_; ++i)
          for (unsigned j = i; j < n_; ++j) {
            bool any = false;
            for (unsigned l = j; l < n_; ++l) any = any || lin_[(i * n_ + j) * n_ + l] != 0;
            if (any) pairs_.push_back({i, j});
          }
      }
    }
  }

  E operator()(std::span<const E> x) const {
    if constexpr (std::same_as<K, PrimeField>) {
      if (narrow_) {
        std::uint64_t acc = 0;
        for (auto [i, j] : pairs_) {
          const std::uint64_t* row = &lin_[(i * n_ + j) * n_];
          std::uint64_t lin = 0;
          for (unsigned l = j; l < n_; ++l) lin += row[l] * x[l];
          acc += x[i] * x[j] * lin;
        }
        return acc % k_.characteristic();
      }
    }
    return f_.eval(x);
  }

 private:
  K k_;
  HomogeneousPoly<K> f_;
  unsigned n_;
  bool narrow_ = false;
  std::vector<std::uint64_t> lin_;
  std::vector<std::pair<unsigned, unsigned>> pairs_;
};

// ---------------------------------------------------------------------------
// Smoothness

template <Field K>
struct SmoothnessResult {
  bool smooth = false;
  std::uint64_t prime_power = 0;  // the q of the scanned field
  std::optional<std::vector<element_t<K>>> singular_point;
};

// F_q-points where the form and all its partials vanish.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> singular_points(const CubicHypersurface<K>& X) {
  auto pts = common_zeros(X.field(), X.partials());
  if (X.field().characteristic() == 3) {
    std::erase_if(pts, [&](const auto& x) { return !X.field().is_zero(X.eval(x)); });
  }
  return pts;
}

// Exhaustive scan of P^n(F_q) for a common zero of f and its partials.  A
// smooth reduction certifies smoothness of the rational model; the scan itself
// sees only F_q-rational singular points.
template <FiniteField K>
SmoothnessResult<K> certify_smooth(const CubicHypersurface<K>& X) {
  const K& k = X.field();
  if (k.characteristic() == 2 || k.characteristic() == 3) fail("BadPrime", "characteristic 2 and 3 are excluded");
  SmoothnessResult<K> r;
  r.prime_power = k.order();
  auto pts = singular_points(X);
  r.smooth = pts.empty();
  if (!pts.empty()) r.singular_point = pts.front();
  return r;
}

// Rational cubic: reduces modulo the good prime q and scans.
inline SmoothnessResult<PrimeField> certify_smooth(const CubicHypersurface<RationalField>& X, std::uint64_t q) {
  if (q == 2 || q == 3) fail("BadPrime", "characteristic 2 and 3 are excluded");
  PrimeField fp(q);
  for (const auto& c : X.poly().coefficients())
    if (sgn(c) != 0 && mpz_divisible_ui_p(c.get_den_mpz_t(), q)) fail("BadPrime", std::to_string(q) + " divides a denominator");
  auto reduced = reduce_poly(X.poly(), fp);
  if (reduced.is_zero()) fail("BadPrime", "the cubic vanishes modulo " + std::to_string(q));
  return certify_smooth(CubicHypersurface<PrimeField>(reduced, X.nvars()));
}

// ---------------------------------------------------------------------------
// Sampling

// Uniform integer in [0, bound) from a standardized engine (rejection sampling),
// so that seeded runs agree across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

inline std::int64_t uniform_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Coefficient bound for sampling over Q.
inline constexpr std::int64_t kDefaultRationalBound = 10;

template <Field K>
element_t<K> random_scalar(const K& k, std::mt19937_64& rng, std::int64_t bound = kDefaultRationalBound) {
  if constexpr (FiniteField<K>) {
    (void)bound;
    return k.element_at(uniform_below(rng, k.order()));
  } else {
    return k.from_int(uniform_in(rng, -bound, bound));
  }
}

template <Field K>
std::vector<element_t<K>> random_vector(const K& k, std::size_t n, std::mt19937_64& rng,
                                        std::int64_t bound = kDefaultRationalBound) {
  std::vector<element_t<K>> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(k, rng, bound));
  return v;
}

template <Field K>
ProjectiveLine<K> random_line(const K& k, std::size_t n, std::mt19937_64& rng, std::int64_t bound = kDefaultRationalBound) {
  for (;;) {
    auto a = random_vector(k, n + 1, rng, bound);
    auto b = random_vector(k, n + 1, rng, bound);
    DenseMatrix<K> m(k, {a, b});
    if (rank(m) == 2) return line_from_points(k, a, b);
  }
}

// The 4 x (#monomials) matrix of the linear conditions f(sa+tb) == 0 on the coefficients of f.
template <Field K>
DenseMatrix<K> line_condition_matrix(const K& k, unsigned nvars, const ProjectiveLine<K>& L) {
  HomogeneousPoly<K> probe(k, nvars, 3);
  DenseMatrix<K> frame = DenseMatrix<K>::from_columns(k, {L.a(), L.b()});
  DenseMatrix<K> m(k, 4, probe.size());
  for (std::size_t idx = 0; idx < probe.size(); ++idx) {
    HomogeneousPoly<K> mono(k, nvars, 3);
    mono.set(idx, k.one());
    auto r = poly_substitute_linear(mono, frame);  // binary cubic in (s, t), ascending lex: t^3, s t^2, s^2 t, s^3
    for (unsigned row = 0; row < 4; ++row) m(row, idx) = r.coeff(3 - row);
  }
  return m;
}

template <Field K>
HomogeneousPoly<K> random_cubic_through_line(const K& k, unsigned nvars, const ProjectiveLine<K>& L, std::mt19937_64& rng,
                                             std::int64_t bound = kDefaultRationalBound) {
  auto basis = kernel_basis(line_condition_matrix(k, nvars, L));
  for (;;) {
    HomogeneousPoly<K> f(k, nvars, 3);
    for (const auto& v : basis) {
      auto c = random_scalar(k, rng, bound);
      if (k.is_zero(c)) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!k.is_zero(v[i])) f.add_to(i, k.mul(c, v[i]));
    }
    if (f.is_zero()) continue;
    if constexpr (std::same_as<K, RationalField>) f = primitive_integer_poly(f);
    return f;
  }
}

// Random X with line_on_cubic(X, L): uniform on the kernel over F_q, bounded
// integer weights on the kernel basis over Q. Deterministic in the seed.
template <Field K>
CubicFourfold<K> sample_cubic_through_line(const ProjectiveLine<K>& L, std::uint64_t seed,
                                           std::int64_t bound = kDefaultRationalBound) {
  if (L.ambient_dim() != 5) fail("DimensionMismatch", "cubic fourfolds live in P^5");
  std::mt19937_64 rng(seed);
  return CubicFourfold<K>(random_cubic_through_line(L.field(), 6, L, rng, bound));
}

template <Field K>
HomogeneousPoly<K> random_cubic(const K& k, unsigned nvars, std::mt19937_64& rng, std::int64_t bound = kDefaultRationalBound) {
  for (;;) {
    HomogeneousPoly<K> f(k, nvars, 3);
    for (std::size_t i = 0; i < f.size(); ++i) f.set(i, random_scalar(k, rng, bound));
    if (!f.is_zero()) return f;
  }
}

// Uniformly random cubic fourfold over F_q passing the smoothness scan.
template <FiniteField K>
CubicFourfold<K> random_smooth_fourfold(const K& k, std::mt19937_64& rng) {
  for (;;) {
    CubicFourfold<K> X(random_cubic(k, 6, rng));
    if (certify_smooth(X).smooth) return X;
  }
}

// ---------------------------------------------------------------------------
// Hyperplane sections

template <Field K>
CubicThreefold<K> hyperplane_section_in_frame(const CubicFourfold<K>& X, const DenseMatrix<K>& frame) {
  if (rank(frame) != 5) fail("DependentPoints", "section frame must have rank 5");
  return CubicThreefold<K>(poly_substitute_linear(X.poly(), frame), frame);
}

// Y = X cut by {H = 0}, in the frame given by the echelon kernel basis of H.
template <Field K>
CubicThreefold<K> hyperplane_section(const CubicFourfold<K>& X, std::span<const element_t<K>> H) {
  const K& k = X.field();
  if (H.size() != 6) fail("DimensionMismatch", "hyperplane must be a linear form in 6 variables");
  DenseMatrix<K> h(k, 1, 6);
  bool nonzero = false;
  for (std::size_t i = 0; i < 6; ++i) {
    h(0, i) = H[i];
    nonzero = nonzero || !k.is_zero(H[i]);
  }
  if (!nonzero) fail("ZeroForm", "hyperplane form is zero");
  auto basis = kernel_basis(h);
  return hyperplane_section_in_frame(X, DenseMatrix<K>::from_columns(k, basis));
}

// Lines of P^n(F_q) lying on a cubic hypersurface, by direct membership over all lines.
template <FiniteField K>
std::vector<ProjectiveLine<K>> lines_on_hypersurface_bruteforce(const CubicHypersurface<K>& X) {
  std::vector<ProjectiveLine<K>> out;
  for_each_line(X.field(), X.nvars() - 1, [&](std::span<const element_t<K>> a, std::span<const element_t<K>> b) {
    if (line_on_cubic(X, a, b)) out.emplace_back(X.field(), a, b);
  });
  return out;
}

}  // namespace fano
