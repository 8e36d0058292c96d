#pragma once

// The tangent-plane self-map on the lines of a cubic fourfold.
//
// For a line L = <a, b> on X and a direction c, expand
//     f(s a + t b + u c) = u B(s,t) + u^2 C(s,t) + u^3 D,
// (the u^0 term vanishes because L lies on X).  B is linear in c and vanishes
// for c in <a, b>, so on a 4-dimensional complement the condition B == 0 is a
// 3 x 4 linear system.  Rank 3 gives the unique plane P = <a, b, c> tangent to
// X along L, on which f|P = u^2 (C1 s + C2 t + D u); the residual line
// {C1 s + C2 t + D u = 0} is the image of L.  A kernel of dimension >= 2
// means a P^3 is tangent along L: the map is undefined there.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fano/cubic.hpp"
#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/linalg.hpp"
#include "fano/polynomial.hpp"
#include "fano/projective.hpp"

namespace fano {

template <Field K>
struct TangencySystem {
  DenseMatrix<K> matrix;                              // rows s^2, st, t^2; one column per complement vector
  std::vector<std::vector<element_t<K>>> complement;  // 4 vectors completing <a, b> to K^6

  std::size_t rank() const { return fano::rank(matrix); }
};

namespace detail {

// First standard basis vectors not among the pivot columns of <a, b>.
template <Field K>
std::vector<std::vector<element_t<K>>> standard_complement(const ProjectiveLine<K>& L) {
  const K& k = L.field();
  const std::size_t n1 = L.a().size();
  DenseMatrix<K> m(k, {L.a(), L.b()});
  auto pivots = rref_in_place(m);
  std::vector<std::vector<element_t<K>>> out;
  for (std::size_t j = 0; j < n1; ++j) {
    if (j == pivots[0] || j == pivots[1]) continue;
    std::vector<element_t<K>> e(n1, k.zero());
    e[j] = k.one();
    out.push_back(std::move(e));
  }
  return out;
}

// Coefficients (s^2, st, t^2) of Q(s a + t b) for a quadric Q.
template <Field K>
std::array<element_t<K>, 3> restrict_quadric(const HomogeneousPoly<K>& Q, std::span<const element_t<K>> a,
                                             std::span<const element_t<K>> b) {
  const K& k = Q.field();
  std::vector<element_t<K>> sum(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sum[i] = k.add(a[i], b[i]);
  const auto qa = Q.eval(a), qb = Q.eval(b);
  const auto mixed = k.sub(k.sub(Q.eval(sum), qa), qb);
  return {qa, mixed, qb};
}

}  // namespace detail

// Tangency conditions along L; throws NotOnX when L is not on X.
template <Field K>
TangencySystem<K> tangency_system(const CubicFourfold<K>& X, const ProjectiveLine<K>& L,
                                  std::optional<std::vector<std::vector<element_t<K>>>> complement = std::nullopt) {
  const K& k = X.field();
  if (!line_on_cubic(X, L)) fail("NotOnX", "line is not contained in the cubic");
  auto comp = complement ? std::move(*complement) : detail::standard_complement(L);
  if (comp.size() != 4) fail("DimensionMismatch", "complement must have 4 vectors");
  {
    std::vector<std::vector<element_t<K>>> all = comp;
    all.push_back(L.a());
    all.push_back(L.b());
    if (rank_of_vectors(k, all) != 6) fail("DependentPoints", "complement does not complete the line to K^6");
  }
  DenseMatrix<K> M(k, 3, 4);
  for (std::size_t col = 0; col < 4; ++col) {
    // B_c = sum_i c_i d_i f, a quadric.
    HomogeneousPoly<K> Bc(k, 6, 2);
    for (std::size_t i = 0; i < 6; ++i)
      if (!k.is_zero(comp[col][i])) Bc = Bc + X.partials()[i].scaled(comp[col][i]);
    auto r = detail::restrict_quadric(Bc, std::span<const element_t<K>>(L.a()), std::span<const element_t<K>>(L.b()));
    for (std::size_t row = 0; row < 3; ++row) M(row, col) = r[row];
  }
  return TangencySystem<K>{std::move(M), std::move(comp)};
}

enum class PhiKind { Image, Indeterminate, DegenerateResidual, NotOnX };

inline const char* phi_kind_name(PhiKind k) {
  switch (k) {
    case PhiKind::Image: return "image";
    case PhiKind::Indeterminate: return "indeterminate";
    case PhiKind::DegenerateResidual: return "degenerate_residual";
    case PhiKind::NotOnX: return "not_on_x";
  }
  return "?";
}

template <Field K>
struct PhiResult {
  PhiKind kind = PhiKind::NotOnX;
  std::size_t kernel_dim = 0;                 // dimension of the tangent-direction kernel
  std::optional<ProjectiveLine<K>> image;     // Image
  std::optional<ProjectivePlane<K>> plane;    // Image, DegenerateResidual: the tangent plane <a, b, c>
  std::optional<HomogeneousPoly<K>> residual; // Image: m(s, t, u) with f|plane = u^2 m

  bool ok() const { return kind == PhiKind::Image; }
};

// f restricted to the plane <a, b, c> in parameters (s, t, u).
template <Field K>
HomogeneousPoly<K> restrict_to_plane(const CubicFourfold<K>& X, const std::vector<element_t<K>>& a,
                                     const std::vector<element_t<K>>& b, const std::vector<element_t<K>>& c) {
  return poly_substitute_linear(X.poly(), DenseMatrix<K>::from_columns(X.field(), {a, b, c}));
}

template <Field K>
PhiResult<K> apply_phi(const CubicFourfold<K>& X, const ProjectiveLine<K>& L,
                        std::optional<std::vector<std::vector<element_t<K>>>> complement = std::nullopt) {
  const K& k = X.field();
  if (k.characteristic() == 2 || k.characteristic() == 3) fail("BadCharacteristic", "characteristic 2 and 3 are excluded");
  PhiResult<K> res;
  if (!line_on_cubic(X, L)) return res;
  auto sys = tangency_system(X, L, std::move(complement));
  auto ker = kernel_basis(sys.matrix);
  res.kernel_dim = ker.size();
  if (ker.size() >= 2) {
    res.kind = PhiKind::Indeterminate;
    return res;
  }
  std::vector<element_t<K>> c(6, k.zero());
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 6; ++i) c[i] = k.add(c[i], k.mul(ker[0][j], sys.complement[j][i]));
  res.plane.emplace(k, L.a(), L.b(), c);

  auto fp = restrict_to_plane(X, L.a(), L.b(), c);
  // Variables (s, t, u); coefficients of s u^2, t u^2, u^3.
  const auto C1 = fp.coeff({1, 0, 2});
  const auto C2 = fp.coeff({0, 1, 2});
  const auto D = fp.coeff({0, 0, 3});
  if (k.is_zero(C1) && k.is_zero(C2) && k.is_zero(D)) {
    // f|plane has no u^2 part left; with the tangency it vanishes on the plane.
    if (!fp.is_zero()) fail("PostconditionFailed", "tangent plane restriction has stray terms");
    res.kind = PhiKind::DegenerateResidual;
    return res;
  }
  const std::vector<element_t<K>> mcoeffs{C1, C2, D};
  auto m = HomogeneousPoly<K>::linear_form(k, mcoeffs);
  auto u2 = HomogeneousPoly<K>::variable(k, 3, 2) * HomogeneousPoly<K>::variable(k, 3, 2);
  if (!(fp == u2 * m)) fail("PostconditionFailed", "f restricted to the tangent plane is not u^2 * m");

  DenseMatrix<K> mrow(k, {mcoeffs});
  auto ker_m = kernel_basis(mrow);
  std::vector<std::vector<element_t<K>>> pts;
  for (const auto& v : ker_m) {
    std::vector<element_t<K>> x(6, k.zero());
    for (std::size_t i = 0; i < 6; ++i)
      x[i] = k.add(k.add(k.mul(v[0], L.a()[i]), k.mul(v[1], L.b()[i])), k.mul(v[2], c[i]));
    pts.push_back(std::move(x));
  }
  ProjectiveLine<K> image = line_from_points(k, pts[0], pts[1]);
  if (!line_on_cubic(X, image)) fail("PostconditionFailed", "image line is not on the cubic");
  res.kind = PhiKind::Image;
  res.image = std::move(image);
  res.residual = std::move(m);
  return res;
}

// ---------------------------------------------------------------------------
// Orbits

enum class OrbitEnd { Budget, Indeterminate, DegenerateResidual, CycleEntered };

inline const char* orbit_end_name(OrbitEnd e) {
  switch (e) {
    case OrbitEnd::Budget: return "budget";
    case OrbitEnd::Indeterminate: return "indeterminate";
    case OrbitEnd::DegenerateResidual: return "degenerate_residual";
    case OrbitEnd::CycleEntered: return "cycle";
  }
  return "?";
}

// Natural-log height cap for orbits over Q.
inline constexpr double kDefaultHeightCap = 200.0;

template <Field K>
struct OrbitRecord {
  std::vector<ProjectiveLine<K>> iterates;  // l_0, ..., l_N, pairwise distinct
  std::vector<double> heights;              // over Q: height of each iterate
  OrbitEnd end = OrbitEnd::Budget;
  // Indeterminate / DegenerateResidual: phi undefined at iterates[stop_step].
  std::size_t stop_step = 0;
  // CycleEntered: phi(l_N) = l_preperiod, period = N + 1 - preperiod.
  std::size_t preperiod = 0;
  std::size_t period = 0;
  bool height_capped = false;  // Budget reached through the height cap
};

// Iterates phi from L until max_steps applications, an undefined step, a
// repeated line, or (over Q) a height above height_cap.  Hitting the cap is a
// Budget stop; the capped iterate is not recorded.
template <Field K>
OrbitRecord<K> iterate_orbit(const CubicFourfold<K>& X, const ProjectiveLine<K>& L, std::size_t max_steps,
                             double height_cap = kDefaultHeightCap) {
  if (!line_on_cubic(X, L)) fail("NotOnX", "orbit start is not on the cubic");
  OrbitRecord<K> rec;
  std::unordered_map<ProjectiveLine<K>, std::size_t> seen;
  rec.iterates.push_back(L);
  seen.emplace(L, 0);
  if constexpr (std::same_as<K, RationalField>) rec.heights.push_back(line_height(L).value);
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto r = apply_phi(X, rec.iterates.back());
    if (r.kind == PhiKind::Indeterminate || r.kind == PhiKind::DegenerateResidual) {
      rec.end = r.kind == PhiKind::Indeterminate ? OrbitEnd::Indeterminate : OrbitEnd::DegenerateResidual;
      rec.stop_step = rec.iterates.size() - 1;
      return rec;
    }
    if (r.kind != PhiKind::Image) fail("PostconditionFailed", "orbit left the cubic");
    auto it = seen.find(*r.image);
    if (it != seen.end()) {
      rec.end = OrbitEnd::CycleEntered;
      rec.preperiod = it->second;
      rec.period = rec.iterates.size() - it->second;
      return rec;
    }
    if constexpr (std::same_as<K, RationalField>) {
      const double h = line_height(*r.image).value;
      if (h > height_cap) {
        rec.end = OrbitEnd::Budget;
        rec.height_capped = true;
        return rec;
      }
      rec.heights.push_back(h);
    }
    seen.emplace(*r.image, rec.iterates.size());
    rec.iterates.push_back(std::move(*r.image));
  }
  rec.end = OrbitEnd::Budget;
  return rec;
}

// Re-checks every recorded step: l_{k+1} = phi(l_k), all iterates on X.
template <Field K>
bool verify_orbit(const CubicFourfold<K>& X, const OrbitRecord<K>& rec) {
  for (std::size_t i = 0; i < rec.iterates.size(); ++i) {
    if (!line_on_cubic(X, rec.iterates[i])) return false;
    if (i + 1 < rec.iterates.size()) {
      auto r = apply_phi(X, rec.iterates[i]);
      if (!r.ok() || !(*r.image == rec.iterates[i + 1])) return false;
    }
  }
  if (rec.end == OrbitEnd::CycleEntered) {
    auto r = apply_phi(X, rec.iterates.back());
    if (!r.ok() || !(*r.image == rec.iterates[rec.preperiod])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Coordinate changes

// g.X = {f(G^{-1} x) = 0}.
template <Field K>
CubicFourfold<K> transform_cubic(const CubicFourfold<K>& X, const DenseMatrix<K>& G) {
  return CubicFourfold<K>(poly_substitute_linear(X.poly(), inverse(G)));
}

template <Field K>
ProjectiveLine<K> transform_line(const ProjectiveLine<K>& L, const DenseMatrix<K>& G) {
  return line_from_points(L.field(), G.apply(L.a()), G.apply(L.b()));
}

}  // namespace fano
