#pragma once

// Nodal cubic threefolds Y in P^4.  In a frame with the node y at
// (0, ..., 0, 1) the equation reads
//     g = Y4 q(Y0..Y3) - t(Y0..Y3),
// and the lines of Y through y are the directions d in P^3 with
// q(d) = t(d) = 0: the curve C_x, a (2, 3) complete intersection.
//
// Also here: the residual-line map on pairs of such lines and its inverse
// (the conic singular at y cut by the plane through a line and the node),
// and the builder of three-nodal threefolds from a binodal curve
// C' = {q2 = t3 = 0}.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "fano/cubic.hpp"
#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/linalg.hpp"
#include "fano/point_search.hpp"
#include "fano/polynomial.hpp"
#include "fano/projective.hpp"

namespace fano {

// Arithmetic genus of a complete intersection of degrees (d1, d2) in P^3.
inline long ci_genus(long d1, long d2) {
  if (d1 < 1 || d2 < 1) fail("InvalidArgument", "degrees must be positive");
  return d1 * d2 * (d1 + d2 - 4) / 2 + 1;
}

// Arithmetic genus of a curve of bidegree (a, b) on P^1 x P^1.
inline long bidegree_genus(long a, long b) {
  if (a < 1 || b < 1) fail("InvalidArgument", "bidegrees must be positive");
  return (a - 1) * (b - 1);
}

// Matrix of second partials at x (constant for quadrics).
template <Field K>
DenseMatrix<K> hessian_at(const HomogeneousPoly<K>& f, std::span<const element_t<K>> x) {
  const unsigned n = f.nvars();
  DenseMatrix<K> h(f.field(), n, n);
  if (f.degree() < 2) return h;
  for (unsigned i = 0; i < n; ++i) {
    auto di = f.derivative(i);
    for (unsigned j = i; j < n; ++j) {
      h(i, j) = di.derivative(j).eval(x);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

// f viewed in nvars >= f.nvars() variables (new variables appended).
template <Field K>
HomogeneousPoly<K> extend_variables(const HomogeneousPoly<K>& f, unsigned nvars) {
  if (nvars < f.nvars()) fail("DimensionMismatch", "cannot drop variables");
  HomogeneousPoly<K> r(f.field(), nvars, f.degree());
  Exponent e(nvars, 0);
  for (const auto& [exp, c] : f.terms()) {
    std::copy(exp.begin(), exp.end(), e.begin());
    r.set(e, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Node charts

// The curve {q = t = 0} in P^3 of directions of lines through a node.
template <Field K>
struct NodeLineCurve {
  HomogeneousPoly<K> q;
  HomogeneousPoly<K> t;
};

template <Field K>
class NodeChart {
 public:
  using E = element_t<K>;

  // frame: 5x5, last column the node; q and t in the first four chart coordinates.
  NodeChart(std::vector<E> node, DenseMatrix<K> frame, HomogeneousPoly<K> q, HomogeneousPoly<K> t)
      : node_(std::move(node)), frame_(std::move(frame)), frame_inv_(inverse(frame_)), q_(std::move(q)),
        t_(std::move(t)) {}

  const K& field() const noexcept { return frame_.field(); }
  const std::vector<E>& node() const noexcept { return node_; }
  const DenseMatrix<K>& frame() const noexcept { return frame_; }
  const HomogeneousPoly<K>& q_part() const noexcept { return q_; }
  const HomogeneousPoly<K>& t_part() const noexcept { return t_; }
  NodeLineCurve<K> curve() const { return {q_, t_}; }

  // The point (d, 0) of the chart in ambient coordinates.
  std::vector<E> direction_point(std::span<const E> d) const {
    if (d.size() != 4) fail("DimensionMismatch", "directions live in P^3");
    std::vector<E> x(d.begin(), d.end());
    x.push_back(field().zero());
    return frame_.apply(x);
  }

  // Direction of the line joining the node to x (x != node).
  std::vector<E> direction_of(std::span<const E> x) const {
    auto c = frame_inv_.apply(x);
    c.pop_back();
    normalize_projective(field(), c);
    return c;
  }

  ProjectiveLine<K> line_through(std::span<const E> d) const {
    return line_from_points(field(), node_, direction_point(d));
  }

 private:
  std::vector<E> node_;
  DenseMatrix<K> frame_, frame_inv_;
  HomogeneousPoly<K> q_, t_;
};

// Chart at the singular point y, with g o frame = Y4 q - t.  The default frame
// completes y by the standard vectors off its first nonzero coordinate.
template <Field K>
NodeChart<K> node_chart(const CubicThreefold<K>& Y, std::span<const element_t<K>> y,
                        std::optional<std::vector<std::vector<element_t<K>>>> complement = std::nullopt) {
  using E = element_t<K>;
  const K& k = Y.field();
  if (y.size() != 5) fail("DimensionMismatch", "node must be a point of P^4");
  std::vector<E> node(y.begin(), y.end());
  normalize_projective(k, node);
  if (!k.is_zero(Y.eval(node))) fail("NotSingular", "point is not on the threefold");
  for (const auto& g : Y.gradient_at(node))
    if (!k.is_zero(g)) fail("NotSingular", "gradient does not vanish at the point");

  std::vector<std::vector<E>> cols;
  if (complement) {
    if (complement->size() != 4) fail("DimensionMismatch", "chart complement needs 4 vectors");
    cols = std::move(*complement);
  } else {
    std::size_t lead = 0;
    while (k.is_zero(node[lead])) ++lead;
    for (std::size_t j = 0; j < 5; ++j) {
      if (j == lead) continue;
      std::vector<E> e(5, k.zero());
      e[j] = k.one();
      cols.push_back(std::move(e));
    }
  }
  cols.push_back(node);
  auto frame = DenseMatrix<K>::from_columns(k, cols);
  if (rank(frame) != 5) fail("DependentPoints", "chart frame is not invertible");

  auto h = poly_substitute_linear(Y.poly(), frame);
  HomogeneousPoly<K> q(k, 4, 2), t(k, 4, 3);
  Exponent sub(4);
  for (const auto& [e, c] : h.terms()) {
    std::copy(e.begin(), e.begin() + 4, sub.begin());
    switch (e[4]) {
      case 0: t.set(sub, k.neg(c)); break;
      case 1: q.set(sub, c); break;
      default: fail("ChartDegenerate", "chart has Y4^2 or Y4^3 terms");
    }
  }
  return NodeChart<K>(std::move(node), std::move(frame), std::move(q), std::move(t));
}

// The tangent cone is a smooth quadric: q has full rank.
template <Field K>
bool is_ordinary_node(const NodeChart<K>& chart) {
  const K& k = chart.field();
  if (k.characteristic() == 2) fail("BadCharacteristic", "quadric rank needs characteristic != 2");
  std::vector<element_t<K>> origin(4, k.zero());
  return rank(hessian_at(chart.q_part(), std::span<const element_t<K>>(origin))) == 4;
}

template <Field K>
bool node_line_membership(const NodeLineCurve<K>& curve, std::span<const element_t<K>> d) {
  const K& k = curve.q.field();
  return k.is_zero(curve.q.eval(d)) && k.is_zero(curve.t.eval(d));
}

// F_q-points of {q = t = 0} in P^3, normalized and sorted.  The quadric
// drives the fibered search; the cubic filters its points.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> curve_points_fq(const HomogeneousPoly<K>& q, const HomogeneousPoly<K>& t) {
  const K& k = q.field();
  std::vector<std::vector<element_t<K>>> pts;
  for_each_common_zero(k, {q}, [&](std::span<const element_t<K>> x) {
    if (!k.is_zero(t.eval(x))) return;
    std::vector<element_t<K>> v(x.begin(), x.end());
    normalize_projective(k, v);
    pts.push_back(std::move(v));
  });
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return less_vector<K>(k, a, b); });
  return pts;
}

template <FiniteField K>
std::vector<std::vector<element_t<K>>> enumerate_node_lines_fq(const NodeLineCurve<K>& curve) {
  return curve_points_fq(curve.q, curve.t);
}

// F_q-points of {q = t = 0} where the gradients of q and t are dependent.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> curve_singular_points_fq(const HomogeneousPoly<K>& q,
                                                                const HomogeneousPoly<K>& t) {
  const K& k = q.field();
  const auto gq = q.gradient(), gt = t.gradient();
  std::vector<std::vector<element_t<K>>> out;
  for (auto& x : curve_points_fq(q, t)) {
    DenseMatrix<K> jac(k, 2, x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      jac(0, i) = gq[i].eval(x);
      jac(1, i) = gt[i].eval(x);
    }
    if (rank(jac) < 2) out.push_back(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residual correspondences

// Residual line of the plane spanned by the lines <y, d1>, <y, d2>: on that
// plane g = s t m(s, t, u), and the result is {m = 0}.
template <Field K>
ProjectiveLine<K> residual_line_of_pair(const CubicThreefold<K>& Y, const NodeChart<K>& chart,
                                        std::span<const element_t<K>> d1, std::span<const element_t<K>> d2) {
  using E = element_t<K>;
  const K& k = Y.field();
  const auto curve = chart.curve();
  if (!node_line_membership(curve, d1) || !node_line_membership(curve, d2))
    fail("NotOnCurve", "direction does not give a line through the node");
  if (rank_of_vectors(k, {std::vector<E>(d1.begin(), d1.end()), std::vector<E>(d2.begin(), d2.end())}) < 2)
    fail("DependentDirections", "the two directions coincide");
  auto M = DenseMatrix<K>::from_columns(k, {chart.direction_point(d1), chart.direction_point(d2), chart.node()});
  auto gp = poly_substitute_linear(Y.poly(), M);
  if (gp.is_zero()) fail("PlaneInY", "the plane of the two lines lies in the threefold");
  auto m = divide_by_monomial(gp, Exponent{1, 1, 0});
  if (!m) fail("PostconditionFailed", "restriction is not divisible by both lines");
  auto st = HomogeneousPoly<K>::variable(k, 3, 0) * HomogeneousPoly<K>::variable(k, 3, 1);
  if (!(st * *m == gp)) fail("PostconditionFailed", "residual factorization does not hold");

  DenseMatrix<K> row(k, 1, 3);
  row(0, 0) = m->coeff({1, 0, 0});
  row(0, 1) = m->coeff({0, 1, 0});
  row(0, 2) = m->coeff({0, 0, 1});
  auto ker = kernel_basis(row);
  auto L = line_from_points(k, M.apply(ker[0]), M.apply(ker[1]));
  if (!line_on_cubic(Y, L)) fail("PostconditionFailed", "residual line is not on the threefold");
  return L;
}

template <Field K>
ProjectiveLine<K> residual_line_of_pair(const CubicThreefold<K>& Y, std::span<const element_t<K>> y,
                                        std::span<const element_t<K>> d1, std::span<const element_t<K>> d2) {
  return residual_line_of_pair(Y, node_chart(Y, y), d1, d2);
}

enum class ConicSplit { SplitOverBase, SplitOverQuadraticExt };

inline const char* conic_split_name(ConicSplit s) {
  return s == ConicSplit::SplitOverBase ? "split_over_base" : "split_over_quadratic_ext";
}

template <Field K>
struct ResidualConic {
  using E = element_t<K>;
  DenseMatrix<K> plane;        // columns a, b, y: parameters (s, t, u)
  HomogeneousPoly<K> conic;    // A s^2 + B s t + C t^2, free of u
  E discriminant;              // B^2 - 4 A C
  ConicSplit split = ConicSplit::SplitOverQuadraticExt;
  bool double_line = false;    // discriminant zero
  // SplitOverBase: roots (s : t), the two component lines, and their directions.
  std::vector<std::pair<E, E>> roots;
  std::vector<ProjectiveLine<K>> components;
  std::vector<std::vector<E>> directions;
};

namespace detail {

template <Field K>
std::optional<element_t<K>> scalar_sqrt(const K& k, const element_t<K>& a) {
  if constexpr (std::same_as<K, RationalField>) {
    (void)k;
    return rational_sqrt(a);
  } else {
    return field_sqrt(k, a);
  }
}

}  // namespace detail

// On the plane <L, y>: g = u * conic(s, t), the conic being a pair of lines
// through y.  Splitting is decided by the discriminant.
template <Field K>
ResidualConic<K> residual_conic_of_line(const CubicThreefold<K>& Y, const NodeChart<K>& chart,
                                        const ProjectiveLine<K>& L) {
  using E = element_t<K>;
  const K& k = Y.field();
  if (k.characteristic() == 2) fail("BadCharacteristic", "conic splitting needs characteristic != 2");
  if (!line_on_cubic(Y, L)) fail("NotOnY", "line is not on the threefold");
  if (L.contains(chart.node())) fail("LineThroughNode", "line passes through the node");
  auto M = DenseMatrix<K>::from_columns(k, {L.a(), L.b(), chart.node()});
  auto gp = poly_substitute_linear(Y.poly(), M);
  if (gp.is_zero()) fail("PlaneInY", "the plane through the line and the node lies in the threefold");
  auto conic = divide_by_monomial(gp, Exponent{0, 0, 1});
  if (!conic) fail("PostconditionFailed", "restriction is not divisible by the line");
  if (!(HomogeneousPoly<K>::variable(k, 3, 2) * *conic == gp))
    fail("PostconditionFailed", "residual factorization does not hold");
  for (const auto& [e, c] : conic->terms())
    if (e[2] != 0) fail("PostconditionFailed", "conic is not singular at the node");

  const E A = conic->coeff({2, 0, 0}), B = conic->coeff({1, 1, 0}), C = conic->coeff({0, 2, 0});
  ResidualConic<K> out{M, *conic, k.sub(k.mul(B, B), k.mul(k.from_int(4), k.mul(A, C))), ConicSplit::SplitOverQuadraticExt,
                       false, {}, {}, {}};
  out.double_line = k.is_zero(out.discriminant);
  auto root = detail::scalar_sqrt(k, out.discriminant);
  if (!root) return out;

  out.split = ConicSplit::SplitOverBase;
  if (k.is_zero(A)) {
    // t (B s + C t)
    out.roots = {{k.one(), k.zero()}, {k.neg(C), B}};
  } else {
    const E inv = k.inv(k.add(A, A));
    out.roots = {{k.mul(k.sub(*root, B), inv), k.one()}, {k.mul(k.neg(k.add(*root, B)), inv), k.one()}};
  }
  for (const auto& [s, t] : out.roots) {
    if (!k.is_zero(conic->eval(std::vector<E>{s, t, k.zero()})))
      fail("PostconditionFailed", "conic root check failed");
    auto x = L.point(s, t);
    out.components.push_back(line_from_points(k, chart.node(), x));
    out.directions.push_back(chart.direction_of(x));
  }
  return out;
}

template <Field K>
ResidualConic<K> residual_conic_of_line(const CubicThreefold<K>& Y, std::span<const element_t<K>> y,
                                        const ProjectiveLine<K>& L) {
  return residual_conic_of_line(Y, node_chart(Y, y), L);
}

// Over F_p a non-split conic splits over F_{p^2}: the roots s/t there.
inline std::pair<ExtElement, ExtElement> split_in_quadratic_extension(const PrimeField& fp, const ExtensionField& fq,
                                                                      const HomogeneousPoly<PrimeField>& conic) {
  if (fq.characteristic() != fp.characteristic() || fq.degree() != 2)
    fail("BadField", "expected the quadratic extension of the base field");
  auto lift = [&](std::uint64_t c) { return fq.from_int(static_cast<std::int64_t>(c)); };
  const auto A = lift(conic.coeff({2, 0, 0})), B = lift(conic.coeff({1, 1, 0})), C = lift(conic.coeff({0, 2, 0}));
  if (fq.is_zero(A)) fail("SplitOverBase", "conic with a rational root");
  const auto disc = fq.sub(fq.mul(B, B), fq.mul(fq.from_int(4), fq.mul(A, C)));
  auto r = tonelli_sqrt(fq, disc);
  if (!r) fail("PostconditionFailed", "discriminant has no square root in the quadratic extension");
  const auto inv = fq.inv(fq.add(A, A));
  std::pair<ExtElement, ExtElement> roots{fq.mul(fq.sub(*r, B), inv), fq.mul(fq.neg(fq.add(*r, B)), inv)};
  for (const auto& x : {roots.first, roots.second})
    if (!fq.is_zero(fq.add(fq.mul(fq.add(fq.mul(A, x), B), x), C)))
      fail("PostconditionFailed", "extension root check failed");
  return roots;
}

// ---------------------------------------------------------------------------
// Three-nodal threefolds

// Y4 q2 - t3 in P^4.
template <Field K>
HomogeneousPoly<K> three_nodal_equation(const HomogeneousPoly<K>& q2, const HomogeneousPoly<K>& t3) {
  if (q2.nvars() != 4 || q2.degree() != 2 || t3.nvars() != 4 || t3.degree() != 3)
    fail("DimensionMismatch", "expected a quadric and a cubic in 4 variables");
  const K& k = q2.field();
  return HomogeneousPoly<K>::variable(k, 5, 4) * extend_variables(q2, 5) - extend_variables(t3, 5);
}

template <Field K>
struct CurveNode {
  std::vector<element_t<K>> point;  // on C' in P^3
  element_t<K> lambda;              // grad t3 = lambda grad q2 there
  bool ordinary = false;
};

// Singular points of C' = {q2 = t3 = 0} over F_q with their node type.  On the
// smooth quadric, C' = {t3 - lambda q2 = 0} near a node n; the node is
// ordinary iff the Hessian of t3 - lambda q2 on the tangent space of the
// quadric at n has rank 2 (n itself spans its radical).
template <FiniteField K>
std::vector<CurveNode<K>> curve_nodes_fq(const HomogeneousPoly<K>& q2, const HomogeneousPoly<K>& t3) {
  using E = element_t<K>;
  const K& k = q2.field();
  const auto gq = q2.gradient(), gt = t3.gradient();
  std::vector<CurveNode<K>> out;
  for (auto& n : curve_singular_points_fq(q2, t3)) {
    std::vector<E> a(4), b(4);
    std::size_t piv = 4;
    for (std::size_t i = 0; i < 4; ++i) {
      a[i] = gq[i].eval(n);
      b[i] = gt[i].eval(n);
      if (piv == 4 && !k.is_zero(a[i])) piv = i;
    }
    CurveNode<K> node{n, k.zero(), false};
    if (piv == 4) {
      // Singular point of the quadric itself; never ordinary on C'.
      out.push_back(std::move(node));
      continue;
    }
    node.lambda = k.mul(b[piv], k.inv(a[piv]));
    auto H = hessian_at(t3, std::span<const E>(n));
    auto Hq = hessian_at(q2, std::span<const E>(n));
    DenseMatrix<K> tangent(k, 1, 4);
    for (std::size_t i = 0; i < 4; ++i) tangent(0, i) = a[i];
    auto T = DenseMatrix<K>::from_columns(k, kernel_basis(tangent));
    DenseMatrix<K> h(k, 4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) h(i, j) = k.sub(H(i, j), k.mul(node.lambda, Hq(i, j)));
    node.ordinary = rank(T.transpose() * h * T) == 2;
    out.push_back(std::move(node));
  }
  return out;
}

template <Field K>
struct NodeInfo {
  std::vector<element_t<K>> point;  // in P^4
  bool ordinary = false;
};

template <Field K>
struct ThreeNodalReport {
  std::uint64_t prime_power = 0;
  std::vector<CurveNode<K>> curve_nodes;  // nodes of C'
  std::vector<NodeInfo<K>> nodes;         // all singular points of Y
  bool collinear = false;                 // the nodes span less than a plane
};

// Singular points of Y over F_q; char 2 and 3 excluded.
template <FiniteField K>
std::vector<std::vector<element_t<K>>> singular_points_fq(const CubicThreefold<K>& Y) {
  const auto p = Y.field().characteristic();
  if (p == 2 || p == 3) fail("BadPrime", "characteristic 2 and 3 are excluded");
  return singular_points(Y);
}

template <FiniteField K>
std::vector<NodeInfo<K>> node_report(const CubicThreefold<K>& Y) {
  std::vector<NodeInfo<K>> out;
  for (auto& y : singular_points_fq(Y)) {
    bool ord = false;
    try {
      ord = is_ordinary_node(node_chart(Y, std::span<const element_t<K>>(y)));
    } catch (const Error&) {
      ord = false;
    }
    out.push_back({std::move(y), ord});
  }
  return out;
}

// Y = {Y4 q2 - t3 = 0} over F_q, after checking that q2 is nondegenerate and
// C' has exactly two ordinary nodes there.
template <FiniteField K>
std::pair<CubicThreefold<K>, ThreeNodalReport<K>> construct_three_nodal(const HomogeneousPoly<K>& q2,
                                                                       const HomogeneousPoly<K>& t3) {
  const K& k = q2.field();
  CubicThreefold<K> Y(three_nodal_equation(q2, t3));
  if (k.characteristic() == 2 || k.characteristic() == 3) fail("BadPrime", "characteristic 2 and 3 are excluded");
  std::vector<element_t<K>> origin(4, k.zero());
  if (rank(hessian_at(q2, std::span<const element_t<K>>(origin))) != 4)
    fail("InputCurveNotBinodal", "quadric is degenerate over F_" + std::to_string(k.order()));
  ThreeNodalReport<K> rep;
  rep.prime_power = k.order();
  rep.curve_nodes = curve_nodes_fq(q2, t3);
  if (rep.curve_nodes.size() != 2)
    fail("InputCurveNotBinodal", "curve has " + std::to_string(rep.curve_nodes.size()) + " singular points over F_" +
                                     std::to_string(k.order()));
  for (const auto& n : rep.curve_nodes)
    if (!n.ordinary) fail("InputCurveNotBinodal", "curve singularity is not an ordinary node");
  rep.nodes = node_report(Y);
  std::vector<std::vector<element_t<K>>> pts;
  for (const auto& n : rep.nodes) pts.push_back(n.point);
  rep.collinear = rank_of_vectors(k, pts) < 3;
  if (rep.collinear) fail("NodesCollinear", "the nodes of the threefold are collinear");
  return {std::move(Y), std::move(rep)};
}

// Over Q: the equation over Q plus one report per check prime.
inline std::pair<CubicThreefold<RationalField>, std::vector<ThreeNodalReport<PrimeField>>> construct_three_nodal(
    const HomogeneousPoly<RationalField>& q2, const HomogeneousPoly<RationalField>& t3,
    std::span<const std::uint64_t> check_primes) {
  CubicThreefold<RationalField> Y(three_nodal_equation(q2, t3));
  std::vector<ThreeNodalReport<PrimeField>> reports;
  for (auto p : check_primes) {
    PrimeField fp(p);
    reports.push_back(construct_three_nodal(reduce_poly(q2, fp), reduce_poly(t3, fp)).second);
  }
  return {std::move(Y), std::move(reports)};
}

template <Field K>
struct BinodalInput {
  HomogeneousPoly<K> q2;
  HomogeneousPoly<K> t3;
  std::vector<element_t<K>> n1, n2;  // the prescribed nodes of C'
  std::vector<ThreeNodalReport<PrimeField>> reports;  // one per check prime
};

// Random (q2, t3) over Q with C' singular at two random integer points n1, n2:
// q2 vanishes at both and t3 is singular at both (so the extra nodes of Y sit
// at Y4 = 0).  Candidates are kept once C' is binodal over every check prime.
inline std::optional<BinodalInput<RationalField>> find_binodal_input(std::mt19937_64& rng,
                                                                     std::span<const std::uint64_t> check_primes,
                                                                     unsigned max_attempts = 100,
                                                                     std::int64_t bound = kDefaultRationalBound) {
  using E = mpq_class;
  const RationalField Q;
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    auto n1 = random_vector(Q, 4, rng, bound);
    auto n2 = random_vector(Q, 4, rng, bound);
    if (rank_of_vectors(Q, {n1, n2}) < 2) continue;

    HomogeneousPoly<RationalField> qprobe(Q, 4, 2), tprobe(Q, 4, 3);
    DenseMatrix<RationalField> qc(Q, 2, qprobe.size()), tc(Q, 8, tprobe.size());
    for (std::size_t idx = 0; idx < qprobe.size(); ++idx) {
      HomogeneousPoly<RationalField> mono(Q, 4, 2);
      mono.set(idx, Q.one());
      qc(0, idx) = mono.eval(n1);
      qc(1, idx) = mono.eval(n2);
    }
    for (std::size_t idx = 0; idx < tprobe.size(); ++idx) {
      HomogeneousPoly<RationalField> mono(Q, 4, 3);
      mono.set(idx, Q.one());
      for (unsigned j = 0; j < 4; ++j) {
        auto d = mono.derivative(j);
        tc(j, idx) = d.eval(n1);
        tc(4 + j, idx) = d.eval(n2);
      }
    }
    auto combine = [&](const std::vector<std::vector<E>>& basis, unsigned deg) {
      HomogeneousPoly<RationalField> f(Q, 4, deg);
      for (const auto& v : basis) {
        auto c = random_scalar(Q, rng, bound);
        for (std::size_t i = 0; i < v.size(); ++i) f.add_to(i, c * v[i]);
      }
      return f;
    };
    auto q2 = combine(kernel_basis(qc), 2);
    auto t3 = combine(kernel_basis(tc), 3);
    if (q2.is_zero() || t3.is_zero()) continue;
    q2 = primitive_integer_poly(q2);
    t3 = primitive_integer_poly(t3);
    bool ok = true;
    std::vector<ThreeNodalReport<PrimeField>> reports;
    for (auto p : check_primes) {
      try {
        PrimeField fp(p);
        reports.push_back(construct_three_nodal(reduce_poly(q2, fp), reduce_poly(t3, fp)).second);
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (ok)
      return BinodalInput<RationalField>{std::move(q2), std::move(t3), std::move(n1), std::move(n2), std::move(reports)};
  }
  return std::nullopt;
}

}  // namespace fano
