#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fano/cubic.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fano;
using support::fermat;
using support::ints;

namespace {

template <Field K>
std::array<element_t<K>, 4> restrict_oracle(const K& k, const HomogeneousPoly<K>& f, const ProjectiveLine<K>& L) {
  std::vector<std::vector<element_t<K>>> M(f.nvars(), std::vector<element_t<K>>(2));
  for (unsigned i = 0; i < f.nvars(); ++i) {
    M[i][0] = L.a()[i];
    M[i][1] = L.b()[i];
  }
  auto r = oracle::substitute(k, oracle::from_poly(f), M);
  std::array<element_t<K>, 4> c;
  for (unsigned j = 0; j < 4; ++j) {
    auto it = r.find({3 - j, j});
    c[j] = it == r.end() ? k.zero() : it->second;
  }
  return c;
}

template <Field K>
std::vector<element_t<K>> point_on(const CubicHypersurface<K>& X, std::mt19937_64& rng) {
  for (;;) {
    auto x = random_vector(X.field(), X.nvars(), rng);
    // Solve along a random line through x for a root by exhaustive scan of F_q.
    auto y = random_vector(X.field(), X.nvars(), rng);
    for (const auto& t : all_elements(X.field())) {
      std::vector<element_t<K>> z(x.size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = X.field().add(x[i], X.field().mul(t, y[i]));
      if (std::all_of(z.begin(), z.end(), [&](const auto& v) { return X.field().is_zero(v); })) continue;
      if (X.field().is_zero(X.eval(z))) return z;
    }
  }
}

}  // namespace

TEST(Restrict, Examples) {
  RationalField q;
  CubicFourfold<RationalField> X(fermat(q, 6));
  auto L0 = support::fermat_line(q);
  EXPECT_TRUE(restrict_to_line(X, L0).is_zero(q));
  EXPECT_TRUE(line_on_cubic(X, L0));
  auto L1 = line_from_points(q, ints(q, {1, 0, 0, 0, 0, 0}), ints(q, {0, 1, 0, 0, 0, 0}));
  auto c = restrict_to_line(X, L1).c;
  EXPECT_EQ(c[0], 1);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], 0);
  EXPECT_EQ(c[3], 1);
  EXPECT_FALSE(line_on_cubic(X, L1));
}

TEST(Restrict, MatchesExpansionOracle) {
  std::mt19937_64 rng(1);
  PrimeField k(101);
  RationalField q;
  ExtensionField e(7, 2);
  for (int t = 0; t < 30; ++t) {
    CubicFourfold<PrimeField> X(random_cubic(k, 6, rng));
    auto L = random_line(k, 5, rng);
    EXPECT_EQ(restrict_to_line(X, L).c, restrict_oracle(k, X.poly(), L));
    CubicFourfold<RationalField> Xq(random_cubic(q, 6, rng));
    auto Lq = random_line(q, 5, rng);
    EXPECT_EQ(restrict_to_line(Xq, Lq).c, restrict_oracle(q, Xq.poly(), Lq));
    CubicFourfold<ExtensionField> Xe(random_cubic(e, 6, rng));
    auto Le = random_line(e, 5, rng);
    EXPECT_EQ(restrict_to_line(Xe, Le).c, restrict_oracle(e, Xe.poly(), Le));
  }
}

TEST(Restrict, MembershipIffZeroOnEnumeratedLines) {
  PrimeField k(5);
  std::mt19937_64 rng(2);
  auto L = random_line(k, 4, rng);
  CubicThreefold<PrimeField> Y(random_cubic_through_line(k, 5, L, rng));
  int on = 0;
  for (const auto& l : enumerate_lines(k, 4)) {
    const bool zero = restrict_oracle(k, Y.poly(), l) == std::array<std::uint64_t, 4>{0, 0, 0, 0};
    EXPECT_EQ(line_on_cubic(Y, l), zero);
    on += zero;
  }
  EXPECT_GE(on, 1);
}

TEST(Smoothness, FermatAndDegenerate) {
  PrimeField k(7);
  auto r = certify_smooth(CubicFourfold<PrimeField>(fermat(k, 6)));
  EXPECT_TRUE(r.smooth);
  EXPECT_EQ(r.prime_power, 7u);
  HomogeneousPoly<PrimeField> cube(k, 6, 3);
  cube.set(cube.basis().index(Exponent{3, 0, 0, 0, 0, 0}), 1);
  CubicFourfold<PrimeField> X(cube);
  auto s = certify_smooth(X);
  ASSERT_FALSE(s.smooth);
  ASSERT_TRUE(s.singular_point.has_value());
  EXPECT_EQ((*s.singular_point)[0], 0u);
  EXPECT_EQ(X.eval(*s.singular_point), 0u);
  for (auto g : X.gradient_at(*s.singular_point)) EXPECT_EQ(g, 0u);
  EXPECT_EQ(singular_points(X).size(), projective_point_count(4, 7));
}

TEST(Smoothness, BadPrimes) {
  RationalField q;
  CubicFourfold<RationalField> X(fermat(q, 6));
  EXPECT_TRUE(certify_smooth(X, 7).smooth);
  EXPECT_THROW(certify_smooth(X, 3), Error);
  EXPECT_THROW(certify_smooth(CubicFourfold<PrimeField>(fermat(PrimeField(3), 6))), Error);
  auto f = fermat(q, 6);
  f.set(0, mpq_class(1, 5));
  EXPECT_THROW(certify_smooth(CubicFourfold<RationalField>(f), 5), Error);
  EXPECT_NO_THROW(certify_smooth(CubicFourfold<RationalField>(f), 11));
}

TEST(Smoothness, ScanMatchesPointOracle) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {7ULL, 11ULL}) {
    PrimeField k(p);
    for (int t = 0; t < 2; ++t) {
      auto L = random_line(k, 5, rng);
      CubicFourfold<PrimeField> X0(random_cubic_through_line(k, 6, L, rng));
      auto sing_at = point_on(X0, rng);
      CubicFourfold<PrimeField> X(t == 0 ? X0.poly() : support::cubic_singular_at(k, 6, {sing_at}, rng));
      auto got = support::sorted(k, singular_points(X));
      auto want = support::sorted(k, oracle::singular_scan(k, oracle::from_poly(X.poly()), 6));
      EXPECT_EQ(got, want);
      EXPECT_EQ(certify_smooth(X).smooth, want.empty());
      if (t == 1) {
        EXPECT_FALSE(want.empty());
      }
    }
  }
}

TEST(Smoothness, ForcedSingularitiesInP4) {
  std::mt19937_64 rng(4);
  PrimeField k(13);
  ExtensionField e(5, 2);
  for (int t = 0; t < 3; ++t) {
    std::vector<std::vector<std::uint64_t>> pts;
    for (int i = 0; i < t + 1; ++i) {
      auto v = random_vector(k, 5, rng);
      while (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; })) v = random_vector(k, 5, rng);
      normalize_projective(k, v);
      pts.push_back(v);
    }
    CubicThreefold<PrimeField> Y(support::cubic_singular_at(k, 5, pts, rng));
    auto got = support::sorted(k, singular_points(Y));
    EXPECT_EQ(got, support::sorted(k, oracle::singular_scan(k, oracle::from_poly(Y.poly()), 5)));
    for (const auto& p : pts) EXPECT_TRUE(std::binary_search(got.begin(), got.end(), p));
  }
  std::vector<element_t<ExtensionField>> pe{e.one(), e.generator(), e.zero(), e.zero(), e.one()};
  CubicThreefold<ExtensionField> Ye(support::cubic_singular_at(e, 5, {pe}, rng));
  EXPECT_EQ(support::sorted(e, singular_points(Ye)), support::sorted(e, oracle::singular_scan(e, oracle::from_poly(Ye.poly()), 5)));
}

TEST(Sampling, ThroughLineAndDeterministic) {
  PrimeField k(101);
  RationalField q;
  ExtensionField e(5, 2);
  std::mt19937_64 rng(5);
  auto L = random_line(k, 5, rng);
  auto Lq = random_line(q, 5, rng);
  auto Le = random_line(e, 5, rng);
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_TRUE(line_on_cubic(sample_cubic_through_line(L, s), L));
    EXPECT_TRUE(line_on_cubic(sample_cubic_through_line(Lq, s), Lq));
    EXPECT_TRUE(line_on_cubic(sample_cubic_through_line(Le, s), Le));
  }
  EXPECT_EQ(sample_cubic_through_line(L, 9).poly(), sample_cubic_through_line(L, 9).poly());
  EXPECT_EQ(sample_cubic_through_line(Lq, 9).poly(), sample_cubic_through_line(Lq, 9).poly());
  EXPECT_FALSE(sample_cubic_through_line(L, 9).poly() == sample_cubic_through_line(L, 10).poly());
}

TEST(Sampling, ConditionKernelHasDimension52) {
  PrimeField k(101);
  RationalField q;
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    auto L = random_line(k, 5, rng);
    auto M = line_condition_matrix(k, 6, L);
    EXPECT_EQ(M.cols(), 56u);
    EXPECT_EQ(kernel_basis(M).size(), 52u);
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t i = 0; i < 4; ++i) rows.push_back(M.row(i));
    EXPECT_EQ(oracle::minor_rank(k, rows), 4u);
  }
  EXPECT_EQ(kernel_basis(line_condition_matrix(q, 6, support::fermat_line(q))).size(), 52u);
}

TEST(Sections, FermatCoordinateHyperplane) {
  RationalField q;
  CubicFourfold<RationalField> X(fermat(q, 6));
  auto Y = hyperplane_section(X, std::span<const mpq_class>(ints(q, {0, 0, 0, 0, 0, 1})));
  EXPECT_EQ(Y.poly(), fermat(q, 5));
  ASSERT_TRUE(Y.frame().has_value());
  for (std::size_t j = 0; j < 5; ++j)
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ((*Y.frame())(i, j), i == j ? 1 : 0);
  EXPECT_THROW(hyperplane_section(X, std::span<const mpq_class>(ints(q, {0, 0, 0, 0, 0, 0}))), Error);
}

TEST(Sections, LinesOnSectionAreLinesOfXInH) {
  PrimeField k(5);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2; ++t) {
    auto L = random_line(k, 5, rng);
    CubicFourfold<PrimeField> X(random_cubic_through_line(k, 6, L, rng));
    // H contains L, so at least one line survives.
    DenseMatrix<PrimeField> ab(k, {L.a(), L.b()});
    auto hs = kernel_basis(ab);
    std::vector<std::uint64_t> H(6, 0);
    for (const auto& h : hs) {
      auto c = random_scalar(k, rng);
      for (std::size_t i = 0; i < 6; ++i) H[i] = k.add(H[i], k.mul(c, h[i]));
    }
    if (std::all_of(H.begin(), H.end(), [](auto v) { return v == 0; })) H = hs[0];
    auto Y = hyperplane_section(X, std::span<const std::uint64_t>(H));
    std::set<ProjectiveLine<PrimeField>> from_y, from_x;
    for (const auto& l : lines_on_hypersurface_bruteforce(Y)) from_y.insert(Y.line_to_ambient(l));
    for (const auto& l : lines_on_hypersurface_bruteforce(X))
      if (detail::dot<PrimeField>(k, H, l.a()) == 0 && detail::dot<PrimeField>(k, H, l.b()) == 0) from_x.insert(l);
    EXPECT_EQ(from_y, from_x);
    EXPECT_TRUE(from_x.count(L));
    for (const auto& l : from_y) EXPECT_TRUE(line_on_cubic(X, l));
  }
}

TEST(Sections, FrameChangePreservesSingularCount) {
  PrimeField k(7);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 3; ++t) {
    auto X = random_smooth_fourfold(k, rng);
    // The tangent hyperplane at a point of X cuts a singular section.
    auto p = point_on(X, rng);
    auto H = X.gradient_at(p);
    auto Y = hyperplane_section(X, std::span<const std::uint64_t>(H));
    DenseMatrix<PrimeField> A(k, 5, 5);
    do {
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) A(i, j) = random_scalar(k, rng);
    } while (rank(A) < 5);
    auto Y2 = hyperplane_section_in_frame(X, *Y.frame() * A);
    const auto n1 = singular_points(Y).size(), n2 = singular_points(Y2).size();
    EXPECT_EQ(n1, n2);
    EXPECT_GE(n1, 1u);
    EXPECT_TRUE(oracle::equal(Y2.poly(), oracle::substitute(k, oracle::from_poly(Y.poly()), [&] {
      std::vector<std::vector<std::uint64_t>> rows;
      for (std::size_t i = 0; i < 5; ++i) rows.push_back(A.row(i));
      return rows;
    }())));
  }
}
