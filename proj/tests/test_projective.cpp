#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "fano/projective.hpp"
#include "oracles.hpp"

using namespace fano;

namespace {

std::vector<mpq_class> qvec(std::initializer_list<long> v) {
  std::vector<mpq_class> r;
  for (long x : v) r.emplace_back(x);
  return r;
}

std::vector<std::uint64_t> random_fp(std::mt19937_64& rng, std::uint64_t p, std::size_t n) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng() % p;
  return v;
}

// Height recomputed from raw 2x2 minors of integer points, reduced by their gcd.
double height_oracle(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  std::vector<mpz_class> minors;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) minors.push_back(a[i] * b[j] - a[j] * b[i]);
  mpz_class g = 0, m = 0;
  for (const auto& x : minors) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (const auto& x : minors) {
    mpz_class r = abs(x) / g;
    if (r > m) m = r;
  }
  return std::log(m.get_d());
}

}  // namespace

TEST(Lines, PluckerExample) {
  RationalField q;
  auto L = line_from_points(q, qvec({1, -1, 0, 0, 0, 0}), qvec({0, 0, 1, -1, 0, 0}));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      long expect = 0;
      if (i == 0 && j == 2) expect = 1;
      if (i == 0 && j == 3) expect = -1;
      if (i == 1 && j == 2) expect = -1;
      if (i == 1 && j == 3) expect = 1;
      EXPECT_EQ(L.p(i, j), expect) << i << j;
    }
  for (const auto& r : plucker_relations<RationalField>(q, 5, L.plucker())) EXPECT_EQ(r, 0);
  EXPECT_EQ(line_height(L).value, 0.0);
}

TEST(Lines, DependentPoints) {
  RationalField q;
  auto a = qvec({1, 2, 3, 4, 5, 6});
  auto b = qvec({2, 4, 6, 8, 10, 12});
  try {
    (void)line_from_points(q, a, a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "DependentPoints");
  }
  EXPECT_THROW((void)line_from_points(q, a, b), Error);
}

TEST(Lines, SpanInvariance) {
  PrimeField k(101);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    auto a = random_fp(rng, 101, 6), b = random_fp(rng, 101, 6);
    if (rank_of_vectors(k, {a, b}) < 2) continue;
    std::vector<std::uint64_t> a2(6), b2(6);
    for (std::size_t i = 0; i < 6; ++i) {
      a2[i] = k.add(a[i], k.mul(3, b[i]));
      b2[i] = k.mul(2, b[i]);
    }
    EXPECT_EQ(line_from_points(k, a, b), line_from_points(k, a2, b2));
    EXPECT_EQ(std::hash<ProjectiveLine<PrimeField>>{}(line_from_points(k, a, b)),
              std::hash<ProjectiveLine<PrimeField>>{}(line_from_points(k, a2, b2)));
  }
}

TEST(Lines, RelationsVanish) {
  ExtensionField k(5, 2);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    std::vector<element_t<ExtensionField>> a(6), b(6);
    for (auto& x : a) x = k.element_at(rng() % 25);
    for (auto& x : b) x = k.element_at(rng() % 25);
    if (rank_of_vectors(k, {a, b}) < 2) continue;
    auto L = line_from_points(k, a, b);
    for (const auto& r : plucker_relations<ExtensionField>(k, 5, L.plucker())) EXPECT_TRUE(k.is_zero(r));
    EXPECT_TRUE(L.contains(a));
    EXPECT_TRUE(L.contains(b));
  }
}

TEST(Lines, PluckerRoundTrip) {
  RationalField q;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 100; ++t) {
    std::vector<mpq_class> a(6), b(6);
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = mpq_class(d(rng), 1 + std::abs(d(rng)));
    if (rank_of_vectors(q, {a, b}) < 2) continue;
    auto L = line_from_points(q, a, b);
    auto scaled = L.plucker();
    for (auto& c : scaled) c *= mpq_class(-7, 3);
    EXPECT_EQ(line_from_plucker<RationalField>(q, 5, scaled), L);
  }
  // A non-decomposable vector: p01 = p23 = 1.
  std::vector<mpq_class> p(15, 0);
  p[plucker_index(5, 0, 1)] = 1;
  p[plucker_index(5, 2, 3)] = 1;
  EXPECT_THROW(line_from_plucker<RationalField>(q, 5, p), Error);
}

TEST(Heights, MatchMinorOracle) {
  RationalField q;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> d(-30, 30);
  for (int t = 0; t < 300; ++t) {
    std::vector<mpz_class> a(6), b(6);
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng);
    std::vector<mpq_class> qa(a.begin(), a.end()), qb(b.begin(), b.end());
    if (rank_of_vectors(q, {qa, qb}) < 2) continue;
    auto L = line_from_points(q, qa, qb);
    const double h = line_height(L).value;
    EXPECT_NEAR(h, height_oracle(a, b), 1e-12);
    EXPECT_GE(h, 0.0);
    // Rescaling spanning points leaves the height unchanged.
    for (auto& x : qa) x *= mpq_class(5, 11);
    EXPECT_EQ(line_height(line_from_points(q, qa, qb)).value, h);
  }
  EXPECT_THROW((void)line_height(line_from_points(PrimeField(7), std::vector<std::uint64_t>{1, 0, 0},
                                                  std::vector<std::uint64_t>{0, 1, 0})),
               Error);
}

TEST(Enumeration, CountsMatchGaussianBinomial) {
  struct Case {
    std::size_t n;
    std::uint64_t q;
  };
  for (auto c : {Case{5, 2}, Case{1, 5}, Case{2, 3}, Case{3, 5}, Case{4, 3}}) {
    PrimeField k(c.q);
    auto lines = enumerate_lines(k, c.n);
    std::unordered_set<ProjectiveLine<PrimeField>> seen(lines.begin(), lines.end());
    EXPECT_EQ(seen.size(), lines.size());
    EXPECT_EQ(lines.size(), oracle::gauss2(static_cast<unsigned>(c.n + 1), c.q));
    EXPECT_EQ(lines.size(), gaussian_binomial(static_cast<unsigned>(c.n + 1), 2, c.q));
  }
  EXPECT_EQ(enumerate_lines(PrimeField(2), 5).size(), 651u);
  EXPECT_EQ(enumerate_lines(PrimeField(7), 1).size(), 1u);
  EXPECT_EQ(enumerate_lines(PrimeField(3), 2).size(), projective_point_count(2, 3));
  ExtensionField f4(2, 2);
  auto l4 = enumerate_lines(f4, 3);
  std::unordered_set<ProjectiveLine<ExtensionField>> s4(l4.begin(), l4.end());
  EXPECT_EQ(s4.size(), 357u);
}

TEST(Enumeration, PointsMatchOracle) {
  ExtensionField k(3, 2);
  std::size_t count = 0;
  for_each_point(k, 3, [&](std::span<const element_t<ExtensionField>>) { ++count; });
  EXPECT_EQ(count, oracle::all_points(k, 3).size());
  EXPECT_EQ(count, projective_point_count(3, 9));
}

TEST(Planes, MembershipMatchesMinors) {
  PrimeField k(7);
  std::mt19937_64 rng(5);
  int inside = 0;
  for (int t = 0; t < 300; ++t) {
    auto a = random_fp(rng, 7, 5), b = random_fp(rng, 7, 5), c = random_fp(rng, 7, 5);
    if (oracle::minor_rank(k, {a, b, c}) < 3) {
      EXPECT_THROW(ProjectivePlane<PrimeField>(k, a, b, c), Error);
      continue;
    }
    ProjectivePlane<PrimeField> P(k, a, b, c);
    std::vector<std::uint64_t> x = random_fp(rng, 7, 5);
    if (t % 3 == 0)
      for (std::size_t i = 0; i < 5; ++i) x[i] = k.add(k.mul(2, a[i]), k.mul(5, c[i]));
    if (std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; })) continue;
    const bool expect = oracle::minor_rank(k, {a, b, c, x}) == 3;
    EXPECT_EQ(P.contains(x), expect);
    inside += expect;
    ProjectivePlane<PrimeField> P2(k, std::vector<std::uint64_t>(a), std::vector<std::uint64_t>(c),
                                   std::vector<std::uint64_t>(b));
    EXPECT_TRUE(P.same_as(P2));
  }
  EXPECT_GT(inside, 50);
}
