#pragma once

// Exact scalar fields: the rationals (GMP), prime fields F_p with p < 2^61,
// and small extensions F_{p^k}, k <= 4.  Elements are plain values; every
// operation goes through the field object, which carries the modulus data.

#include <gmpxx.h>

#include <array>
#include <concepts>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fano/errors.hpp"

namespace fano {

namespace detail {

__extension__ typedef unsigned __int128 uint128;

inline std::uint64_t mulmod_wide(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_wide(r, base, m);
    base = mulmod_wide(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_wide(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::int64_t parse_int64(std::string_view s) {
  if (s.empty()) throw ParseError("empty integer literal");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw ParseError("bad integer literal '" + std::string(s) + "'");
  std::int64_t v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer literal '" + std::string(s) + "'");
    if (v > (INT64_MAX - 9) / 10) throw ParseError("integer literal out of range '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

inline mpq_class parse_rational(std::string_view s) {
  auto slash = s.find('/');
  std::string num(s.substr(0, slash));
  std::string den = slash == std::string_view::npos ? std::string("1") : std::string(s.substr(slash + 1));
  auto valid = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, false)) throw ParseError("bad rational literal '" + std::string(s) + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

inline std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace detail

template <class K>
concept Field = requires(const K& k, const typename K::element& a, const typename K::element& b, std::int64_t n) {
  { k.zero() } -> std::convertible_to<typename K::element>;
  { k.one() } -> std::convertible_to<typename K::element>;
  { k.from_int(n) } -> std::convertible_to<typename K::element>;
  { k.add(a, b) } -> std::convertible_to<typename K::element>;
  { k.sub(a, b) } -> std::convertible_to<typename K::element>;
  { k.mul(a, b) } -> std::convertible_to<typename K::element>;
  { k.neg(a) } -> std::convertible_to<typename K::element>;
  { k.inv(a) } -> std::convertible_to<typename K::element>;
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { k.less(a, b) } -> std::convertible_to<bool>;
  { k.hash(a) } -> std::convertible_to<std::size_t>;
  { k.characteristic() } -> std::convertible_to<std::uint64_t>;
  { k.to_text(a) } -> std::convertible_to<std::string>;
  { k.parse(std::string_view{}) } -> std::convertible_to<typename K::element>;
  { k.name() } -> std::convertible_to<std::string>;
};

template <class K>
concept FiniteField = Field<K> && requires(const K& k, const typename K::element& a, std::uint64_t i) {
  { k.order() } -> std::convertible_to<std::uint64_t>;
  { k.element_at(i) } -> std::convertible_to<typename K::element>;
  { k.index_of(a) } -> std::convertible_to<std::uint64_t>;
};

template <Field K>
using element_t = typename K::element;

// ---------------------------------------------------------------------------
// F_p

class PrimeField {
 public:
  using element = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p), narrow_(p < (1ULL << 32)) {
    if (p >= (1ULL << 61)) fail("BadField", "prime must be below 2^61");
    if (!detail::is_prime(p)) fail("BadField", std::to_string(p) + " is not prime");
    if (p > 2 && p <= kSqrtTableLimit) {
      auto table = std::make_shared<std::vector<std::int32_t>>(p, -1);
      for (std::uint64_t x = 0; x <= p / 2; ++x) (*table)[x * x % p] = static_cast<std::int32_t>(x);
      sqrt_table_ = std::move(table);
    }
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  std::uint64_t order() const noexcept { return p_; }
  std::uint64_t modulus() const noexcept { return p_; }
  std::string name() const { return "F_" + std::to_string(p_); }

  element zero() const noexcept { return 0; }
  element one() const noexcept { return 1 % p_; }
  element from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<element>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
  }
  element from_rational(const mpq_class& q) const {
    std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
    if (den == 0) fail("BadPrime", std::to_string(p_) + " divides a denominator");
    std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p_);
    return mul(num, inv(den));
  }

  element add(element a, element b) const noexcept {
    element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  element sub(element a, element b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  element neg(element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  element mul(element a, element b) const noexcept {
    return narrow_ ? (a * b) % p_ : detail::mulmod_wide(a, b, p_);
  }
  element inv(element a) const {
    if (a == 0) fail("DivisionByZero", "inverse of zero in " + name());
    return detail::powmod(a, p_ - 2, p_);
  }
  bool is_zero(element a) const noexcept { return a == 0; }
  bool less(element a, element b) const noexcept { return a < b; }
  std::size_t hash(element a) const noexcept { return std::hash<std::uint64_t>{}(a); }

  element element_at(std::uint64_t i) const noexcept { return i; }
  std::uint64_t index_of(element a) const noexcept { return a; }

  // Square root from the precomputed table (small p) or nullopt when the table is absent.
  std::optional<std::optional<element>> table_sqrt(element a) const {
    if (!sqrt_table_) return std::nullopt;
    std::int32_t r = (*sqrt_table_)[a];
    if (r < 0) return std::optional<element>{};
    return std::optional<element>{static_cast<element>(r)};
  }

  std::string to_text(element a) const { return std::to_string(a); }
  element parse(std::string_view s) const { return from_rational(detail::parse_rational(s)); }

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

 private:
  static constexpr std::uint64_t kSqrtTableLimit = 1U << 16;
  std::uint64_t p_;
  bool narrow_;
  std::shared_ptr<const std::vector<std::int32_t>> sqrt_table_;
};

// ---------------------------------------------------------------------------
// F_{p^k} = F_p[g]/(modulus), k <= 4

struct ExtElement {
  std::array<std::uint64_t, 4> c{};
  bool operator==(const ExtElement&) const = default;
};

class ExtensionField {
 public:
  using element = ExtElement;
  static constexpr unsigned kMaxDegree = 4;

  // modulus: monic, low-to-high coefficients, size k + 1. Empty selects the
  // first irreducible monic polynomial in index order.
  ExtensionField(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus = {})
      : base_(p), k_(k), modulus_(std::move(modulus)) {
    if (k < 1 || k > kMaxDegree) fail("BadField", "extension degree must be in [1, 4]");
    order_ = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (order_ > (1ULL << 32) / p) fail("BadField", "extension field order must be below 2^32");
      order_ *= p;
    }
    if (modulus_.empty()) {
      modulus_ = first_irreducible(base_, k);
    } else {
      if (modulus_.size() != k + 1 || modulus_[k] % p != 1) fail("BadField", "modulus must be monic of degree k");
      for (auto& c : modulus_) c %= p;
      if (!is_irreducible(base_, modulus_)) fail("BadField", "modulus is reducible over F_p");
    }
  }

  std::uint64_t characteristic() const noexcept { return base_.characteristic(); }
  std::uint64_t order() const noexcept { return order_; }
  unsigned degree() const noexcept { return k_; }
  const std::vector<std::uint64_t>& modulus_poly() const noexcept { return modulus_; }
  const PrimeField& base() const noexcept { return base_; }
  std::string name() const { return "F_" + std::to_string(characteristic()) + "^" + std::to_string(k_); }

  element zero() const noexcept { return {}; }
  element one() const noexcept {
    element e;
    e.c[0] = base_.one();
    return e;
  }
  element from_int(std::int64_t v) const noexcept {
    element e;
    e.c[0] = base_.from_int(v);
    return e;
  }
  element from_rational(const mpq_class& q) const {
    element e;
    e.c[0] = base_.from_rational(q);
    return e;
  }
  element generator() const noexcept {
    element e;
    if (k_ == 1) {
      e.c[0] = base_.neg(modulus_[0]);
    } else {
      e.c[1] = 1;
    }
    return e;
  }

  element add(const element& a, const element& b) const noexcept {
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = base_.add(a.c[i], b.c[i]);
    return r;
  }
  element sub(const element& a, const element& b) const noexcept {
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = base_.sub(a.c[i], b.c[i]);
    return r;
  }
  element neg(const element& a) const noexcept {
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = base_.neg(a.c[i]);
    return r;
  }
  element mul(const element& a, const element& b) const noexcept {
    std::array<std::uint64_t, 2 * kMaxDegree - 1> prod{};
    for (unsigned i = 0; i < k_; ++i) {
      if (a.c[i] == 0) continue;
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(a.c[i], b.c[j]));
    }
    for (unsigned d = 2 * k_ - 2; d >= k_ && d < 2 * kMaxDegree; --d) {
      std::uint64_t lead = prod[d];
      if (lead == 0) continue;
      prod[d] = 0;
      for (unsigned i = 0; i < k_; ++i) prod[d - k_ + i] = base_.sub(prod[d - k_ + i], base_.mul(lead, modulus_[i]));
    }
    element r;
    for (unsigned i = 0; i < k_; ++i) r.c[i] = prod[i];
    return r;
  }
  element pow(element a, std::uint64_t e) const noexcept {
    element r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  element inv(const element& a) const {
    if (is_zero(a)) fail("DivisionByZero", "inverse of zero in " + name());
    return pow(a, order_ - 2);
  }
  bool is_zero(const element& a) const noexcept {
    for (unsigned i = 0; i < k_; ++i)
      if (a.c[i]) return false;
    return true;
  }
  bool less(const element& a, const element& b) const noexcept { return index_of(a) < index_of(b); }
  std::size_t hash(const element& a) const noexcept { return std::hash<std::uint64_t>{}(index_of(a)); }

  // Index = sum c_i p^i.
  element element_at(std::uint64_t idx) const noexcept {
    element e;
    const std::uint64_t p = characteristic();
    for (unsigned i = 0; i < k_; ++i) {
      e.c[i] = idx % p;
      idx /= p;
    }
    return e;
  }
  std::uint64_t index_of(const element& a) const noexcept {
    std::uint64_t idx = 0;
    for (unsigned i = k_; i-- > 0;) idx = idx * characteristic() + a.c[i];
    return idx;
  }

  // Text form: nonzero terms "c", "cg", "cg^i" joined by '+', e.g. "3+2g"; zero is "0".
  std::string to_text(const element& a) const {
    std::string out;
    for (unsigned i = 0; i < k_; ++i) {
      if (a.c[i] == 0) continue;
      if (!out.empty()) out += '+';
      out += std::to_string(a.c[i]);
      if (i >= 1) out += 'g';
      if (i >= 2) out += '^' + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }
  element parse(std::string_view s) const {
    if (s.find('g') == std::string_view::npos) return from_rational(detail::parse_rational(s));
    element r;
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t plus = s.find('+', start);
      std::string_view term = s.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
      if (term.empty()) throw ParseError("bad extension-field literal '" + std::string(s) + "'");
      unsigned power = 0;
      std::string_view coeff = term;
      auto gpos = term.find('g');
      if (gpos != std::string_view::npos) {
        coeff = term.substr(0, gpos);
        std::string_view rest = term.substr(gpos + 1);
        if (rest.empty()) {
          power = 1;
        } else if (rest[0] == '^') {
          power = static_cast<unsigned>(detail::parse_int64(rest.substr(1)));
        } else {
          throw ParseError("bad extension-field literal '" + std::string(s) + "'");
        }
      }
      if (power >= k_) throw ParseError("generator power out of range in '" + std::string(s) + "'");
      std::uint64_t c = coeff.empty() ? 1 : base_.from_int(detail::parse_int64(coeff));
      r.c[power] = base_.add(r.c[power], c);
      if (plus == std::string_view::npos) break;
      start = plus + 1;
    }
    return r;
  }

  bool operator==(const ExtensionField& o) const noexcept {
    return characteristic() == o.characteristic() && k_ == o.k_ && modulus_ == o.modulus_;
  }

  // Brute-force irreducibility for degree <= 4: no root, and for degree 4 no monic quadratic factor.
  static bool is_irreducible(const PrimeField& fp, const std::vector<std::uint64_t>& f) {
    const unsigned k = static_cast<unsigned>(f.size() - 1);
    const std::uint64_t p = fp.characteristic();
    if (k == 1) return true;
    for (std::uint64_t x = 0; x < p; ++x) {
      std::uint64_t v = 0;
      for (unsigned i = k + 1; i-- > 0;) v = fp.add(fp.mul(v, x), f[i]);
      if (v == 0) return false;
    }
    if (k <= 3) return true;
    // f = (x^2 + a x + b)(x^2 + c x + d) has a monic quadratic factor.
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        // Remainder of f mod x^2 + a x + b.
        std::array<std::uint64_t, 5> r{};
        for (unsigned i = 0; i <= k; ++i) r[i] = f[i];
        for (unsigned d = k; d >= 2; --d) {
          std::uint64_t lead = r[d];
          r[d] = 0;
          r[d - 1] = fp.sub(r[d - 1], fp.mul(lead, a));
          r[d - 2] = fp.sub(r[d - 2], fp.mul(lead, b));
        }
        if (r[0] == 0 && r[1] == 0) return false;
      }
    }
    return true;
  }

  static std::vector<std::uint64_t> first_irreducible(const PrimeField& fp, unsigned k) {
    const std::uint64_t p = fp.characteristic();
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint64_t> f(k + 1, 0);
      std::uint64_t t = idx;
      for (unsigned i = 0; i < k; ++i) {
        f[i] = t % p;
        t /= p;
      }
      f[k] = 1;
      if (is_irreducible(fp, f)) return f;
    }
    fail("BadField", "no irreducible polynomial found");
  }

 private:
  PrimeField base_;
  unsigned k_;
  std::vector<std::uint64_t> modulus_;
  std::uint64_t order_ = 1;
};

// ---------------------------------------------------------------------------
// Q

class RationalField {
 public:
  using element = mpq_class;

  std::uint64_t characteristic() const noexcept { return 0; }
  std::string name() const { return "Q"; }

  element zero() const { return mpq_class(0); }
  element one() const { return mpq_class(1); }
  element from_int(std::int64_t v) const { return mpq_class(mpz_class(std::to_string(v), 10)); }
  element from_rational(const mpq_class& q) const {
    mpq_class r(q);
    r.canonicalize();
    return r;
  }

  element add(const element& a, const element& b) const { return a + b; }
  element sub(const element& a, const element& b) const { return a - b; }
  element neg(const element& a) const { return -a; }
  element mul(const element& a, const element& b) const { return a * b; }
  element inv(const element& a) const {
    if (sgn(a) == 0) fail("DivisionByZero", "inverse of zero in Q");
    return 1 / a;
  }
  bool is_zero(const element& a) const { return sgn(a) == 0; }
  bool less(const element& a, const element& b) const { return cmp(a, b) < 0; }
  std::size_t hash(const element& a) const {
    std::size_t h = mpz_fdiv_ui(a.get_num_mpz_t(), 0xFFFFFFFBUL) ^ (sgn(a) < 0 ? 0x5bd1e995UL : 0UL);
    return detail::hash_mix(h, mpz_fdiv_ui(a.get_den_mpz_t(), 0xFFFFFFFBUL));
  }

  std::string to_text(const element& a) const { return a.get_str(10); }
  element parse(std::string_view s) const { return detail::parse_rational(s); }

  bool operator==(const RationalField&) const noexcept { return true; }
};

// ---------------------------------------------------------------------------
// Generic helpers

template <Field K>
element_t<K> field_div(const K& k, const element_t<K>& a, const element_t<K>& b) {
  return k.mul(a, k.inv(b));
}

template <Field K>
element_t<K> field_pow(const K& k, element_t<K> a, std::uint64_t e) {
  element_t<K> r = k.one();
  while (e) {
    if (e & 1) r = k.mul(r, a);
    a = k.mul(a, a);
    e >>= 1;
  }
  return r;
}

// Tonelli-Shanks over any finite field of odd order.
template <FiniteField K>
std::optional<element_t<K>> tonelli_sqrt(const K& k, const element_t<K>& a) {
  using E = element_t<K>;
  if (k.is_zero(a)) return a;
  const std::uint64_t q = k.order();
  if (q % 2 == 0) {
    // Characteristic 2: squaring is a bijection, sqrt(a) = a^(q/2).
    return field_pow(k, a, q / 2);
  }
  if (!(field_pow(k, a, (q - 1) / 2) == k.one())) return std::nullopt;
  std::uint64_t m = q - 1;
  unsigned s = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  E z = k.one();
  for (std::uint64_t i = 2; i < q; ++i) {
    z = k.element_at(i);
    if (!(field_pow(k, z, (q - 1) / 2) == k.one())) break;
  }
  E c = field_pow(k, z, m);
  E x = field_pow(k, a, (m + 1) / 2);
  E t = field_pow(k, a, m);
  unsigned r = s;
  while (!(t == k.one())) {
    unsigned i = 0;
    E t2 = t;
    while (!(t2 == k.one())) {
      t2 = k.mul(t2, t2);
      ++i;
    }
    E b = c;
    for (unsigned j = 0; j + i + 1 < r; ++j) b = k.mul(b, b);
    x = k.mul(x, b);
    c = k.mul(b, b);
    t = k.mul(t, c);
    r = i;
  }
  return x;
}

template <FiniteField K>
std::optional<element_t<K>> field_sqrt(const K& k, const element_t<K>& a) {
  if constexpr (std::same_as<K, PrimeField>) {
    if (auto t = k.table_sqrt(a)) return *t;
  }
  return tonelli_sqrt(k, a);
}

// Exact square root over Q, when it exists.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& a) {
  if (sgn(a) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(a.get_num_mpz_t()) || !mpz_perfect_square_p(a.get_den_mpz_t())) return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), a.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), a.get_den_mpz_t());
  return mpq_class(n, d);
}

template <FiniteField K>
std::vector<element_t<K>> all_elements(const K& k) {
  std::vector<element_t<K>> out;
  out.reserve(k.order());
  for (std::uint64_t i = 0; i < k.order(); ++i) out.push_back(k.element_at(i));
  return out;
}

// Reduction of a rational into any field of positive characteristic.
template <Field K>
element_t<K> from_rational(const K& k, const mpq_class& q) {
  return k.from_rational(q);
}

// ---------------------------------------------------------------------------
// Runtime field selection

struct FieldSpec {
  enum class Kind { Rationals, Prime, Extension };
  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;
  unsigned k = 1;
  std::vector<std::uint64_t> modulus;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p) { return {Kind::Prime, p, 1, {}}; }
  static FieldSpec extension(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus = {}) {
    return {Kind::Extension, p, k, std::move(modulus)};
  }

  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) q *= p;
    return kind == Kind::Rationals ? 0 : q;
  }

  // "Q", a prime "7", or a prime power "25" / "5^2".
  static FieldSpec parse(std::string_view s) {
    if (s == "Q" || s == "q" || s == "QQ") return rationals();
    auto caret = s.find('^');
    if (caret != std::string_view::npos) {
      auto p = static_cast<std::uint64_t>(detail::parse_int64(s.substr(0, caret)));
      auto k = static_cast<unsigned>(detail::parse_int64(s.substr(caret + 1)));
      if (!detail::is_prime(p)) throw ParseError("field base " + std::to_string(p) + " is not prime");
      return k == 1 ? prime(p) : extension(p, k);
    }
    std::int64_t q = detail::parse_int64(s);
    if (q < 2) throw ParseError("field size must be at least 2");
    auto uq = static_cast<std::uint64_t>(q);
    if (detail::is_prime(uq)) return prime(uq);
    for (std::uint64_t p = 2; p * p <= uq; ++p) {
      if (uq % p) continue;
      unsigned k = 0;
      std::uint64_t t = uq;
      while (t % p == 0) {
        t /= p;
        ++k;
      }
      if (t != 1 || !detail::is_prime(p)) break;
      return extension(p, k);
    }
    throw ParseError(std::string(s) + " is not a prime power");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Rationals: return "Q";
      case Kind::Prime: return std::to_string(p);
      case Kind::Extension: return std::to_string(order());
    }
    return "?";
  }
};

// Calls fn with a concrete field object selected at runtime.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  switch (spec.kind) {
    case FieldSpec::Kind::Prime: return fn(PrimeField(spec.p));
    case FieldSpec::Kind::Extension:
      if (spec.k == 1) return fn(PrimeField(spec.p));
      return fn(ExtensionField(spec.p, spec.k, spec.modulus));
    case FieldSpec::Kind::Rationals: break;
  }
  return fn(RationalField{});
}

// Same, restricted to finite fields.
template <class Fn>
decltype(auto) with_finite_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rationals) fail("WrongField", "a finite field is required");
  if (spec.kind == FieldSpec::Kind::Prime || spec.k == 1) return fn(PrimeField(spec.p));
  return fn(ExtensionField(spec.p, spec.k, spec.modulus));
}

template <Field K>
std::string field_label(const K& k) {
  if constexpr (FiniteField<K>) {
    return std::to_string(k.order());
  } else {
    return "Q";
  }
}

}  // namespace fano
