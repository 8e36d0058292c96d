#pragma once

// Dense homogeneous polynomials.  A polynomial of degree d in n variables
// stores one coefficient per monomial of the shared MonomialBasis(n, d);
// monomials are ordered lexicographically (ascending) by exponent vector.
//
// Text form:  "deg nvars { e0 e1 ... : coeff , ... }"  listing the nonzero
// terms in basis order.  Coefficients are "num/den" over Q and F_p, and the
// generator notation of ExtensionField ("3+2g") over F_{p^k}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fano/errors.hpp"
#include "fano/fields.hpp"
#include "fano/linalg.hpp"

namespace fano {

using Exponent = std::vector<unsigned>;

class MonomialBasis {
 public:
  static constexpr unsigned kMaxVars = 16;
  static constexpr unsigned kMaxDegree = 15;

  MonomialBasis(unsigned nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0 || nvars > kMaxVars) fail("DimensionMismatch", "unsupported variable count");
    if (degree > kMaxDegree) fail("DimensionMismatch", "unsupported degree");
    Exponent e(nvars, 0);
    generate(e, 0, degree);
    factors_.reserve(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      index_.emplace(pack(exps_[i]), static_cast<std::uint32_t>(i));
      std::vector<std::uint8_t> f;
      for (unsigned v = 0; v < nvars; ++v)
        for (unsigned r = 0; r < exps_[i][v]; ++r) f.push_back(static_cast<std::uint8_t>(v));
      factors_.push_back(std::move(f));
    }
  }

  unsigned nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return exps_.size(); }
  const Exponent& exponent(std::size_t i) const { return exps_[i]; }
  // Variable indices with multiplicity, nondecreasing; length = degree.
  const std::vector<std::uint8_t>& factors(std::size_t i) const { return factors_[i]; }

  std::size_t index(std::span<const unsigned> e) const {
    if (e.size() != nvars_) fail("DimensionMismatch", "exponent length mismatch");
    unsigned total = 0;
    for (auto x : e) total += x;
    if (total != degree_) fail("DimensionMismatch", "exponent does not sum to the degree");
    return index_.at(pack(e));
  }

 private:
  static std::uint64_t pack(std::span<const unsigned> e) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < e.size(); ++i) key |= static_cast<std::uint64_t>(e[i]) << (4 * i);
    return key;
  }

  // Ascending lexicographic: e0 increases slowest.
  void generate(Exponent& e, unsigned var, unsigned remaining) {
    if (var + 1 == nvars_) {
      e[var] = remaining;
      exps_.push_back(e);
      return;
    }
    for (unsigned x = 0; x <= remaining; ++x) {
      e[var] = x;
      generate(e, var + 1, remaining - x);
    }
  }

  unsigned nvars_;
  unsigned degree_;
  std::vector<Exponent> exps_;
  std::vector<std::vector<std::uint8_t>> factors_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

namespace detail {

inline std::shared_ptr<const MonomialBasis> cached_basis(unsigned nvars, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) slot = std::make_shared<const MonomialBasis>(nvars, degree);
  return slot;
}

// Product index table: (i, j) -> index of monomial_i * monomial_j in the degree d1 + d2 basis.
inline std::shared_ptr<const std::vector<std::uint32_t>> cached_product_table(unsigned nvars, unsigned d1, unsigned d2) {
  static std::mutex mu;
  static std::map<std::tuple<unsigned, unsigned, unsigned>, std::shared_ptr<const std::vector<std::uint32_t>>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({nvars, d1, d2});
    if (it != cache.end()) return it->second;
  }
  auto b1 = cached_basis(nvars, d1);
  auto b2 = cached_basis(nvars, d2);
  auto b3 = cached_basis(nvars, d1 + d2);
  auto table = std::make_shared<std::vector<std::uint32_t>>(b1->size() * b2->size());
  Exponent e(nvars);
  for (std::size_t i = 0; i < b1->size(); ++i) {
    for (std::size_t j = 0; j < b2->size(); ++j) {
      for (unsigned v = 0; v < nvars; ++v) e[v] = b1->exponent(i)[v] + b2->exponent(j)[v];
      (*table)[i * b2->size() + j] = static_cast<std::uint32_t>(b3->index(e));
    }
  }
  std::lock_guard lock(mu);
  auto& slot = cache[{nvars, d1, d2}];
  if (!slot) slot = std::move(table);
  return slot;
}

}  // namespace detail

template <Field K>
class HomogeneousPoly {
 public:
  using E = element_t<K>;

  HomogeneousPoly(const K& k, unsigned nvars, unsigned degree)
      : k_(k), basis_(detail::cached_basis(nvars, degree)), coeffs_(basis_->size(), k.zero()) {}

  HomogeneousPoly(const K& k, unsigned nvars, unsigned degree, const std::vector<std::pair<Exponent, E>>& terms)
      : HomogeneousPoly(k, nvars, degree) {
    for (const auto& [e, c] : terms) add_to(e, c);
  }

  const K& field() const noexcept { return k_; }
  const MonomialBasis& basis() const noexcept { return *basis_; }
  unsigned nvars() const noexcept { return basis_->nvars(); }
  unsigned degree() const noexcept { return basis_->degree(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const E& coeff(std::size_t idx) const { return coeffs_[idx]; }
  E coeff(std::span<const unsigned> e) const { return coeffs_[basis_->index(e)]; }
  E coeff(std::initializer_list<unsigned> e) const {
    return coeff(std::span<const unsigned>(e.begin(), e.size()));
  }
  std::span<const E> coefficients() const noexcept { return coeffs_; }

  void set(std::size_t idx, E value) { coeffs_[idx] = std::move(value); }
  void set(std::span<const unsigned> e, E value) { coeffs_[basis_->index(e)] = std::move(value); }
  void add_to(std::size_t idx, const E& value) { coeffs_[idx] = k_.add(coeffs_[idx], value); }
  void add_to(std::span<const unsigned> e, const E& value) { add_to(basis_->index(e), value); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!k_.is_zero(c)) return false;
    return true;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& c : coeffs_)
      if (!k_.is_zero(c)) ++n;
    return n;
  }

  std::vector<std::pair<Exponent, E>> terms() const {
    std::vector<std::pair<Exponent, E>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!k_.is_zero(coeffs_[i])) out.emplace_back(basis_->exponent(i), coeffs_[i]);
    return out;
  }

  E eval(std::span<const E> x) const {
    if (x.size() != nvars()) fail("DimensionMismatch", "point has wrong number of coordinates");
    E acc = k_.zero();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (k_.is_zero(coeffs_[i])) continue;
      E term = coeffs_[i];
      for (auto v : basis_->factors(i)) term = k_.mul(term, x[v]);
      acc = k_.add(acc, term);
    }
    return acc;
  }

  HomogeneousPoly derivative(unsigned var) const {
    if (var >= nvars()) fail("DimensionMismatch", "derivative variable out of range");
    if (degree() == 0) return HomogeneousPoly(k_, nvars(), 0);
    HomogeneousPoly d(k_, nvars(), degree() - 1);
    Exponent e;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (k_.is_zero(coeffs_[i])) continue;
      e = basis_->exponent(i);
      if (e[var] == 0) continue;
      const auto mult = k_.from_int(e[var]);
      --e[var];
      d.add_to(e, k_.mul(mult, coeffs_[i]));
    }
    return d;
  }

  std::vector<HomogeneousPoly> gradient() const {
    std::vector<HomogeneousPoly> g;
    g.reserve(nvars());
    for (unsigned v = 0; v < nvars(); ++v) g.push_back(derivative(v));
    return g;
  }

  HomogeneousPoly scaled(const E& s) const {
    HomogeneousPoly r(*this);
    for (auto& c : r.coeffs_) c = k_.mul(c, s);
    return r;
  }

  HomogeneousPoly operator+(const HomogeneousPoly& o) const {
    check_same_shape(o);
    HomogeneousPoly r(*this);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = k_.add(coeffs_[i], o.coeffs_[i]);
    return r;
  }
  HomogeneousPoly operator-(const HomogeneousPoly& o) const {
    check_same_shape(o);
    HomogeneousPoly r(*this);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = k_.sub(coeffs_[i], o.coeffs_[i]);
    return r;
  }
  HomogeneousPoly operator-() const { return scaled(k_.neg(k_.one())); }

  HomogeneousPoly operator*(const HomogeneousPoly& o) const {
    if (nvars() != o.nvars()) fail("DimensionMismatch", "product of polynomials in different variable counts");
    HomogeneousPoly r(k_, nvars(), degree() + o.degree());
    auto table = detail::cached_product_table(nvars(), degree(), o.degree());
    const std::size_t m = o.size();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (k_.is_zero(coeffs_[i])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (k_.is_zero(o.coeffs_[j])) continue;
        r.add_to((*table)[i * m + j], k_.mul(coeffs_[i], o.coeffs_[j]));
      }
    }
    return r;
  }

  bool operator==(const HomogeneousPoly& o) const {
    return nvars() == o.nvars() && degree() == o.degree() && coeffs_ == o.coeffs_;
  }

  static HomogeneousPoly constant(const K& k, unsigned nvars, const E& c) {
    HomogeneousPoly p(k, nvars, 0);
    p.coeffs_[0] = c;
    return p;
  }

  static HomogeneousPoly variable(const K& k, unsigned nvars, unsigned var) {
    HomogeneousPoly p(k, nvars, 1);
    Exponent e(nvars, 0);
    e[var] = 1;
    p.set(e, k.one());
    return p;
  }

  static HomogeneousPoly linear_form(const K& k, std::span<const E> coeffs) {
    const auto n = static_cast<unsigned>(coeffs.size());
    HomogeneousPoly p(k, n, 1);
    Exponent e(n, 0);
    for (unsigned v = 0; v < n; ++v) {
      e[v] = 1;
      p.set(e, coeffs[v]);
      e[v] = 0;
    }
    return p;
  }

 private:
  void check_same_shape(const HomogeneousPoly& o) const {
    if (nvars() != o.nvars() || degree() != o.degree()) fail("DimensionMismatch", "polynomial shape mismatch");
  }

  K k_;
  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<E> coeffs_;
};

template <Field K>
element_t<K> poly_eval(const HomogeneousPoly<K>& f, std::span<const element_t<K>> x) {
  return f.eval(x);
}

// f(M y): the composite form in the cols(M) parameters y.
template <Field K>
HomogeneousPoly<K> poly_substitute_linear(const HomogeneousPoly<K>& f, const DenseMatrix<K>& M) {
  const K& k = f.field();
  if (M.rows() != f.nvars()) fail("DimensionMismatch", "substitution matrix must have nvars(f) rows");
  const auto m = static_cast<unsigned>(M.cols());
  std::vector<HomogeneousPoly<K>> forms;
  forms.reserve(f.nvars());
  for (unsigned i = 0; i < f.nvars(); ++i) {
    auto row = M.row(i);
    forms.push_back(HomogeneousPoly<K>::linear_form(k, row));
  }
  HomogeneousPoly<K> result(k, m, f.degree());
  if (f.degree() == 0) {
    result.set(0, f.coeff(0));
    return result;
  }
  // Products of the linear forms are shared across monomials with a common prefix.
  std::map<std::vector<std::uint8_t>, HomogeneousPoly<K>> prefix_products;
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (k.is_zero(f.coeff(idx))) continue;
    const auto& fac = f.basis().factors(idx);
    std::vector<std::uint8_t> prefix(fac.begin(), fac.end() - 1);
    auto it = prefix_products.find(prefix);
    if (it == prefix_products.end()) {
      HomogeneousPoly<K> prod = forms[prefix.empty() ? 0 : prefix[0]];
      if (prefix.empty()) {
        prod = HomogeneousPoly<K>::constant(k, m, k.one());
      } else {
        for (std::size_t r = 1; r < prefix.size(); ++r) prod = prod * forms[prefix[r]];
      }
      it = prefix_products.emplace(prefix, std::move(prod)).first;
    }
    const auto term = it->second * forms[fac.back()];
    const auto& c = f.coeff(idx);
    for (std::size_t j = 0; j < term.size(); ++j) {
      if (k.is_zero(term.coeff(j))) continue;
      result.add_to(j, k.mul(c, term.coeff(j)));
    }
  }
  return result;
}

// Exact division by a monomial; nullopt unless every term is divisible.
template <Field K>
std::optional<HomogeneousPoly<K>> divide_by_monomial(const HomogeneousPoly<K>& f, const Exponent& mono) {
  unsigned d = 0;
  for (auto e : mono) d += e;
  if (mono.size() != f.nvars() || d > f.degree()) fail("DimensionMismatch", "monomial divisor shape mismatch");
  HomogeneousPoly<K> q(f.field(), f.nvars(), f.degree() - d);
  Exponent e;
  for (const auto& [exp, c] : f.terms()) {
    e = exp;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] < mono[v]) return std::nullopt;
      e[v] -= mono[v];
    }
    q.set(e, c);
  }
  return q;
}

// Exact division f / g for homogeneous g; nullopt when g does not divide f.
// Long division in a monomial order (lexicographic, descending).
template <Field K>
std::optional<HomogeneousPoly<K>> divide_exact(const HomogeneousPoly<K>& f, const HomogeneousPoly<K>& g) {
  const K& k = f.field();
  if (f.nvars() != g.nvars() || g.degree() > f.degree()) fail("DimensionMismatch", "division shape mismatch");
  if (g.is_zero()) fail("DivisionByZero", "division by the zero polynomial");
  // In ascending lex order the last basis index is the lex-greatest monomial.
  std::size_t lead_g = g.size();
  for (std::size_t i = g.size(); i-- > 0;)
    if (!k.is_zero(g.coeff(i))) {
      lead_g = i;
      break;
    }
  const auto lead_inv = k.inv(g.coeff(lead_g));
  HomogeneousPoly<K> rem = f;
  HomogeneousPoly<K> quot(k, f.nvars(), f.degree() - g.degree());
  const auto& lead_exp = g.basis().exponent(lead_g);
  Exponent e;
  for (;;) {
    std::size_t lead_r = rem.size();
    for (std::size_t i = rem.size(); i-- > 0;)
      if (!k.is_zero(rem.coeff(i))) {
        lead_r = i;
        break;
      }
    if (lead_r == rem.size()) break;
    e = rem.basis().exponent(lead_r);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] < lead_exp[v]) return std::nullopt;
      e[v] -= lead_exp[v];
    }
    const auto c = k.mul(rem.coeff(lead_r), lead_inv);
    HomogeneousPoly<K> mono(k, f.nvars(), quot.degree());
    mono.set(e, c);
    quot.add_to(e, c);
    rem = rem - mono * g;
  }
  return quot;
}

// Change of field (e.g. Q -> F_p reduction, F_p -> F_{p^2} lift).
template <Field From, Field To, class Map>
HomogeneousPoly<To> map_coefficients(const HomogeneousPoly<From>& f, const To& to, Map&& map) {
  HomogeneousPoly<To> r(to, f.nvars(), f.degree());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f.field().is_zero(f.coeff(i))) r.set(i, map(f.coeff(i)));
  return r;
}

// Reduction of a rational polynomial into a field of positive characteristic.
template <Field To>
HomogeneousPoly<To> reduce_poly(const HomogeneousPoly<RationalField>& f, const To& to) {
  return map_coefficients(f, to, [&](const mpq_class& c) { return to.from_rational(c); });
}

// Integer polynomial with the same zero set (denominators cleared, content removed).
inline HomogeneousPoly<RationalField> primitive_integer_poly(const HomogeneousPoly<RationalField>& f) {
  mpz_class l = 1, g = 0;
  for (const auto& c : f.coefficients()) {
    if (sgn(c) == 0) continue;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  for (const auto& c : f.coefficients()) {
    if (sgn(c) == 0) continue;
    mpz_class n = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g == 0) return f;
  return f.scaled(mpq_class(l, g));
}

// ---------------------------------------------------------------------------
// Text serialization

template <Field K>
std::string coefficient_text(const K& k, const element_t<K>& c) {
  if constexpr (std::same_as<K, RationalField>) {
    return c.get_num().get_str() + "/" + c.get_den().get_str();
  } else if constexpr (std::same_as<K, PrimeField>) {
    return k.to_text(c) + "/1";
  } else {
    return k.to_text(c);
  }
}

template <Field K>
std::string to_text(const HomogeneousPoly<K>& f) {
  std::string out = std::to_string(f.degree()) + " " + std::to_string(f.nvars()) + " {";
  bool first = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.field().is_zero(f.coeff(i))) continue;
    out += first ? " " : " , ";
    first = false;
    for (auto e : f.basis().exponent(i)) out += std::to_string(e) + " ";
    out += ": " + coefficient_text(f.field(), f.coeff(i));
  }
  out += first ? "}" : " }";
  return out;
}

namespace detail {

inline std::vector<std::string> tokenize_poly_text(std::string_view s) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char ch : s) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      flush();
    } else if (ch == '{' || ch == '}' || ch == ':' || ch == ',') {
      flush();
      tokens.emplace_back(1, ch);
    } else {
      cur += ch;
    }
  }
  flush();
  return tokens;
}

}  // namespace detail

// Parses the text form. A repeated exponent vector is an error.
template <Field K>
HomogeneousPoly<K> parse_poly(const K& k, std::string_view text) {
  auto tok = detail::tokenize_poly_text(text);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tok.size()) throw ParseError("unexpected end of polynomial text");
    return tok[pos++];
  };
  auto to_unsigned = [](const std::string& t) {
    auto v = detail::parse_int64(t);
    if (v < 0) throw ParseError("negative value '" + t + "'");
    return static_cast<unsigned>(v);
  };
  const unsigned degree = to_unsigned(next());
  const unsigned nvars = to_unsigned(next());
  if (nvars == 0 || nvars > MonomialBasis::kMaxVars || degree > MonomialBasis::kMaxDegree)
    throw ParseError("unsupported polynomial shape");
  if (next() != "{") throw ParseError("expected '{'");
  HomogeneousPoly<K> f(k, nvars, degree);
  std::vector<bool> seen(f.size(), false);
  if (pos < tok.size() && tok[pos] == "}") {
    ++pos;
  } else {
    for (;;) {
      Exponent e(nvars);
      unsigned total = 0;
      for (unsigned v = 0; v < nvars; ++v) {
        e[v] = to_unsigned(next());
        total += e[v];
      }
      if (total != degree) throw ParseError("exponent vector does not sum to the degree");
      if (next() != ":") throw ParseError("expected ':' after exponent vector");
      auto c = k.parse(next());
      std::size_t idx = f.basis().index(e);
      if (seen[idx]) throw ParseError("repeated monomial");
      seen[idx] = true;
      f.set(idx, c);
      const auto& sep = next();
      if (sep == "}") break;
      if (sep != ",") throw ParseError("expected ',' or '}'");
    }
  }
  if (pos != tok.size()) throw ParseError("trailing tokens after polynomial");
  return f;
}

}  // namespace fano
