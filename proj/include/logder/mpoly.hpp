#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "logder/qmatrix.hpp"
#include "logder/rational.hpp"

namespace logder {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

/// Graded lexicographic order: compare total degree first, then exponents
/// left to right (x1 > x2 > ...).
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Variable names used for rendering: x, y, z for up to three variables,
/// x1..xk otherwise.
inline std::vector<std::string> default_var_names(unsigned k) {
  if (k <= 3) {
    static const char* n3[] = {"x", "y", "z"};
    return {n3, n3 + k};
  }
  std::vector<std::string> names;
  for (unsigned i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

/// Sparse multivariate polynomial over Q with a fixed number of variables.
/// Terms are kept in graded lexicographic order with no zero coefficients.
class MPoly {
 public:
  explicit MPoly(unsigned nvars) : nvars_(nvars) {}

  static MPoly zero(unsigned nvars) { return MPoly(nvars); }

  static MPoly constant(unsigned nvars, const Rational& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[Exponents(nvars, 0)] = c;
    return p;
  }

  static MPoly one(unsigned nvars) { return constant(nvars, 1); }

  static MPoly variable(unsigned nvars, unsigned i) {
    MPoly p(nvars);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    p.terms_[e] = 1;
    return p;
  }

  static MPoly monomial(unsigned nvars, const Exponents& e, const Rational& c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  /// Homogeneous linear polynomial with the given coefficient vector.
  static MPoly linear(const std::vector<Rational>& coeffs) {
    MPoly p(static_cast<unsigned>(coeffs.size()));
    for (unsigned i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      Exponents e(coeffs.size(), 0);
      e[i] = 1;
      p.terms_[e] = coeffs[i];
    }
    return p;
  }

  unsigned nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree; -1 is the sentinel for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.rbegin()->first));
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    return true;
  }

  const std::map<Exponents, Rational, GrlexLess>& terms() const { return terms_; }

  Rational coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::pair<const Exponents, Rational>& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading_term of zero polynomial");
    return *terms_.rbegin();
  }

  MPoly& operator+=(const MPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) {
      auto [it, inserted] = terms_.try_emplace(e, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }

  MPoly& operator-=(const MPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) {
      auto [it, inserted] = terms_.try_emplace(e, Rational(-c));
      if (!inserted) {
        it->second -= c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

  MPoly operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check(b);
    MPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (unsigned i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        auto [it, inserted] = r.terms_.try_emplace(std::move(e), Rational(ca * cb));
        if (!inserted) {
          it->second += ca * cb;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    }
    return r;
  }

  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const Rational& c) const {
    MPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
  }

  bool operator==(const MPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  MPoly pow(unsigned n) const {
    MPoly r = one(nvars_);
    for (unsigned i = 0; i < n; ++i) r *= *this;
    return r;
  }

  /// Substitute x_var := sum_i repl[i] * x_i (repl[var] must be zero).
  MPoly substitute_var(unsigned var, const std::vector<Rational>& repl) const {
    if (repl.size() != nvars_ || (var < nvars_ && repl[var] != 0))
      throw std::invalid_argument("substitute_var: bad replacement");
    const MPoly lin = linear(repl);
    std::vector<MPoly> pow_cache{one(nvars_)};
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      const unsigned ev = e[var];
      while (pow_cache.size() <= ev) pow_cache.push_back(pow_cache.back() * lin);
      Exponents rest = e;
      rest[var] = 0;
      r += pow_cache[ev] * monomial(nvars_, rest, c);
    }
    return r;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluate: bad point size");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (unsigned i = 0; i < nvars_; ++i)
        for (unsigned j = 0; j < e[i]; ++j) t *= point[i];
      total += t;
    }
    return total;
  }

  /// Exact division by x_var; throws if some term lacks the variable.
  MPoly divide_by_variable(unsigned var) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0)
        throw std::invalid_argument("divide_by_variable: not divisible");
      Exponents q = e;
      --q[var];
      r.terms_[std::move(q)] = c;
    }
    return r;
  }

  std::string str(std::vector<std::string> names = {}) const {
    if (terms_.empty()) return "0";
    if (names.empty()) names = default_var_names(nvars_);
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      Rational a = c;
      if (first) {
        if (a < 0) {
          out << "-";
          a = -a;
        }
      } else {
        out << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      first = false;
      std::string mono;
      for (unsigned i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out << rational_str(a);
      } else {
        if (a != 1) out << rational_str(a) << "*";
        out << mono;
      }
    }
    return out.str();
  }

 private:
  void check(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw std::logic_error("MPoly: variable count mismatch");
  }

  unsigned nvars_;
  std::map<Exponents, Rational, GrlexLess> terms_;
};

/// Does the linear form with the given coefficients divide p?
/// The zero form is rejected; p == 0 is divisible by anything.
inline bool divisible_by_linear(const MPoly& p, const std::vector<Rational>& ell) {
  if (ell.size() != p.nvars()) throw std::invalid_argument("divisible_by_linear: size mismatch");
  unsigned t = 0;
  while (t < ell.size() && ell[t] == 0) ++t;
  if (t == ell.size()) throw std::invalid_argument("divisible_by_linear: zero form");
  if (p.is_zero()) return true;
  std::vector<Rational> repl(ell.size(), Rational(0));
  for (unsigned r = 0; r < ell.size(); ++r)
    if (r != t) repl[r] = -ell[r] / ell[t];
  return p.substitute_var(t, repl).is_zero();
}

namespace detail {

/// Rational content of a polynomial: c with p = c * p0, p0 having coprime
/// integer coefficients and positive leading coefficient.
inline Rational poly_content(const MPoly& p) {
  if (p.is_zero()) return Rational(0);
  Integer g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    g = boost::multiprecision::gcd(g, boost::multiprecision::abs(numerator(c)));
    l = boost::multiprecision::lcm(l, denominator(c));
  }
  Rational content = Rational(g) / Rational(l);
  if (p.leading_term().second < 0) content = -content;
  return content;
}

struct ScaledPoly {
  Rational scale;
  MPoly poly;
};

inline ScaledPoly strip_content(const MPoly& p) {
  const Rational c = poly_content(p);
  if (c == 0) return {Rational(0), MPoly::zero(p.nvars())};
  return {c, p.scaled(Rational(1) / c)};
}

}  // namespace detail

/// Determinant of a square polynomial matrix by cofactor expansion over
/// column subsets (fraction free; intermediates are kept primitive by
/// stripping rational content). Intended for the small matrices arising from
/// derivation coefficient grids (size <= 8 or so).
inline MPoly poly_det(const std::vector<std::vector<MPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("poly_det: empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("poly_det: not square");
  if (n > 20) throw std::invalid_argument("poly_det: matrix too large");
  const unsigned nv = m[0][0].nvars();

  std::map<std::uint32_t, detail::ScaledPoly> memo;
  memo.emplace(0u, detail::ScaledPoly{Rational(1), MPoly::one(nv)});

  // minor(mask) = det of rows [n - popcount(mask), n) on the columns in mask,
  // expanded along its top row.
  auto minor = [&](auto&& self, std::uint32_t mask) -> const detail::ScaledPoly& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    const int cnt = __builtin_popcount(mask);
    const std::size_t row = n - static_cast<std::size_t>(cnt);
    MPoly acc(nv);
    int pos = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const MPoly& entry = m[row][j];
      if (!entry.is_zero()) {
        const detail::ScaledPoly& sub = self(self, mask & ~(1u << j));
        if (sub.scale != 0) {
          MPoly contrib = (entry * sub.poly).scaled(sub.scale);
          if (pos % 2 == 1) contrib = -contrib;
          acc += contrib;
        }
      }
      ++pos;
    }
    return memo.emplace(mask, detail::strip_content(acc)).first->second;
  };

  const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
  const detail::ScaledPoly& result = minor(minor, full);
  return result.poly.scaled(result.scale);
}

}  // namespace logder
