#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "logder/arrangement.hpp"
#include "logder/mpoly.hpp"
#include "logder/qmatrix.hpp"

namespace logder {

/// Polynomial derivation theta = sum_i coeffs[i] * d/dx_i with homogeneous
/// polynomial coefficients of a common degree.
struct Derivation {
  std::vector<MPoly> coeffs;
  unsigned degree = 0;

  unsigned nvars() const { return static_cast<unsigned>(coeffs.size()); }

  bool is_zero() const {
    for (const MPoly& p : coeffs)
      if (!p.is_zero()) return false;
    return true;
  }

  /// theta applied to a linear form.
  MPoly apply(const LinearForm& ell) const {
    MPoly r(nvars());
    for (unsigned i = 0; i < nvars(); ++i)
      if (ell[i] != 0) r += coeffs[i].scaled(ell[i]);
    return r;
  }

  std::string str(std::vector<std::string> names = {}) const {
    if (names.empty()) names = default_var_names(nvars());
    std::ostringstream out;
    bool first = true;
    for (unsigned i = 0; i < nvars(); ++i) {
      if (coeffs[i].is_zero()) continue;
      if (!first) out << " + ";
      first = false;
      out << "(" << coeffs[i].str(names) << ")*d/d" << names[i];
    }
    if (first) out << "0";
    return out.str();
  }
};

inline Derivation euler_derivation(unsigned k) {
  Derivation e;
  e.degree = 1;
  for (unsigned i = 0; i < k; ++i) e.coeffs.push_back(MPoly::variable(k, i));
  return e;
}

/// Membership test for D(A): every theta(ell) must be divisible by ell.
inline bool is_logarithmic(const Arrangement& a, const Derivation& theta) {
  for (const LinearForm& f : a.forms())
    if (!divisible_by_linear(theta.apply(f), f.coeffs())) return false;
  return true;
}

namespace detail {

/// Monomials of total degree d in k variables, descending graded lex.
inline std::vector<Exponents> monomials_of_degree(unsigned k, unsigned d) {
  std::vector<Exponents> out;
  Exponents cur(k, 0);
  auto rec = [&](auto&& self, unsigned var, unsigned rem) -> void {
    if (var + 1 == k) {
      cur[var] = rem;
      out.push_back(cur);
      return;
    }
    for (int e = static_cast<int>(rem); e >= 0; --e) {
      cur[var] = static_cast<unsigned>(e);
      self(self, var + 1, rem - static_cast<unsigned>(e));
    }
  };
  if (k == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, d);
  return out;
}

/// Coefficient vector of a homogeneous degree-d derivation in the fixed
/// (component i major, monomial minor) coordinate system.
inline std::vector<Rational> derivation_vector(
    const Derivation& th, const std::vector<Exponents>& monos,
    const std::map<Exponents, std::size_t, GrlexLess>& mono_index) {
  const unsigned k = th.nvars();
  std::vector<Rational> v(k * monos.size());
  for (unsigned i = 0; i < k; ++i)
    for (const auto& [e, c] : th.coeffs[i].terms()) v[i * monos.size() + mono_index.at(e)] = c;
  return v;
}

}  // namespace detail

/// Basis of the degree-d slice of the logarithmic derivation module D(A):
/// all theta with homogeneous degree-d coefficients and theta(ell) in <ell>
/// for every defining form ell. Deterministic: the basis comes from the
/// canonical kernel of the divisibility conditions.
inline std::vector<Derivation> derivation_space(const Arrangement& a, unsigned d) {
  const unsigned k = a.dim();
  const std::vector<Exponents> monos = detail::monomials_of_degree(k, d);
  const std::size_t m = monos.size();
  std::map<Exponents, std::size_t, GrlexLess> mono_index;
  for (std::size_t t = 0; t < m; ++t) mono_index.emplace(monos[t], t);

  // One block of linear conditions per hyperplane: substitute the pivot
  // variable of ell out of theta(ell) and require the zero polynomial.
  std::vector<std::vector<Rational>> rows;
  for (const LinearForm& f : a.forms()) {
    const unsigned t = static_cast<unsigned>(f.pivot());
    std::vector<Rational> repl(k, Rational(0));
    for (unsigned r = 0; r < k; ++r)
      if (r != t) repl[r] = -f[r];

    // subst[mi] = image of monomial mi under the pivot substitution.
    std::vector<MPoly> lin_pows{MPoly::one(k)};
    const MPoly lin = MPoly::linear(repl);
    std::map<Exponents, std::size_t, GrlexLess> eq_index;  // residual monomial -> row
    std::vector<std::vector<Rational>> block;
    auto eq_row = [&](const Exponents& e) -> std::vector<Rational>& {
      auto [it, inserted] = eq_index.try_emplace(e, block.size());
      if (inserted) block.emplace_back(k * m, Rational(0));
      return block[it->second];
    };
    for (std::size_t mi = 0; mi < m; ++mi) {
      const unsigned ev = monos[mi][t];
      while (lin_pows.size() <= ev) lin_pows.push_back(lin_pows.back() * lin);
      Exponents rest = monos[mi];
      rest[t] = 0;
      const MPoly image = lin_pows[ev] * MPoly::monomial(k, rest, Rational(1));
      for (const auto& [e, c] : image.terms()) {
        std::vector<Rational>& row = eq_row(e);
        for (unsigned i = 0; i < k; ++i)
          if (f[i] != 0) row[i * m + mi] += f[i] * c;
      }
    }
    for (auto& row : block) rows.push_back(std::move(row));
  }

  QMatrix sys = rows.empty() ? QMatrix(0, k * m) : QMatrix::from_rows(rows);
  if (sys.cols() != k * m) sys = QMatrix(0, k * m);
  std::vector<Derivation> basis;
  for (const std::vector<Rational>& v : kernel_basis(sys)) {
    Derivation th;
    th.degree = d;
    for (unsigned i = 0; i < k; ++i) {
      MPoly p(k);
      for (std::size_t mi = 0; mi < m; ++mi)
        if (v[i * m + mi] != 0) p += MPoly::monomial(k, monos[mi], v[i * m + mi]);
      th.coeffs.push_back(std::move(p));
    }
    basis.push_back(std::move(th));
  }
  return basis;
}

/// An essential arrangement is irreducible (not a product in any coordinates)
/// exactly when its only degree-1 logarithmic derivations are the scalar
/// multiples of the Euler derivation.
inline bool is_irreducible(const Arrangement& a) {
  if (!is_essential(a)) throw std::invalid_argument("is_irreducible: arrangement not essential");
  return derivation_space(a, 1).size() == 1;
}

/// Dimensions of the graded slices of D(A) together with the degrees at
/// which minimal generators appear.
struct GradedDerivationSummary {
  unsigned bound = 0;                    // highest degree actually computed
  std::vector<unsigned> dims;            // dims[d] = dim D(A)_d, d = 0..bound
  std::vector<unsigned> min_gen_degrees; // ascending, with multiplicity
};

namespace detail {

struct MinimalGenerators {
  GradedDerivationSummary summary;
  std::vector<Derivation> generators;  // representatives, degree ascending
};

/// Degree-by-degree minimal generator extraction. A derivation of degree d is
/// a new generator when it is independent of x_r * (degree d-1 slice); one
/// variable step suffices because the graded module is closed under products.
inline MinimalGenerators minimal_generators_up_to(
    const Arrangement& a, unsigned bound,
    const std::optional<unsigned>& stop_after_total = std::nullopt) {
  const unsigned k = a.dim();
  MinimalGenerators out;
  out.summary.bound = bound;

  std::vector<Derivation> prev = derivation_space(a, 0);
  out.summary.dims.push_back(static_cast<unsigned>(prev.size()));
  for (const Derivation& th : prev) {
    out.summary.min_gen_degrees.push_back(0);
    out.generators.push_back(th);
  }

  for (unsigned d = 1; d <= bound; ++d) {
    const std::vector<Exponents> monos = monomials_of_degree(k, d);
    std::map<Exponents, std::size_t, GrlexLess> mono_index;
    for (std::size_t t = 0; t < monos.size(); ++t) mono_index.emplace(monos[t], t);

    std::vector<Derivation> slice = derivation_space(a, d);
    out.summary.dims.push_back(static_cast<unsigned>(slice.size()));

    RowSpan span(k * monos.size());
    for (const Derivation& th : prev) {
      for (unsigned r = 0; r < k; ++r) {
        Derivation mult;
        mult.degree = d;
        for (unsigned i = 0; i < k; ++i)
          mult.coeffs.push_back(th.coeffs[i] * MPoly::variable(k, r));
        span.insert(derivation_vector(mult, monos, mono_index));
      }
    }
    for (const Derivation& th : slice) {
      if (span.insert(derivation_vector(th, monos, mono_index))) {
        out.summary.min_gen_degrees.push_back(d);
        out.generators.push_back(th);
      }
    }
    out.summary.bound = d;
    prev = std::move(slice);
    if (stop_after_total && out.generators.size() >= *stop_after_total) break;
  }
  return out;
}

}  // namespace detail

/// Graded dimensions and minimal generator degrees of D(A) up to the bound.
inline GradedDerivationSummary minimal_generator_degrees(const Arrangement& a, unsigned bound) {
  return detail::minimal_generators_up_to(a, bound).summary;
}

struct SaitoResult {
  bool ok = false;
  Rational factor = 0;  // det(M) = factor * Q(A) when ok
};

/// Saito's criterion: the coefficient matrix of k logarithmic derivations
/// whose degrees sum to |A| has determinant c * Q(A) with c != 0 iff they
/// form a free basis of D(A).
inline SaitoResult saito_check(const Arrangement& a, const std::vector<Derivation>& candidate) {
  const unsigned k = a.dim();
  if (candidate.size() != k)
    throw std::invalid_argument("saito_check: need exactly k derivations");
  unsigned total = 0;
  for (const Derivation& th : candidate) {
    if (th.nvars() != k) throw std::invalid_argument("saito_check: wrong variable count");
    total += th.degree;
  }
  if (total != a.size())
    throw std::invalid_argument("saito_check: derivation degrees must sum to |A|");

  std::vector<std::vector<MPoly>> m(k, std::vector<MPoly>(k, MPoly::zero(k)));
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) m[i][j] = candidate[j].coeffs[i];
  const MPoly det = poly_det(m);
  if (det.is_zero()) return {false, 0};

  const MPoly q = defining_polynomial(a);
  const Rational c = det.leading_term().second / q.leading_term().second;
  if (det == q.scaled(c) && c != 0) return {true, c};
  return {false, 0};
}

enum class Freeness { Free, NotFree, UndeterminedUpToBound };

inline const char* freeness_name(Freeness f) {
  switch (f) {
    case Freeness::Free: return "Free";
    case Freeness::NotFree: return "NotFree";
    default: return "UndeterminedUpToBound";
  }
}

struct FreenessVerdict {
  Freeness status = Freeness::UndeterminedUpToBound;
  std::vector<unsigned> exponents;       // sorted, only when Free
  std::vector<Derivation> certificate;   // Saito basis when Free
  Rational saito_factor = 0;
  std::string witness;                   // human-readable reason when NotFree/Undetermined
  GradedDerivationSummary summary;       // slices actually computed
};

/// Decide freeness of an essential arrangement by scanning minimal
/// generators degree by degree (default bound n - k + 1, which covers every
/// exponent a free essential arrangement can have):
///   - more than k minimal generators: not free;
///   - exactly k with degree sum != n: not free;
///   - exactly k with degree sum n: Saito's criterion decides;
///   - fewer than k by the bound: undetermined up to that bound.
inline FreenessVerdict freeness(const Arrangement& a, std::optional<unsigned> bound = {}) {
  const unsigned k = a.dim();
  const unsigned n = static_cast<unsigned>(a.size());
  if (!is_essential(a)) throw std::invalid_argument("freeness: arrangement must be essential");
  const unsigned b = bound ? *bound : (n >= k ? n - k + 1 : 1);

  FreenessVerdict verdict;
  detail::MinimalGenerators gens;
  gens.summary.bound = 0;
  gens.summary.dims.push_back(0);  // essential: no degree-0 derivations

  std::vector<Derivation> prev;  // degree d-1 slice
  for (unsigned d = 1; d <= b; ++d) {
    const std::vector<Exponents> monos = detail::monomials_of_degree(k, d);
    std::map<Exponents, std::size_t, GrlexLess> mono_index;
    for (std::size_t t = 0; t < monos.size(); ++t) mono_index.emplace(monos[t], t);
    std::vector<Derivation> slice = derivation_space(a, d);
    gens.summary.dims.push_back(static_cast<unsigned>(slice.size()));
    gens.summary.bound = d;

    RowSpan span(k * monos.size());
    for (const Derivation& th : prev)
      for (unsigned r = 0; r < k; ++r) {
        Derivation mult;
        mult.degree = d;
        for (unsigned i = 0; i < k; ++i)
          mult.coeffs.push_back(th.coeffs[i] * MPoly::variable(k, r));
        span.insert(detail::derivation_vector(mult, monos, mono_index));
      }
    for (const Derivation& th : slice)
      if (span.insert(detail::derivation_vector(th, monos, mono_index))) {
        gens.summary.min_gen_degrees.push_back(d);
        gens.generators.push_back(th);
      }
    prev = std::move(slice);

    const std::size_t found = gens.generators.size();
    if (found > k) {
      verdict.status = Freeness::NotFree;
      verdict.witness = "more than " + std::to_string(k) +
                        " minimal generators by degree " + std::to_string(d);
      break;
    }
    if (found == k) {
      unsigned total = 0;
      for (unsigned e : gens.summary.min_gen_degrees) total += e;
      if (total != n) {
        verdict.status = Freeness::NotFree;
        verdict.witness = "k minimal generators found with degree sum " +
                          std::to_string(total) + " != " + std::to_string(n);
      } else {
        const SaitoResult sr = saito_check(a, gens.generators);
        if (sr.ok) {
          verdict.status = Freeness::Free;
          verdict.exponents = gens.summary.min_gen_degrees;
          verdict.certificate = gens.generators;
          verdict.saito_factor = sr.factor;
        } else {
          verdict.status = Freeness::NotFree;
          verdict.witness = "coefficient determinant of the k generators is not a nonzero "
                            "multiple of Q(A)";
        }
      }
      break;
    }
  }
  if (verdict.status == Freeness::UndeterminedUpToBound && verdict.witness.empty())
    verdict.witness = "fewer than k minimal generators up to degree " + std::to_string(b);
  verdict.summary = std::move(gens.summary);
  return verdict;
}

/// Strip the Euler component from a homogeneous quadratic theta in D(A):
/// when x_i is one of the hyperplanes, theta(x_i) = L_i * x_i for a linear
/// L_i, and theta - L_i * theta_E lies in D(A) with vanishing i-th
/// coefficient.
inline Derivation euler_complement(const Arrangement& a, const Derivation& theta, unsigned i = 0) {
  const unsigned k = a.dim();
  if (theta.nvars() != k) throw std::invalid_argument("euler_complement: wrong variable count");
  if (theta.degree != 2)
    throw std::invalid_argument("euler_complement: derivation must be quadratic");
  const LinearForm xi(
      [&] { std::vector<Rational> c(k, Rational(0)); c.at(i) = 1; return c; }());
  bool present = false;
  for (const LinearForm& f : a.forms()) present = present || (f == xi);
  if (!present)
    throw std::invalid_argument("euler_complement: coordinate hyperplane x_" +
                                std::to_string(i + 1) + " not in the arrangement");
  const MPoly li = theta.coeffs[i].divide_by_variable(i);
  Derivation out;
  out.degree = 2;
  for (unsigned j = 0; j < k; ++j)
    out.coeffs.push_back(theta.coeffs[j] - li * MPoly::variable(k, j));
  return out;
}

/// Data extracted from a quadratic logarithmic derivation written as
/// theta(x_i) = L_i * x_i: the linear forms L_i, the differences
/// B[p][r] = b_{r,p} - b_{r,r} (with L_i = sum_r b_{r,i} x_r), and for a pair
/// (u, v) the quadric generators
///   L_{u,v},  x_u * L_{v,w} - x_v * L_{u,w}  (w != u, v)
/// where L_{s,t} = x_s * B[s][t] + x_t * B[t][s].
struct QuadraticIdealData {
  unsigned u = 0, v = 0;
  std::vector<std::vector<Rational>> L;  // L[i][r] = b_{r,i}
  std::vector<std::vector<Rational>> B;  // B[p][r]
  std::vector<MPoly> generators;         // generator 0 is L_{u,v}
};

struct DualPointCheck {
  unsigned j = 0;                 // hyperplane index, 0-based
  std::vector<Rational> point;    // normalized coefficient vector of ell_j
  std::vector<Rational> values;   // generator evaluations at the point
  bool ok = false;                // all values vanish
};

struct QuadraticIdealReport {
  QuadraticIdealData data;
  std::vector<DualPointCheck> checks;
  bool all_ok = true;
};

/// For an arrangement whose first k forms are the coordinate hyperplanes
/// x_1, ..., x_k: every later form with nonzero u-th and v-th coordinate,
/// read as a dual point, must lie on the quadrics attached to theta and the
/// pair (u, v).
inline QuadraticIdealReport quadratic_ideal_check(const Arrangement& a, const Derivation& theta,
                                                  unsigned u, unsigned v) {
  const unsigned k = a.dim();
  if (a.size() < k)
    throw std::invalid_argument("quadratic_ideal_check: fewer forms than coordinates");
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Rational> c(k, Rational(0));
    c[i] = 1;
    if (!(a.form(i) == LinearForm(c)))
      throw std::invalid_argument(
          "quadratic_ideal_check: forms 1..k must be the coordinate hyperplanes in order");
  }
  if (u == v || u >= k || v >= k)
    throw std::invalid_argument("quadratic_ideal_check: need distinct coordinate indices");
  if (theta.degree != 2 || theta.nvars() != k)
    throw std::invalid_argument("quadratic_ideal_check: theta must be quadratic in k variables");

  QuadraticIdealReport rep;
  rep.data.u = u;
  rep.data.v = v;

  // theta(x_i) = L_i x_i; reject any theta not of that shape.
  rep.data.L.assign(k, std::vector<Rational>(k, Rational(0)));
  for (unsigned i = 0; i < k; ++i) {
    MPoly li(k);
    try {
      li = theta.coeffs[i].is_zero() ? MPoly::zero(k) : theta.coeffs[i].divide_by_variable(i);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("quadratic_ideal_check: theta(x_" + std::to_string(i + 1) +
                                  ") is not a multiple of x_" + std::to_string(i + 1));
    }
    if (!li.is_zero() && li.degree() != 1)
      throw std::invalid_argument("quadratic_ideal_check: theta is not quadratic");
    for (unsigned r = 0; r < k; ++r) {
      Exponents e(k, 0);
      e[r] = 1;
      rep.data.L[i][r] = li.coeff(e);
    }
  }

  rep.data.B.assign(k, std::vector<Rational>(k, Rational(0)));
  for (unsigned p = 0; p < k; ++p)
    for (unsigned r = 0; r < k; ++r) rep.data.B[p][r] = rep.data.L[p][r] - rep.data.L[r][r];

  auto l_pair = [&](unsigned s, unsigned t) {
    std::vector<Rational> c(k, Rational(0));
    c[s] += rep.data.B[s][t];
    c[t] += rep.data.B[t][s];
    return MPoly::linear(c);
  };

  rep.data.generators.push_back(l_pair(u, v));
  for (unsigned w = 0; w < k; ++w) {
    if (w == u || w == v) continue;
    rep.data.generators.push_back(MPoly::variable(k, u) * l_pair(v, w) -
                                  MPoly::variable(k, v) * l_pair(u, w));
  }

  for (unsigned j = k; j < a.size(); ++j) {
    const std::vector<Rational>& p = a.form(j).coeffs();
    if (p[u] == 0 || p[v] == 0) continue;
    DualPointCheck chk;
    chk.j = j;
    chk.point = p;
    chk.ok = true;
    for (const MPoly& g : rep.data.generators) {
      chk.values.push_back(g.evaluate(p));
      chk.ok = chk.ok && (chk.values.back() == 0);
    }
    rep.all_ok = rep.all_ok && chk.ok;
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

}  // namespace logder
