#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "logder/arrangement.hpp"
#include "logder/derivations.hpp"
#include "logder/qmatrix.hpp"

namespace logder {

/// Minimal dependent set of hyperplanes with its defining relation,
/// normalized so the first nonzero relation entry is 1. The relation entries
/// align with the (sorted) index list.
struct Circuit {
  std::vector<unsigned> indices;
  std::vector<Rational> relation;
};

namespace detail {

/// k x |S| matrix whose columns are the chosen forms.
inline QMatrix forms_as_columns(const Arrangement& a, const std::vector<unsigned>& s) {
  QMatrix m(a.dim(), s.size());
  for (std::size_t c = 0; c < s.size(); ++c)
    for (unsigned r = 0; r < a.dim(); ++r) m.at(r, c) = a.form(s[c])[r];
  return m;
}

inline void normalize_first_nonzero(std::vector<Rational>& v) {
  for (const Rational& x : v) {
    if (x != 0) {
      const Rational inv = Rational(1) / x;
      for (Rational& y : v) y *= inv;
      return;
    }
  }
}

}  // namespace detail

/// Closures of the rank-2 flats, each as a sorted index list (size >= 2),
/// sorted lexicographically. Every unordered pair of hyperplanes lies in
/// exactly one of these.
inline std::vector<std::vector<unsigned>> rank2_flat_closures(const Arrangement& a) {
  const unsigned n = static_cast<unsigned>(a.size());
  std::set<std::vector<unsigned>> flats;
  std::vector<std::vector<bool>> done(n, std::vector<bool>(n, false));
  for (unsigned p = 0; p < n; ++p) {
    for (unsigned q = p + 1; q < n; ++q) {
      if (done[p][q]) continue;
      std::vector<unsigned> closure;
      for (unsigned h = 0; h < n; ++h) {
        if (h == p || h == q) {
          closure.push_back(h);
          continue;
        }
        if (rank(detail::forms_as_columns(a, {p, q, h})) == 2) closure.push_back(h);
      }
      for (std::size_t i = 0; i < closure.size(); ++i)
        for (std::size_t j = i + 1; j < closure.size(); ++j)
          done[closure[i]][closure[j]] = true;
      flats.insert(std::move(closure));
    }
  }
  return {flats.begin(), flats.end()};
}

/// The unique relation of a circuit (minimal dependent set): the kernel of
/// the column matrix must be one dimensional with full support.
inline std::vector<Rational> relation_of(const Arrangement& a, std::vector<unsigned> s) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("relation_of: repeated index");
  for (unsigned i : s)
    if (i >= a.size()) throw std::invalid_argument("relation_of: index out of range");
  const auto kern = kernel_basis(detail::forms_as_columns(a, s));
  if (kern.size() != 1)
    throw std::invalid_argument("relation_of: set is not a circuit (kernel dimension " +
                                std::to_string(kern.size()) + ")");
  std::vector<Rational> rel = kern.front();
  for (const Rational& x : rel)
    if (x == 0)
      throw std::invalid_argument("relation_of: set is dependent but not minimal");
  detail::normalize_first_nonzero(rel);
  return rel;
}

/// All 3-element circuits, read off the rank-2 flats of multiplicity >= 3.
inline std::vector<Circuit> circuits_of_size_3(const Arrangement& a) {
  std::vector<Circuit> out;
  for (const std::vector<unsigned>& flat : rank2_flat_closures(a)) {
    if (flat.size() < 3) continue;
    for (std::size_t i = 0; i < flat.size(); ++i)
      for (std::size_t j = i + 1; j < flat.size(); ++j)
        for (std::size_t l = j + 1; l < flat.size(); ++l) {
          std::vector<unsigned> s{flat[i], flat[j], flat[l]};
          out.push_back({s, relation_of(a, s)});
        }
  }
  std::sort(out.begin(), out.end(),
            [](const Circuit& x, const Circuit& y) { return x.indices < y.indices; });
  return out;
}

struct FormalityResult {
  bool formal = false;
  unsigned relation_space_dim = 0;  // n - rank(A)
  unsigned circuit_span_dim = 0;    // span of size-3 circuit relations
};

/// Formality: the relations coming from 3-circuits span the whole relation
/// space of the forms.
inline FormalityResult is_formal(const Arrangement& a) {
  const unsigned n = static_cast<unsigned>(a.size());
  FormalityResult res;
  std::vector<unsigned> all(n);
  for (unsigned i = 0; i < n; ++i) all[i] = i;
  res.relation_space_dim = n - static_cast<unsigned>(rank(detail::forms_as_columns(a, all)));

  RowSpan span(n);
  for (const Circuit& c : circuits_of_size_3(a)) {
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t t = 0; t < c.indices.size(); ++t) v[c.indices[t]] = c.relation[t];
    span.insert(std::move(v));
  }
  res.circuit_span_dim = static_cast<unsigned>(span.rank());
  res.formal = (res.circuit_span_dim == res.relation_space_dim);
  return res;
}

/// Per-hyperplane statistics of the rank-2 level:
///   u_i / v_i  = number of triple / quadruple flats through hyperplane i,
///   m_i        = number of 3-circuits through i,
///   s          = number of hyperplanes on exactly one 3-circuit,
///   u, v       = total triple / quadruple flats,
/// and the full multiplicity histogram. The u/v counting identities only
/// make sense when every rank-2 flat has multiplicity <= 4 (uv_applicable).
struct DependencyProfile {
  unsigned u = 0;
  unsigned v = 0;
  unsigned long triple_count = 0;  // number of 3-circuits
  std::vector<unsigned> u_i, v_i, m_i;
  unsigned s = 0;
  std::map<unsigned, unsigned> histogram;
  bool uv_applicable = true;
};

inline DependencyProfile dependency_profile(const Arrangement& a) {
  const unsigned n = static_cast<unsigned>(a.size());
  DependencyProfile p;
  p.u_i.assign(n, 0);
  p.v_i.assign(n, 0);
  p.m_i.assign(n, 0);
  for (const std::vector<unsigned>& flat : rank2_flat_closures(a)) {
    const unsigned sz = static_cast<unsigned>(flat.size());
    ++p.histogram[sz];
    if (sz == 3) {
      ++p.u;
      for (unsigned h : flat) ++p.u_i[h];
    }
    if (sz == 4) {
      ++p.v;
      for (unsigned h : flat) ++p.v_i[h];
    }
    if (sz > 4) p.uv_applicable = false;
    if (sz >= 3) {
      p.triple_count += static_cast<unsigned long>(sz) * (sz - 1) * (sz - 2) / 6;
      for (unsigned h : flat) p.m_i[h] += (sz - 1) * (sz - 2) / 2;
    }
  }
  for (unsigned h = 0; h < n; ++h)
    if (p.m_i[h] == 1) ++p.s;
  return p;
}

enum class LemmaStatus { Pass, Fail, NotApplicable };

struct LemmaCheck {
  std::string name;
  LemmaStatus status = LemmaStatus::NotApplicable;
  std::string detail;
};

/// Outcome of the low-exponent invariant suite. `regime` is "1,2,...,2",
/// "1,2,...,2,3" or "" when the exponents match neither shape.
struct LemmaReport {
  std::string regime;
  bool applicable = false;
  bool all_pass = true;
  unsigned observed_s = 0;
  std::vector<LemmaCheck> checks;
};

/// Check the invariants a free arrangement with exponents (1,2,...,2) or
/// (1,2,...,2,3) must satisfy at the rank-2 level. For any other verdict or
/// exponent shape every check is reported not applicable.
inline LemmaReport check_low_exponent_lemmas(const Arrangement& a, const DependencyProfile& p,
                                             const FreenessVerdict& verdict) {
  LemmaReport rep;
  rep.observed_s = p.s;

  auto shape = [&](bool with_three) {
    const std::vector<unsigned>& e = verdict.exponents;
    if (e.empty() || e.front() != 1) return false;
    const std::size_t last = e.size() - 1;
    for (std::size_t i = 1; i < e.size(); ++i) {
      const unsigned want = (with_three && i == last) ? 3u : 2u;
      if (e[i] != want) return false;
    }
    return !with_three || e.size() >= 2;
  };

  bool regime_a = false, regime_b = false;
  if (verdict.status == Freeness::Free) {
    regime_a = shape(false);
    regime_b = shape(true);
  }
  if (!regime_a && !regime_b) {
    const std::string why = (verdict.status != Freeness::Free)
                                ? "arrangement is not certified free"
                                : "exponents are not (1,2,...,2) or (1,2,...,2,3)";
    rep.checks.push_back({"regime", LemmaStatus::NotApplicable, why});
    return rep;
  }

  rep.applicable = true;
  const unsigned k = static_cast<unsigned>(verdict.exponents.size());
  const unsigned maxmult = p.histogram.empty() ? 0 : p.histogram.rbegin()->first;
  auto push = [&](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass ? LemmaStatus::Pass : LemmaStatus::Fail,
                          std::move(detail)});
    rep.all_pass = rep.all_pass && pass;
  };

  unsigned long m_sum = 0;
  for (unsigned m : p.m_i) m_sum += m;

  if (regime_a) {
    rep.regime = "1,2,...,2";
    push("rank2_multiplicity_le_3", maxmult <= 3,
         "max rank-2 multiplicity " + std::to_string(maxmult));
    push("exactly_k_minus_1_triples", p.triple_count == k - 1,
         std::to_string(p.triple_count) + " 3-circuits, expected " + std::to_string(k - 1));
    push("two_hyperplanes_on_unique_triple", p.s >= 2,
         "s = " + std::to_string(p.s) + " hyperplanes lie on exactly one 3-circuit");
    push("triple_membership_sum", m_sum == 3ul * (k - 1),
         "sum m_i = " + std::to_string(m_sum) + ", expected " + std::to_string(3 * (k - 1)));
  } else {
    rep.regime = "1,2,...,2,3";
    push("rank2_multiplicity_le_4", maxmult <= 4,
         "max rank-2 multiplicity " + std::to_string(maxmult));
    push("u_plus_3v_eq_k_plus_1", p.u + 3 * p.v == k + 1,
         "u + 3v = " + std::to_string(p.u + 3 * p.v) + ", expected " + std::to_string(k + 1));
    push("s_ge_u_minus_4", static_cast<long>(p.s) >= static_cast<long>(p.u) - 4,
         "s = " + std::to_string(p.s) + ", u - 4 = " +
             std::to_string(static_cast<long>(p.u) - 4));
    push("coverage_3u_plus_4v_ge_2k", 3 * p.u + 4 * p.v >= 2 * k,
         "3u + 4v = " + std::to_string(3 * p.u + 4 * p.v) + ", 2k = " + std::to_string(2 * k));
    push("v_le_k_plus_3_over_5", 5 * p.v <= k + 3,
         "5v = " + std::to_string(5 * p.v) + ", k + 3 = " + std::to_string(k + 3));
    push("u_ge_2k_minus_4_over_5", 5l * p.u >= 2l * k - 4,
         "5u = " + std::to_string(5 * p.u) + ", 2k - 4 = " + std::to_string(2l * k - 4));
    bool per_h = true;
    for (std::size_t i = 0; i < p.u_i.size(); ++i)
      per_h = per_h && (2 * p.u_i[i] + 3 * p.v_i[i] <= 2 * k - 1);
    push("per_hyperplane_2u_plus_3v_le_2k_minus_1", per_h,
         "bound 2k - 1 = " + std::to_string(2 * k - 1));
    push("triple_count_eq_u_plus_4v", p.triple_count == p.u + 4ul * p.v,
         std::to_string(p.triple_count) + " 3-circuits, u + 4v = " +
             std::to_string(p.u + 4 * p.v));
    push("triple_membership_sum", m_sum == 3ul * (p.u + 4ul * p.v),
         "sum m_i = " + std::to_string(m_sum) + ", expected " +
             std::to_string(3 * (p.u + 4 * p.v)));
  }
  return rep;
}

}  // namespace logder
