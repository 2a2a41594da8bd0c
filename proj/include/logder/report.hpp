#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "logder/arrangement.hpp"
#include "logder/dependencies.hpp"
#include "logder/derivations.hpp"
#include "logder/induction.hpp"
#include "logder/lattice.hpp"
#include "logder/scan.hpp"

namespace logder {

using json = nlohmann::ordered_json;

/// Everything the `analyze` command reports about one arrangement.
struct AnalysisReport {
  Arrangement arr;
  unsigned rank = 0;
  bool essential = false;
  std::vector<long long> poincare;  // ascending coefficients
  DependencyProfile profile;
  FormalityResult formality;
  SupersolvableResult supersolvable;
  bool freeness_run = false;
  std::string freeness_skip_reason;
  FreenessVerdict verdict;
  bool poincare_matches_exponents = false;
  InductiveFreenessResult inductive;
  LemmaReport lemmas;
};

/// Run the full pipeline. `bound` overrides the derivation-degree cutoff of
/// the freeness test (0 keeps the default n - k + 1, which always decides).
inline AnalysisReport analyze(const Arrangement& a, unsigned bound = 0) {
  AnalysisReport rep{a};
  rep.rank = rank(a);
  rep.essential = (rep.rank == a.dim());

  const IntersectionLattice lat = build_lattice(a);
  rep.poincare = poincare_polynomial(lat);
  rep.profile = dependency_profile(a);
  rep.formality = is_formal(a);
  rep.supersolvable = is_supersolvable(a);

  if (!rep.essential) {
    rep.freeness_skip_reason = "arrangement is not essential (rank " +
                               std::to_string(rep.rank) + " < dimension " +
                               std::to_string(a.dim()) + "); analyze its essentialization";
  } else {
    rep.freeness_run = true;
    rep.verdict = bound == 0 ? freeness(a) : freeness(a, bound);
    if (rep.verdict.status == Freeness::Free) {
      std::vector<long long> expanded{1};
      for (unsigned e : rep.verdict.exponents) {
        std::vector<long long> next(expanded.size() + 1, 0);
        for (std::size_t i = 0; i < expanded.size(); ++i) {
          next[i] += expanded[i];
          next[i + 1] += expanded[i] * static_cast<long long>(e);
        }
        expanded = std::move(next);
      }
      rep.poincare_matches_exponents = (expanded == rep.poincare);
    }
  }
  rep.inductive = is_inductively_free(a);
  rep.lemmas = check_low_exponent_lemmas(a, rep.profile, rep.verdict);
  return rep;
}

namespace detail {

inline std::string poly_in_t(const std::vector<long long>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = 0; d < coeffs.size(); ++d) {
    if (coeffs[d] == 0) continue;
    if (!first) os << " + ";
    if (d == 0)
      os << coeffs[d];
    else if (coeffs[d] == 1)
      os << "t";
    else
      os << coeffs[d] << "*t";
    if (d > 1) os << "^" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

inline std::string join_unsigned(const std::vector<unsigned>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::vector<unsigned> one_based(const std::vector<unsigned>& v) {
  std::vector<unsigned> out;
  out.reserve(v.size());
  for (unsigned x : v) out.push_back(x + 1);
  return out;
}

inline const char* lemma_status_name(LemmaStatus s) {
  switch (s) {
    case LemmaStatus::Pass: return "pass";
    case LemmaStatus::Fail: return "fail";
    default: return "not_applicable";
  }
}

}  // namespace detail

inline json to_json(const AnalysisReport& r) {
  json j;
  j["name"] = r.arr.name();
  j["dimension"] = r.arr.dim();
  j["hyperplanes"] = r.arr.size();
  json forms = json::array();
  for (unsigned i = 0; i < r.arr.size(); ++i) forms.push_back(r.arr.form(i).str());
  j["forms"] = forms;
  j["rank"] = r.rank;
  j["essential"] = r.essential;
  j["poincare"] = r.poincare;

  json rank2;
  rank2["u"] = r.profile.u;
  rank2["v"] = r.profile.v;
  rank2["s"] = r.profile.s;
  rank2["three_circuits"] = r.profile.triple_count;
  json hist = json::object();
  for (const auto& [mult, cnt] : r.profile.histogram) hist[std::to_string(mult)] = cnt;
  rank2["multiplicity_histogram"] = hist;
  rank2["m_i"] = r.profile.m_i;
  rank2["u_and_v_applicable"] = r.profile.uv_applicable;
  j["rank2"] = rank2;

  json formality;
  formality["formal"] = r.formality.formal;
  formality["relation_space_dim"] = r.formality.relation_space_dim;
  formality["circuit_span_dim"] = r.formality.circuit_span_dim;
  j["formality"] = formality;

  json ss;
  ss["value"] = r.supersolvable.value;
  if (r.supersolvable.chain) {
    ss["block_sizes"] = r.supersolvable.chain->block_sizes;
    json chain = json::array();
    for (const Flat& f : r.supersolvable.chain->flats)
      chain.push_back(detail::one_based(f.closure));
    ss["chain_closures"] = chain;
  }
  j["supersolvable"] = ss;

  json fr;
  fr["run"] = r.freeness_run;
  if (!r.freeness_run) {
    fr["skip_reason"] = r.freeness_skip_reason;
  } else {
    fr["status"] = freeness_name(r.verdict.status);
    if (r.verdict.status == Freeness::Free) {
      fr["exponents"] = r.verdict.exponents;
      fr["saito_factor"] = rational_str(r.verdict.saito_factor);
      json basis = json::array();
      for (const Derivation& th : r.verdict.certificate) basis.push_back(th.str());
      fr["basis"] = basis;
      fr["poincare_matches_exponents"] = r.poincare_matches_exponents;
    } else {
      fr["witness"] = r.verdict.witness;
    }
    fr["degree_bound_used"] = r.verdict.summary.bound;
    fr["derivation_dims"] = r.verdict.summary.dims;
    fr["minimal_generator_degrees"] = r.verdict.summary.min_gen_degrees;
  }
  j["freeness"] = fr;

  json ind;
  ind["status"] = tri_name(r.inductive.status);
  ind["witness"] = r.inductive.witness;
  j["inductively_free"] = ind;

  json lem;
  lem["regime"] = r.lemmas.regime;
  lem["applicable"] = r.lemmas.applicable;
  lem["all_pass"] = r.lemmas.all_pass;
  lem["s"] = r.lemmas.observed_s;
  json checks = json::array();
  for (const LemmaCheck& c : r.lemmas.checks) {
    json jc;
    jc["name"] = c.name;
    jc["status"] = detail::lemma_status_name(c.status);
    jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  lem["checks"] = checks;
  j["low_exponent_checks"] = lem;
  return j;
}

inline std::string to_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "arrangement " << r.arr.name() << ": " << r.arr.size() << " hyperplanes in dimension "
     << r.arr.dim() << ", rank " << r.rank << (r.essential ? " (essential)" : "") << "\n";
  os << "  forms:";
  for (unsigned i = 0; i < r.arr.size(); ++i) os << " [" << i + 1 << "] " << r.arr.form(i).str();
  os << "\n";
  os << "  poincare polynomial: " << detail::poly_in_t(r.poincare) << "\n";
  os << "  rank-2 flats: u = " << r.profile.u << " triple, v = " << r.profile.v
     << " quadruple, s = " << r.profile.s << " on a unique 3-circuit, " << r.profile.triple_count
     << " 3-circuits\n";
  os << "  multiplicity histogram:";
  for (const auto& [mult, cnt] : r.profile.histogram) os << " " << mult << "x" << cnt;
  os << "\n";
  os << "  formal: " << (r.formality.formal ? "yes" : "no") << " (3-circuit relations span "
     << r.formality.circuit_span_dim << " of " << r.formality.relation_space_dim << ")\n";
  os << "  supersolvable: " << (r.supersolvable.value ? "yes" : "no");
  if (r.supersolvable.chain)
    os << ", block sizes (" << detail::join_unsigned(r.supersolvable.chain->block_sizes) << ")";
  os << "\n";
  if (!r.freeness_run) {
    os << "  freeness: skipped - " << r.freeness_skip_reason << "\n";
  } else if (r.verdict.status == Freeness::Free) {
    os << "  free: yes, exponents (" << detail::join_unsigned(r.verdict.exponents)
       << "), determinant factor " << rational_str(r.verdict.saito_factor)
       << (r.poincare_matches_exponents ? ", poincare polynomial factors accordingly" : "")
       << "\n";
    os << "  basis:\n";
    for (const Derivation& th : r.verdict.certificate) os << "    " << th.str() << "\n";
  } else {
    os << "  free: " << freeness_name(r.verdict.status) << " - " << r.verdict.witness << "\n";
  }
  os << "  inductively free: " << tri_name(r.inductive.status);
  if (!r.inductive.witness.empty()) os << " (" << r.inductive.witness << ")";
  os << "\n";
  if (!r.lemmas.applicable) {
    os << "  low-exponent checks: not applicable";
    if (!r.lemmas.checks.empty()) os << " - " << r.lemmas.checks.front().detail;
    os << "\n";
  } else {
    os << "  low-exponent checks (exponents " << r.lemmas.regime << "): "
       << (r.lemmas.all_pass ? "all pass" : "FAILURES") << "\n";
    for (const LemmaCheck& c : r.lemmas.checks)
      os << "    [" << detail::lemma_status_name(c.status) << "] " << c.name << ": " << c.detail
         << "\n";
  }
  return os.str();
}

inline json to_json(const ClassifiedConfiguration& c) {
  json j;
  j["flats"] = config_str(c.config);
  json quads = json::array();
  for (const auto& q : c.config.quads) quads.push_back(detail::one_based(q));
  j["quads"] = quads;
  json triples = json::array();
  for (const auto& t : c.config.triples) triples.push_back(detail::one_based(t));
  j["triples"] = triples;
  j["u"] = c.stats.u;
  j["v"] = c.stats.v;
  j["s"] = c.stats.s;
  j["verdict"] = scan_verdict_name(c.verdict);
  j["witness"] = detail::one_based(c.witness);
  return j;
}

inline json to_json(const ScanSummary& s) {
  json j;
  j["k"] = s.k;
  j["hyperplanes"] = 2 * s.k;
  j["configurations"] = s.items.size();
  j["supersolvable_by_s"] = s.supersolvable_by_s;
  j["rank_deficient"] = s.rank_deficient;
  j["reducible"] = s.reducible;
  j["open"] = s.open;
  json items = json::array();
  for (const ClassifiedConfiguration& c : s.items) items.push_back(to_json(c));
  j["items"] = items;
  return j;
}

inline std::string to_text(const ScanSummary& s, bool list_all = false, bool list_open = false) {
  std::ostringstream os;
  os << "scan k = " << s.k << ": " << s.items.size()
     << " configurations up to relabeling\n";
  os << "  supersolvable_by_s: " << s.supersolvable_by_s << "\n";
  os << "  rank_deficient:     " << s.rank_deficient << "\n";
  os << "  reducible:          " << s.reducible << "\n";
  os << "  open:               " << s.open << "\n";
  auto line = [&](const ClassifiedConfiguration& c) {
    os << "    " << config_str(c.config) << "  [u=" << c.stats.u << " v=" << c.stats.v
       << " s=" << c.stats.s << "] " << scan_verdict_name(c.verdict);
    if (!c.witness.empty()) os << " witness " << flat_str(c.witness);
    os << "\n";
  };
  if (list_all) {
    os << "  configurations:\n";
    for (const ClassifiedConfiguration& c : s.items) line(c);
  } else if (list_open && s.open > 0) {
    os << "  open configurations:\n";
    for (std::size_t idx : s.open_items) line(s.items[idx]);
  }
  return os.str();
}

inline json to_json(const DeletionPathReport& r) {
  json j;
  j["applicable"] = r.applicable;
  if (!r.applicable) {
    j["reason"] = r.reason;
    return j;
  }
  j["path_found"] = r.path_found;
  if (r.path_found) {
    j["hyperplane"] = r.hyperplane + 1;
    j["path_kind"] = r.path_kind;
    j["deletion_exponents"] = r.deletion_exponents;
    j["restriction_size"] = r.restriction_size;
    if (r.path_kind == "two_degree_one_exponents") {
      j["deletion_degree1_dim"] = r.deletion_degree1_dim;
      j["product_visible"] = r.product_visible;
    }
  }
  j["s"] = r.observed_s;
  j["s_at_least_2"] = r.s_at_least_2;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string to_text(const DeletionPathReport& r) {
  std::ostringstream os;
  if (!r.applicable) {
    os << "structural path check: not applicable - " << r.reason << "\n";
    return os.str();
  }
  os << "structural path check (inductively free, exponents 1,2,...,2,3)\n";
  if (r.path_found) {
    os << "  hyperplane " << r.hyperplane + 1 << ": deletion is free with exponents ("
       << detail::join_unsigned(r.deletion_exponents) << "), restriction has "
       << r.restriction_size << " hyperplanes [" << r.path_kind << "]\n";
    if (r.path_kind == "two_degree_one_exponents")
      os << "  deletion carries " << r.deletion_degree1_dim
         << " independent degree-1 derivations"
         << (r.product_visible ? " (splits in the given coordinates)"
                               : " (split not visible in the given coordinates)")
         << "\n";
  } else {
    os << "  no structural path found\n";
  }
  os << "  s = " << r.observed_s << (r.s_at_least_2 ? " >= 2" : " < 2") << "\n";
  if (!r.note.empty()) os << "  note: " << r.note << "\n";
  return os.str();
}

}  // namespace logder
