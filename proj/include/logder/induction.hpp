#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "logder/arrangement.hpp"
#include "logder/dependencies.hpp"
#include "logder/derivations.hpp"

namespace logder {

/// Remove hyperplane `i`, keeping the ambient space.
inline Arrangement delete_hyperplane(const Arrangement& a, unsigned i) {
  if (i >= a.size()) throw std::invalid_argument("delete_hyperplane: index out of range");
  std::vector<LinearForm> forms;
  forms.reserve(a.size() - 1);
  for (unsigned j = 0; j < a.size(); ++j)
    if (j != i) forms.push_back(a.form(j));
  return Arrangement(a.dim(), std::move(forms), a.name() + "-H" + std::to_string(i + 1));
}

/// Restrict to hyperplane `i`: substitute its pivot variable out of every
/// other form, drop that coordinate, and identify coinciding traces.
inline Arrangement restrict_to_hyperplane(const Arrangement& a, unsigned i) {
  if (i >= a.size()) throw std::invalid_argument("restrict_to_hyperplane: index out of range");
  if (a.dim() < 2)
    throw std::invalid_argument("restrict_to_hyperplane: ambient dimension must be >= 2");
  const unsigned k = a.dim();
  const LinearForm& ell = a.form(i);
  const unsigned p = ell.pivot();  // ell[p] == 1 after normalization

  std::vector<LinearForm> forms;
  for (unsigned j = 0; j < a.size(); ++j) {
    if (j == i) continue;
    const LinearForm& g = a.form(j);
    std::vector<Rational> c;
    c.reserve(k - 1);
    for (unsigned v = 0; v < k; ++v) {
      if (v == p) continue;
      c.push_back(g[v] - g[p] * ell[v]);
    }
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; }))
      throw std::logic_error("restrict_to_hyperplane: a distinct form restricted to zero");
    LinearForm trace(std::move(c));
    if (std::find(forms.begin(), forms.end(), trace) == forms.end())
      forms.push_back(std::move(trace));
  }
  return Arrangement(k - 1, std::move(forms), a.name() + "|H" + std::to_string(i + 1));
}

struct Triple {
  Arrangement deleted;
  Arrangement restricted;
};

inline Triple restriction_triple(const Arrangement& a, unsigned i) {
  return {delete_hyperplane(a, i), restrict_to_hyperplane(a, i)};
}

enum class Tri { True, False, Unknown };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

struct InductiveFreenessResult {
  Tri status = Tri::Unknown;
  std::string witness;
};

/// Exponent list padded with zeros to `ambient` entries and sorted. A
/// non-essential arrangement has one zero exponent per unused dimension.
inline std::vector<unsigned> exponents_with_zeros(std::vector<unsigned> exps, unsigned ambient) {
  if (exps.size() > ambient)
    throw std::invalid_argument("exponents_with_zeros: more exponents than dimensions");
  exps.resize(ambient, 0);
  std::sort(exps.begin(), exps.end());
  return exps;
}

namespace detail {

inline std::string arrangement_key(const Arrangement& a) {
  std::vector<std::string> fs;
  fs.reserve(a.size());
  for (unsigned j = 0; j < a.size(); ++j) fs.push_back(a.form(j).str());
  std::sort(fs.begin(), fs.end());
  std::string key = std::to_string(a.dim());
  for (const std::string& f : fs) {
    key += ';';
    key += f;
  }
  return key;
}

struct InductionContext {
  std::map<std::string, FreenessVerdict> freeness_cache;
  std::map<std::string, InductiveFreenessResult> memo;
};

/// Freeness with exponents padded to the ambient dimension; handles empty
/// and non-essential arrangements.
inline const FreenessVerdict& padded_freeness(InductionContext& ctx, const Arrangement& a) {
  const std::string key = arrangement_key(a);
  auto it = ctx.freeness_cache.find(key);
  if (it != ctx.freeness_cache.end()) return it->second;

  FreenessVerdict v;
  if (a.size() == 0) {
    v.status = Freeness::Free;
    v.exponents.assign(a.dim(), 0);
  } else {
    v = freeness(is_essential(a) ? a : essentialize(a));
    if (v.status == Freeness::Free) v.exponents = exponents_with_zeros(v.exponents, a.dim());
  }
  return ctx.freeness_cache.emplace(key, std::move(v)).first->second;
}

inline bool multiset_subset(const std::vector<unsigned>& small,
                            const std::vector<unsigned>& big) {
  // Both inputs sorted ascending.
  std::size_t j = 0;
  for (unsigned x : small) {
    while (j < big.size() && big[j] < x) ++j;
    if (j == big.size() || big[j] != x) return false;
    ++j;
  }
  return true;
}

inline InductiveFreenessResult indfree_rec(InductionContext& ctx, const Arrangement& a,
                                           std::size_t depth) {
  if (a.size() == 0) return {Tri::True, "empty"};
  const std::string key = arrangement_key(a);
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  InductiveFreenessResult res;
  const FreenessVerdict& fv = padded_freeness(ctx, a);
  if (fv.status == Freeness::NotFree) {
    res = {Tri::False, "not free"};
  } else if (fv.status == Freeness::UndeterminedUpToBound) {
    res = {Tri::Unknown, fv.witness};
  } else if (rank(a) <= 2) {
    res = {Tri::True, "rank <= 2"};
  } else if (depth == 0) {
    res = {Tri::Unknown, "recursion depth limit reached"};
  } else {
    bool unknown_seen = false;
    std::string unknown_why;
    for (unsigned i = 0; i < a.size() && res.status != Tri::True; ++i) {
      const Arrangement del = delete_hyperplane(a, i);
      const FreenessVerdict& fdel = padded_freeness(ctx, del);
      if (fdel.status == Freeness::UndeterminedUpToBound) {
        unknown_seen = true;
        unknown_why = fdel.witness;
        continue;
      }
      if (fdel.status != Freeness::Free) continue;
      const Arrangement restr = restrict_to_hyperplane(a, i);
      const FreenessVerdict& fres = padded_freeness(ctx, restr);
      if (fres.status == Freeness::UndeterminedUpToBound) {
        unknown_seen = true;
        unknown_why = fres.witness;
        continue;
      }
      if (fres.status != Freeness::Free) continue;
      if (!multiset_subset(exponents_with_zeros(fres.exponents, a.dim() - 1),
                           exponents_with_zeros(fdel.exponents, a.dim())))
        continue;
      const InductiveFreenessResult rdel = indfree_rec(ctx, del, depth - 1);
      if (rdel.status == Tri::Unknown) {
        unknown_seen = true;
        unknown_why = rdel.witness;
        continue;
      }
      if (rdel.status == Tri::False) continue;
      const InductiveFreenessResult rres = indfree_rec(ctx, restr, depth - 1);
      if (rres.status == Tri::Unknown) {
        unknown_seen = true;
        unknown_why = rres.witness;
        continue;
      }
      if (rres.status == Tri::False) continue;
      res = {Tri::True, a.form(i).str() + " | " + rdel.witness};
    }
    if (res.status != Tri::True) {
      if (unknown_seen)
        res = {Tri::Unknown, unknown_why};
      else
        res = {Tri::False, "no hyperplane yields an inductive chain"};
    }
  }
  return ctx.memo.emplace(key, std::move(res)).first->second;
}

}  // namespace detail

/// Decide inductive freeness by searching for a chain of hyperplane removals
/// whose deletions and restrictions all stay free with nested exponent
/// multisets. The witness lists the removed forms down to a base case.
/// `depth_limit` caps the number of removal levels; any value >= the number
/// of hyperplanes is equivalent to no cap. Unknown is reported when every
/// candidate chain runs into an undetermined freeness test or the cap.
inline InductiveFreenessResult is_inductively_free(
    const Arrangement& a,
    std::size_t depth_limit = std::numeric_limits<std::size_t>::max()) {
  detail::InductionContext ctx;
  return detail::indfree_rec(ctx, a, std::min<std::size_t>(depth_limit, a.size()));
}

/// Structural certificate behind the bound s >= 2 for inductively free
/// arrangements with exponents (1,2,...,2,3): some hyperplane admits a
/// deletion that is free with exponents either (1,1,2,...,2,3) carrying two
/// independent degree-1 derivations, or (1,2,...,2).
struct DeletionPathReport {
  bool applicable = false;
  std::string reason;  // set when not applicable
  bool path_found = false;
  unsigned hyperplane = 0;  // 0-based index of the witnessing hyperplane
  std::string path_kind;    // "two_degree_one_exponents" or "one_degree_one_exponent"
  std::vector<unsigned> deletion_exponents;
  std::size_t restriction_size = 0;
  unsigned deletion_degree1_dim = 0;  // two_degree_one_exponents case only
  bool product_visible = false;       // ditto: splits in the given coordinates
  unsigned observed_s = 0;
  bool s_at_least_2 = false;
  std::string note;
};

inline DeletionPathReport verify_deletion_path(const Arrangement& a) {
  DeletionPathReport rep;
  const Arrangement aess = is_essential(a) ? a : essentialize(a);
  const unsigned k = aess.dim();
  const std::size_t n = aess.size();

  detail::InductionContext ctx;
  const FreenessVerdict& fv = detail::padded_freeness(ctx, aess);
  if (fv.status != Freeness::Free) {
    rep.reason = "arrangement is not certified free";
    return rep;
  }
  std::vector<unsigned> want{1};
  for (unsigned i = 0; i + 2 < k; ++i) want.push_back(2);
  want.push_back(3);
  std::sort(want.begin(), want.end());
  std::vector<unsigned> have = fv.exponents;
  std::sort(have.begin(), have.end());
  if (k < 3 || have != want) {
    rep.reason = "exponents are not (1,2,...,2,3)";
    return rep;
  }
  const InductiveFreenessResult ind = detail::indfree_rec(ctx, aess, aess.size());
  if (ind.status != Tri::True) {
    rep.reason = (ind.status == Tri::False) ? "arrangement is not inductively free"
                                            : "inductive freeness is undetermined";
    return rep;
  }

  rep.applicable = true;
  const DependencyProfile prof = dependency_profile(aess);
  rep.observed_s = prof.s;
  rep.s_at_least_2 = prof.s >= 2;
  if (!rep.s_at_least_2 && k == 3)
    rep.note = "rank 3 allows s < 2; the bound s >= 2 applies from rank 4 on";

  std::vector<unsigned> split_exps{1, 1, 3};  // plus 2s: deletion of the first kind
  for (unsigned i = 0; i + 3 < k; ++i) split_exps.push_back(2);
  std::sort(split_exps.begin(), split_exps.end());
  std::vector<unsigned> plain_exps{1};  // deletion of the second kind
  for (unsigned i = 0; i + 1 < k; ++i) plain_exps.push_back(2);

  for (unsigned h = 0; h < n && !rep.path_found; ++h) {
    const Arrangement del = delete_hyperplane(aess, h);
    const FreenessVerdict& fdel = detail::padded_freeness(ctx, del);
    if (fdel.status != Freeness::Free) continue;
    std::vector<unsigned> exps = fdel.exponents;
    std::sort(exps.begin(), exps.end());
    const Arrangement restr = restrict_to_hyperplane(aess, h);

    if (restr.size() == n - 2 && exps == split_exps) {
      const unsigned d1 = static_cast<unsigned>(derivation_space(del, 1).size());
      if (d1 >= 2) {
        rep.path_found = true;
        rep.hyperplane = h;
        rep.path_kind = "two_degree_one_exponents";
        rep.deletion_exponents = exps;
        rep.restriction_size = restr.size();
        rep.deletion_degree1_dim = d1;
        rep.product_visible = coordinate_product_split(del).size() > 1;
      }
    } else if (restr.size() == n - 3 && exps == plain_exps) {
      rep.path_found = true;
      rep.hyperplane = h;
      rep.path_kind = "one_degree_one_exponent";
      rep.deletion_exponents = exps;
      rep.restriction_size = restr.size();
    }
  }
  return rep;
}

}  // namespace logder
