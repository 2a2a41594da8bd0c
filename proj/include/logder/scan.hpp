#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace logder {

/// Abstract rank-2 dependency pattern of a hypothetical free, essential
/// arrangement of 2k hyperplanes in rank k with exponents (1,2,...,2,3):
/// the multiplicity-4 flats (quads) and multiplicity-3 flats (triples),
/// recorded as sorted label sets over labels 0..2k-1.
struct Configuration {
  unsigned k = 0;
  std::vector<std::vector<unsigned>> quads;
  std::vector<std::vector<unsigned>> triples;

  unsigned labels() const { return 2 * k; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.k == b.k && a.quads == b.quads && a.triples == b.triples;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return std::tie(a.k, a.quads, a.triples) < std::tie(b.k, b.quads, b.triples);
  }
};

/// Per-label incidence counts. m_i = u_i + 3 v_i is the number of
/// 3-circuits through label i; s counts labels on exactly one 3-circuit.
struct ConfigStats {
  unsigned u = 0, v = 0;
  std::vector<unsigned> u_i, v_i, m_i;
  unsigned s = 0;
};

inline ConfigStats config_stats(const Configuration& c) {
  ConfigStats st;
  st.u = static_cast<unsigned>(c.triples.size());
  st.v = static_cast<unsigned>(c.quads.size());
  st.u_i.assign(c.labels(), 0);
  st.v_i.assign(c.labels(), 0);
  st.m_i.assign(c.labels(), 0);
  for (const auto& t : c.triples)
    for (unsigned l : t) ++st.u_i.at(l);
  for (const auto& q : c.quads)
    for (unsigned l : q) ++st.v_i.at(l);
  for (unsigned i = 0; i < c.labels(); ++i) {
    st.m_i[i] = st.u_i[i] + 3 * st.v_i[i];
    if (st.m_i[i] == 1) ++st.s;
  }
  return st;
}

namespace detail {

inline std::vector<const std::vector<unsigned>*> all_flats(const Configuration& c) {
  std::vector<const std::vector<unsigned>*> fs;
  fs.reserve(c.quads.size() + c.triples.size());
  for (const auto& q : c.quads) fs.push_back(&q);
  for (const auto& t : c.triples) fs.push_back(&t);
  return fs;
}

}  // namespace detail

/// Structural consistency with the counting constraints a free arrangement
/// with exponents (1,2,...,2,3) imposes on its rank-2 level: sorted distinct
/// flats over labels 0..2k-1, any two flats sharing at most one label,
/// u + 3v = k+1, every label on at least one flat, 2u_i + 3v_i <= 2k-1,
/// 5v <= k+3 and 5u >= 2k-4.
inline bool config_valid(const Configuration& c, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (c.k < 2) return fail("rank must be at least 2");
  const unsigned n = c.labels();
  auto check_flat = [&](const std::vector<unsigned>& f, std::size_t want) {
    if (f.size() != want) return false;
    for (unsigned l : f)
      if (l >= n) return false;
    return std::is_sorted(f.begin(), f.end()) &&
           std::adjacent_find(f.begin(), f.end()) == f.end();
  };
  for (const auto& q : c.quads)
    if (!check_flat(q, 4)) return fail("malformed quadruple flat");
  for (const auto& t : c.triples)
    if (!check_flat(t, 3)) return fail("malformed triple flat");

  const auto flats = detail::all_flats(c);
  for (std::size_t i = 0; i < flats.size(); ++i)
    for (std::size_t j = i + 1; j < flats.size(); ++j) {
      std::vector<unsigned> common;
      std::set_intersection(flats[i]->begin(), flats[i]->end(), flats[j]->begin(),
                            flats[j]->end(), std::back_inserter(common));
      if (common.size() > 1) return fail("two flats share more than one label");
    }

  const ConfigStats st = config_stats(c);
  if (st.u + 3 * st.v != c.k + 1) return fail("u + 3v != k + 1");
  for (unsigned i = 0; i < n; ++i) {
    if (st.m_i[i] == 0) return fail("label " + std::to_string(i + 1) + " lies on no flat");
    if (2 * st.u_i[i] + 3 * st.v_i[i] > 2 * c.k - 1)
      return fail("label " + std::to_string(i + 1) + " violates 2u_i + 3v_i <= 2k - 1");
  }
  if (5 * st.v > c.k + 3) return fail("5v > k + 3");
  if (5l * st.u < 2l * c.k - 4) return fail("5u < 2k - 4");
  if (why) why->clear();
  return true;
}

/// Propagate spanning information: a flat with at least two determined
/// labels has rank 2, so all its labels become determined. Returns the
/// fixpoint of the seed set (bitmask over labels).
inline std::uint32_t circuit_closure(const Configuration& c, std::uint32_t seed) {
  if (c.labels() > 31) throw std::invalid_argument("circuit_closure: too many labels");
  const auto flats = detail::all_flats(c);
  std::uint32_t det = seed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto* f : flats) {
      std::uint32_t mask = 0;
      unsigned hit = 0;
      for (unsigned l : *f) {
        mask |= (1u << l);
        if (det & (1u << l)) ++hit;
      }
      if (hit >= 2 && (det | mask) != det) {
        det |= mask;
        changed = true;
      }
    }
  }
  return det;
}

enum class ScanVerdict { SupersolvableByS, RankDeficient, Reducible, Open };

inline const char* scan_verdict_name(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::SupersolvableByS: return "supersolvable_by_s";
    case ScanVerdict::RankDeficient: return "rank_deficient";
    case ScanVerdict::Reducible: return "reducible";
    default: return "open";
  }
}

struct ClassifiedConfiguration {
  Configuration config;
  ConfigStats stats;
  ScanVerdict verdict = ScanVerdict::Open;
  /// SupersolvableByS: a triple flat holding two labels of m_i = 1.
  /// RankDeficient: lexicographically first (k-1)-subset of labels whose
  /// closure determines everything. Reducible: the connected component of
  /// the smallest label.
  std::vector<unsigned> witness;
};

/// Eliminate a configuration:
///  - a triple holding two labels that each sit on exactly one 3-circuit
///    forces a supersolvable arrangement (the conjectured conclusion); the
///    pigeonhole s >= u+1 guarantees such a triple but is not required;
///  - a (k-1)-seed whose circuit closure covers every label would confine
///    2k forms to a proper subspace, so no essential rank-k realization
///    exists;
///  - a disconnected flat pattern forces a product, handled by induction on
///    the factors.
/// Anything else is reported open.
inline ClassifiedConfiguration classify(const Configuration& c) {
  ClassifiedConfiguration out;
  out.config = c;
  out.stats = config_stats(c);
  const unsigned n = c.labels();

  for (const auto& t : c.triples) {
    unsigned simple = 0;
    for (unsigned l : t)
      if (out.stats.m_i[l] == 1) ++simple;
    if (simple >= 2) {
      out.verdict = ScanVerdict::SupersolvableByS;
      out.witness = t;
      return out;
    }
  }

  if (c.k >= 2 && c.k - 1 <= n && n <= 31) {
    const std::uint32_t full = (1u << n) - 1;
    const std::size_t m = c.k - 1;
    std::vector<unsigned> seed(m);
    std::iota(seed.begin(), seed.end(), 0u);
    auto advance = [&]() {
      // next m-combination of {0..n-1} in lexicographic order
      std::size_t i = m;
      while (i > 0 && seed[i - 1] == n - m + (i - 1)) --i;
      if (i == 0) return false;
      ++seed[i - 1];
      for (std::size_t j = i; j < m; ++j) seed[j] = seed[j - 1] + 1;
      return true;
    };
    do {
      std::uint32_t mask = 0;
      for (unsigned l : seed) mask |= (1u << l);
      if (circuit_closure(c, mask) == full) {
        out.verdict = ScanVerdict::RankDeficient;
        out.witness = seed;
        return out;
      }
    } while (advance());
  }

  std::vector<unsigned> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<unsigned(unsigned)> find = [&](unsigned x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto* f : detail::all_flats(c))
    for (std::size_t i = 1; i < f->size(); ++i) parent[find((*f)[i])] = find((*f)[0]);
  const unsigned root0 = find(0);
  bool connected = true;
  for (unsigned l = 1; l < n; ++l) connected = connected && (find(l) == root0);
  if (!connected) {
    out.verdict = ScanVerdict::Reducible;
    for (unsigned l = 0; l < n; ++l)
      if (find(l) == root0) out.witness.push_back(l);
    return out;
  }

  out.verdict = ScanVerdict::Open;
  return out;
}

namespace detail {

/// Stable partition refinement on labels: start from (v_i, u_i), repeatedly
/// split classes by the multiset of (flat size, co-member colors) over
/// incident flats. Color ids are structural (assigned in sorted signature
/// order), so isomorphic configurations get matching partitions.
inline std::vector<unsigned> wl_colors(const Configuration& c) {
  const unsigned n = c.labels();
  const auto flats = all_flats(c);
  const ConfigStats st = config_stats(c);

  std::vector<unsigned> color(n);
  {
    std::vector<std::pair<unsigned, unsigned>> sig(n);
    for (unsigned i = 0; i < n; ++i) sig[i] = {st.v_i[i], st.u_i[i]};
    std::vector<std::pair<unsigned, unsigned>> uniq(sig.begin(), sig.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (unsigned i = 0; i < n; ++i)
      color[i] = static_cast<unsigned>(
          std::lower_bound(uniq.begin(), uniq.end(), sig[i]) - uniq.begin());
  }

  for (;;) {
    using Sig = std::pair<unsigned, std::vector<std::vector<unsigned>>>;
    std::vector<Sig> sig(n);
    for (unsigned i = 0; i < n; ++i) sig[i].first = color[i];
    for (const auto* f : flats) {
      std::vector<unsigned> cols;
      cols.reserve(f->size());
      for (unsigned l : *f) cols.push_back(color[l]);
      std::sort(cols.begin(), cols.end());
      for (unsigned l : *f) {
        std::vector<unsigned> co = cols;
        co.erase(std::find(co.begin(), co.end(), color[l]));
        co.insert(co.begin(), static_cast<unsigned>(f->size()));
        sig[l].second.push_back(std::move(co));
      }
    }
    for (unsigned i = 0; i < n; ++i) std::sort(sig[i].second.begin(), sig[i].second.end());

    std::vector<Sig> uniq(sig.begin(), sig.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<unsigned> next(n);
    for (unsigned i = 0; i < n; ++i)
      next[i] = static_cast<unsigned>(
          std::lower_bound(uniq.begin(), uniq.end(), sig[i]) - uniq.begin());
    if (next == color) return color;
    color = std::move(next);
  }
}

inline Configuration relabel(const Configuration& c, const std::vector<unsigned>& newlabel) {
  Configuration out;
  out.k = c.k;
  auto conv = [&](const std::vector<std::vector<unsigned>>& src) {
    std::vector<std::vector<unsigned>> dst;
    dst.reserve(src.size());
    for (const auto& f : src) {
      std::vector<unsigned> g;
      g.reserve(f.size());
      for (unsigned l : f) g.push_back(newlabel[l]);
      std::sort(g.begin(), g.end());
      dst.push_back(std::move(g));
    }
    std::sort(dst.begin(), dst.end());
    return dst;
  };
  out.quads = conv(c.quads);
  out.triples = conv(c.triples);
  return out;
}

}  // namespace detail

/// Canonical representative of the relabeling class: labels are grouped by
/// refined color, classes keep their structural order, and the minimum over
/// all within-class orderings is taken. Throws if the symmetry classes are
/// so large that the search would exceed ~1e8 orderings.
inline Configuration canonical_form(const Configuration& c) {
  const unsigned n = c.labels();
  const std::vector<unsigned> color = detail::wl_colors(c);
  const unsigned nclasses = color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
  std::vector<std::vector<unsigned>> classes(nclasses);
  for (unsigned i = 0; i < n; ++i) classes[color[i]].push_back(i);

  double work = 1;
  for (const auto& cl : classes) {
    for (std::size_t t = 2; t <= cl.size(); ++t) work *= static_cast<double>(t);
    if (work > 1e8)
      throw std::runtime_error("canonical_form: symmetry class too large to canonicalize");
  }

  std::vector<unsigned> offset(nclasses, 0);
  for (unsigned ci = 1; ci < nclasses; ++ci)
    offset[ci] = offset[ci - 1] + static_cast<unsigned>(classes[ci - 1].size());

  bool have = false;
  Configuration best;
  std::vector<unsigned> newlabel(n);
  // Iterate the product of per-class permutations via an odometer.
  std::vector<std::vector<unsigned>> perm = classes;
  for (;;) {
    for (unsigned ci = 0; ci < nclasses; ++ci)
      for (unsigned pos = 0; pos < perm[ci].size(); ++pos)
        newlabel[perm[ci][pos]] = offset[ci] + pos;
    Configuration cand = detail::relabel(c, newlabel);
    if (!have || cand < best) {
      best = std::move(cand);
      have = true;
    }
    unsigned ci = 0;
    while (ci < nclasses && !std::next_permutation(perm[ci].begin(), perm[ci].end())) ++ci;
    if (ci == nclasses) break;
  }
  return best;
}

/// Build a configuration from explicit flat closures (sizes 3 and 4).
inline Configuration configuration_from_closures(unsigned k,
                                                 std::vector<std::vector<unsigned>> flats) {
  Configuration c;
  c.k = k;
  for (auto& f : flats) {
    std::sort(f.begin(), f.end());
    for (unsigned l : f)
      if (l >= c.labels())
        throw std::invalid_argument("configuration_from_closures: label out of range");
    if (f.size() == 3)
      c.triples.push_back(std::move(f));
    else if (f.size() == 4)
      c.quads.push_back(std::move(f));
    else
      throw std::invalid_argument("configuration_from_closures: flats must have size 3 or 4");
  }
  std::sort(c.quads.begin(), c.quads.end());
  std::sort(c.triples.begin(), c.triples.end());
  return c;
}

namespace detail {

/// Exhaustive generator of valid configurations for one rank, up to
/// relabeling. Degree sequences are enumerated in non-increasing
/// (v_i, u_i) order, quads are placed before triples in strictly
/// lexicographic order, and every flat is forced to start at the smallest
/// label with remaining budget (smaller labels are exhausted, so no later
/// flat could contain it).
class ConfigEnumerator {
 public:
  explicit ConfigEnumerator(unsigned k) : k_(k), n_(2 * k) {
    if (k_ < 2 || n_ > 31)
      throw std::invalid_argument("enumerate_configurations: rank out of supported range");
  }

  std::set<Configuration> run() {
    out_.clear();
    const unsigned vmax = (k_ + 3) / 5;
    for (unsigned v = 0; v <= vmax; ++v) {
      if (3 * v > k_ + 1) continue;
      const unsigned u = k_ + 1 - 3 * v;
      if (5l * u < 2l * k_ - 4) continue;
      v_ = v;
      u_ = u;
      vdeg_.assign(n_, 0);
      udeg_.assign(n_, 0);
      degree_sequences(0, 4 * v, 3 * u);
    }
    return std::move(out_);
  }

 private:
  // ---- degree sequences ----
  void degree_sequences(unsigned pos, unsigned remv, unsigned remu) {
    if (pos == n_) {
      if (remv == 0 && remu == 0) start_placement();
      return;
    }
    const unsigned prev_v = pos == 0 ? 4 * v_ : vdeg_[pos - 1];
    const unsigned prev_u = pos == 0 ? 3 * u_ : udeg_[pos - 1];
    const unsigned left = n_ - pos - 1;  // labels after this one
    const unsigned umax = std::min(u_, k_ - 1);  // 2u_i <= 2k - 1
    for (unsigned vi = std::min({prev_v, v_, remv}); vi + 1 > 0; --vi) {
      if (3 * vi > 2 * k_ - 1) continue;
      const unsigned ucap = (2 * k_ - 1 - 3 * vi) / 2;  // 2u_i + 3v_i <= 2k - 1
      unsigned uhi = std::min({ucap, u_, remu});
      if (vi == prev_v) uhi = std::min(uhi, prev_u);
      for (unsigned ui = uhi; ui + 1 > 0; --ui) {
        if (vi == 0 && ui == 0) break;  // every label lies on a flat
        // Later labels have (v_j, u_j) <= (vi, ui) in lex order, so they
        // can absorb at most these totals.
        if (remv - vi > left * vi) continue;
        if (vi == 0 && remv != 0) continue;
        if (remu - ui > left * (vi > 0 ? umax : ui)) continue;
        vdeg_[pos] = vi;
        udeg_[pos] = ui;
        degree_sequences(pos + 1, remv - vi, remu - ui);
      }
    }
    vdeg_[pos] = 0;
    udeg_[pos] = 0;
  }

  // ---- flat placement ----
  void start_placement() {
    vbud_ = vdeg_;
    ubud_ = udeg_;
    pair_used_.assign(n_, std::vector<bool>(n_, false));
    quads_.clear();
    quads_.reserve(v_);
    triples_.clear();
    triples_.reserve(u_);
    place_quads();
  }

  void place_quads() {
    if (quads_.size() == v_) {
      for (unsigned b : vbud_)
        if (b != 0) return;
      place_triples();
      return;
    }
    unsigned start = n_;
    for (unsigned l = 0; l < n_; ++l)
      if (vbud_[l] > 0) {
        start = l;
        break;
      }
    if (start == n_) return;
    std::vector<unsigned> flat{start};
    --vbud_[start];
    extend_flat(flat, 4, quads_, vbud_, !quads_.empty() && quads_.back()[0] == start);
    ++vbud_[start];
  }

  void place_triples() {
    if (triples_.size() == u_) {
      for (unsigned b : ubud_)
        if (b != 0) return;
      emit();
      return;
    }
    unsigned start = n_;
    for (unsigned l = 0; l < n_; ++l)
      if (ubud_[l] > 0) {
        start = l;
        break;
      }
    if (start == n_) return;
    std::vector<unsigned> flat{start};
    --ubud_[start];
    extend_flat(flat, 3, triples_, ubud_, !triples_.empty() && triples_.back()[0] == start);
    ++ubud_[start];
  }

  void extend_flat(std::vector<unsigned>& flat, std::size_t size,
                   std::vector<std::vector<unsigned>>& placed, std::vector<unsigned>& bud,
                   bool tight) {
    if (flat.size() == size) {
      if (tight) return;  // equal to the previous flat
      for (std::size_t i = 0; i + 1 < flat.size(); ++i)
        for (std::size_t j = i + 1; j < flat.size(); ++j)
          pair_used_[flat[i]][flat[j]] = pair_used_[flat[j]][flat[i]] = true;
      placed.push_back(flat);
      if (size == 4)
        place_quads();
      else
        place_triples();
      placed.pop_back();
      for (std::size_t i = 0; i + 1 < flat.size(); ++i)
        for (std::size_t j = i + 1; j < flat.size(); ++j)
          pair_used_[flat[i]][flat[j]] = pair_used_[flat[j]][flat[i]] = false;
      return;
    }
    // Copy: the recursion below grows `placed`, which can reallocate.
    const std::vector<unsigned> prev = placed.empty() ? std::vector<unsigned>{} : placed.back();
    unsigned lo = flat.back() + 1;
    if (tight) lo = std::max(lo, prev[flat.size()]);
    for (unsigned cand = lo; cand < n_; ++cand) {
      if (bud[cand] == 0) continue;
      bool fresh = true;
      for (unsigned m : flat) fresh = fresh && !pair_used_[m][cand];
      if (!fresh) continue;
      const bool still_tight = tight && cand == prev[flat.size()];
      flat.push_back(cand);
      --bud[cand];
      extend_flat(flat, size, placed, bud, still_tight);
      ++bud[cand];
      flat.pop_back();
    }
  }

  void emit() {
    Configuration c;
    c.k = k_;
    c.quads = quads_;
    c.triples = triples_;
    std::string why;
    if (config_valid(c, &why)) out_.insert(canonical_form(c));
  }

  unsigned k_, n_;
  unsigned v_ = 0, u_ = 0;
  std::vector<unsigned> vdeg_, udeg_, vbud_, ubud_;
  std::vector<std::vector<bool>> pair_used_;
  std::vector<std::vector<unsigned>> quads_, triples_;
  std::set<Configuration> out_;
};

}  // namespace detail

/// All valid configurations of rank k up to relabeling, canonicalized and
/// sorted.
inline std::vector<Configuration> enumerate_configurations(unsigned k) {
  auto set = detail::ConfigEnumerator(k).run();
  return {set.begin(), set.end()};
}

struct ScanSummary {
  unsigned k = 0;
  std::vector<ClassifiedConfiguration> items;
  unsigned long supersolvable_by_s = 0;
  unsigned long rank_deficient = 0;
  unsigned long reducible = 0;
  unsigned long open = 0;
  std::vector<std::size_t> open_items;  // indices into items
};

/// Enumerate and classify every configuration of one rank. The conjecture
/// holds for the rank exactly when no item is left open.
inline ScanSummary scan(unsigned k) {
  ScanSummary s;
  s.k = k;
  for (const Configuration& c : enumerate_configurations(k)) {
    ClassifiedConfiguration cl = classify(c);
    switch (cl.verdict) {
      case ScanVerdict::SupersolvableByS: ++s.supersolvable_by_s; break;
      case ScanVerdict::RankDeficient: ++s.rank_deficient; break;
      case ScanVerdict::Reducible: ++s.reducible; break;
      case ScanVerdict::Open: ++s.open; s.open_items.push_back(s.items.size()); break;
    }
    s.items.push_back(std::move(cl));
  }
  return s;
}

/// Compact flat rendering: labels are printed 1-based, one character per
/// label below 10 and parenthesized above ("147", "89(10)").
inline std::string label_str(unsigned l) {
  return l + 1 < 10 ? std::string(1, static_cast<char>('0' + l + 1))
                    : "(" + std::to_string(l + 1) + ")";
}

inline std::string flat_str(const std::vector<unsigned>& flat) {
  std::string s;
  for (unsigned l : flat) s += label_str(l);
  return s;
}

inline std::string config_str(const Configuration& c) {
  std::string s;
  bool first = true;
  for (const auto* f : detail::all_flats(c)) {
    if (!first) s += ", ";
    s += flat_str(*f);
    first = false;
  }
  return s;
}

}  // namespace logder
