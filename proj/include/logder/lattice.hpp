#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logder/arrangement.hpp"
#include "logder/qmatrix.hpp"

namespace logder {

/// Element of the intersection lattice: a subspace X obtained as an
/// intersection of hyperplanes, identified by its closure (every hyperplane
/// containing X) and carrying a canonical basis of X itself.
struct Flat {
  std::vector<unsigned> closure;  // sorted hyperplane indices
  std::uint64_t mask = 0;         // bitmask of closure
  QMatrix basis;                  // rows span X; canonical RREF
  unsigned rank = 0;              // codim of X
};

/// L(A), levelled by rank, with Mobius values computed by the recursion
/// mu(V) = 1, mu(Y) = -sum of mu(Z) over flats Z strictly containing Y.
struct IntersectionLattice {
  Arrangement arr;
  std::vector<Flat> flats;                   // sorted by (rank, closure)
  std::vector<long long> mobius;             // parallel to flats
  std::vector<std::vector<std::size_t>> by_rank;
  std::vector<std::vector<std::size_t>> covers;  // flats covered by each flat (one rank down)
  unsigned top_rank = 0;

  const Flat& top() const { return flats[by_rank[top_rank].front()]; }

  std::optional<std::size_t> find(std::uint64_t mask) const {
    for (std::size_t i = 0; i < flats.size(); ++i)
      if (flats[i].mask == mask) return i;
    return std::nullopt;
  }
};

namespace detail {

/// All hyperplanes vanishing on the subspace spanned by the rows of `basis`.
inline std::vector<unsigned> closure_of_subspace(const Arrangement& a, const QMatrix& basis) {
  std::vector<unsigned> closure;
  for (unsigned h = 0; h < a.size(); ++h) {
    bool vanishes = true;
    for (std::size_t r = 0; r < basis.rows() && vanishes; ++r) {
      Rational dot = 0;
      for (unsigned j = 0; j < a.dim(); ++j) dot += a.form(h)[j] * basis.at(r, j);
      vanishes = (dot == 0);
    }
    if (vanishes) closure.push_back(h);
  }
  return closure;
}

inline std::uint64_t mask_of(const std::vector<unsigned>& closure) {
  std::uint64_t m = 0;
  for (unsigned h : closure) m |= std::uint64_t(1) << h;
  return m;
}

/// Canonical basis of the intersection of the given hyperplanes.
inline QMatrix subspace_of(const Arrangement& a, const std::vector<unsigned>& hyperplanes) {
  QMatrix sys(hyperplanes.size(), a.dim());
  for (std::size_t i = 0; i < hyperplanes.size(); ++i)
    for (unsigned j = 0; j < a.dim(); ++j) sys.at(i, j) = a.form(hyperplanes[i])[j];
  const auto kern = kernel_basis(sys);
  QMatrix basis(kern.size(), a.dim());
  for (std::size_t i = 0; i < kern.size(); ++i)
    for (unsigned j = 0; j < a.dim(); ++j) basis.at(i, j) = kern[i][j];
  return rref(std::move(basis)).mat;
}

}  // namespace detail

/// Build L(A) level by level: intersect each rank-r flat with each hyperplane
/// not in its closure, deduplicating flats by closure.
inline IntersectionLattice build_lattice(const Arrangement& a) {
  if (a.size() > 64) throw std::invalid_argument("build_lattice: more than 64 hyperplanes");
  IntersectionLattice lat{a, {}, {}, {}, {}, rank(a)};

  std::map<std::uint64_t, std::size_t> seen;
  auto add_flat = [&](Flat f) -> std::size_t {
    auto it = seen.find(f.mask);
    if (it != seen.end()) return it->second;
    const std::size_t idx = lat.flats.size();
    seen.emplace(f.mask, idx);
    lat.flats.push_back(std::move(f));
    return idx;
  };

  Flat ambient{{}, 0, QMatrix::identity(a.dim()), 0};
  add_flat(std::move(ambient));

  std::vector<std::size_t> level{0};
  for (unsigned r = 0; r + 1 <= lat.top_rank; ++r) {
    std::map<std::uint64_t, std::size_t> next_seen;
    std::vector<std::size_t> next;
    for (std::size_t fi : level) {
      const std::uint64_t fmask = lat.flats[fi].mask;
      for (unsigned h = 0; h < a.size(); ++h) {
        if (fmask & (std::uint64_t(1) << h)) continue;
        std::vector<unsigned> gens = lat.flats[fi].closure;
        gens.push_back(h);
        QMatrix sub = detail::subspace_of(a, gens);
        std::vector<unsigned> closure = detail::closure_of_subspace(a, sub);
        const std::uint64_t mask = detail::mask_of(closure);
        if (next_seen.count(mask)) continue;
        Flat f{std::move(closure), mask, std::move(sub), r + 1};
        const std::size_t idx = add_flat(std::move(f));
        next_seen.emplace(mask, idx);
        next.push_back(idx);
      }
    }
    std::sort(next.begin(), next.end(), [&](std::size_t x, std::size_t y) {
      return lat.flats[x].closure < lat.flats[y].closure;
    });
    level = std::move(next);
  }

  // Re-sort all flats by (rank, closure) and rebuild indexing.
  std::vector<std::size_t> order(lat.flats.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (lat.flats[x].rank != lat.flats[y].rank) return lat.flats[x].rank < lat.flats[y].rank;
    return lat.flats[x].closure < lat.flats[y].closure;
  });
  std::vector<Flat> sorted;
  sorted.reserve(lat.flats.size());
  for (std::size_t i : order) sorted.push_back(std::move(lat.flats[i]));
  lat.flats = std::move(sorted);

  lat.by_rank.assign(lat.top_rank + 1, {});
  for (std::size_t i = 0; i < lat.flats.size(); ++i)
    lat.by_rank[lat.flats[i].rank].push_back(i);

  // Mobius recursion, top (ambient space V) downward in rank order.
  lat.mobius.assign(lat.flats.size(), 0);
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    if (lat.flats[i].rank == 0) {
      lat.mobius[i] = 1;
      continue;
    }
    long long acc = 0;
    for (std::size_t j = 0; j < lat.flats.size(); ++j) {
      if (lat.flats[j].rank >= lat.flats[i].rank) continue;
      if ((lat.flats[j].mask & lat.flats[i].mask) == lat.flats[j].mask) acc += lat.mobius[j];
    }
    lat.mobius[i] = -acc;
  }

  // Covering relation between consecutive ranks.
  lat.covers.assign(lat.flats.size(), {});
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    if (lat.flats[i].rank == 0) continue;
    for (std::size_t j : lat.by_rank[lat.flats[i].rank - 1])
      if ((lat.flats[j].mask & lat.flats[i].mask) == lat.flats[j].mask)
        lat.covers[i].push_back(j);
  }
  return lat;
}

/// Coefficients of pi(A, t) = sum over flats of mu(Y) * (-t)^rank(Y),
/// ascending in t.
inline std::vector<long long> poincare_polynomial(const IntersectionLattice& lat) {
  std::vector<long long> coeff(lat.top_rank + 1, 0);
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    const unsigned r = lat.flats[i].rank;
    coeff[r] += lat.mobius[i] * ((r % 2 == 0) ? 1 : -1);
  }
  return coeff;
}

/// Multiplicity histogram of the rank-2 level; u counts triples, v quadruples.
struct Rank2Profile {
  unsigned u = 0;
  unsigned v = 0;
  std::map<unsigned, unsigned> histogram;  // closure size -> count
};

inline Rank2Profile rank2_profile(const IntersectionLattice& lat) {
  Rank2Profile p;
  if (lat.top_rank < 2) return p;
  for (std::size_t i : lat.by_rank[2]) {
    const unsigned sz = static_cast<unsigned>(lat.flats[i].closure.size());
    ++p.histogram[sz];
  }
  if (p.histogram.count(3)) p.u = p.histogram.at(3);
  if (p.histogram.count(4)) p.v = p.histogram.at(4);
  return p;
}

/// X is modular when X + Y is a flat for every flat Y. Since the hyperplanes
/// containing X + Y are exactly those containing both X and Y, the sum is a
/// flat iff its dimension matches the intersection of that closure.
inline bool is_modular(const IntersectionLattice& lat, std::size_t flat_index) {
  const Flat& x = lat.flats.at(flat_index);
  const unsigned k = lat.arr.dim();
  for (const Flat& y : lat.flats) {
    QMatrix stacked(x.basis.rows() + y.basis.rows(), k);
    for (std::size_t r = 0; r < x.basis.rows(); ++r)
      for (unsigned j = 0; j < k; ++j) stacked.at(r, j) = x.basis.at(r, j);
    for (std::size_t r = 0; r < y.basis.rows(); ++r)
      for (unsigned j = 0; j < k; ++j) stacked.at(x.basis.rows() + r, j) = y.basis.at(r, j);
    const std::size_t dim_sum = rank(stacked);

    const std::uint64_t joint = x.mask & y.mask;
    std::vector<unsigned> common;
    for (unsigned h = 0; h < lat.arr.size(); ++h)
      if (joint & (std::uint64_t(1) << h)) common.push_back(h);
    QMatrix forms(common.size(), k);
    for (std::size_t r = 0; r < common.size(); ++r)
      for (unsigned j = 0; j < k; ++j) forms.at(r, j) = lat.arr.form(common[r])[j];
    if (k - dim_sum != rank(forms)) return false;
  }
  return true;
}

/// Modular flats of corank 1, sorted by decreasing closure size
/// (ties broken by closure order).
inline std::vector<std::size_t> modular_coatoms(const IntersectionLattice& lat) {
  std::vector<std::size_t> out;
  if (lat.top_rank == 0) return out;
  for (std::size_t i : lat.by_rank[lat.top_rank - 1])
    if (is_modular(lat, i)) out.push_back(i);
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    if (lat.flats[a].closure.size() != lat.flats[b].closure.size())
      return lat.flats[a].closure.size() > lat.flats[b].closure.size();
    return lat.flats[a].closure < lat.flats[b].closure;
  });
  return out;
}

/// A_X: the sub-arrangement of hyperplanes containing the flat.
inline Arrangement restriction_subarrangement(const Arrangement& a, const Flat& x) {
  std::vector<LinearForm> forms;
  forms.reserve(x.closure.size());
  for (unsigned h : x.closure) forms.push_back(a.form(h));
  std::string nm = a.name().empty() ? "" : a.name() + "_X";
  return Arrangement(a.dim(), std::move(forms), std::move(nm));
}

/// Maximal chain of modular flats V = X_0 < X_1 < ... < X_r = center,
/// with block sizes b_i = |A_{X_i}| - |A_{X_{i-1}}|.
struct ModularChain {
  std::vector<Flat> flats;            // expressed in L(A), rank i at index i
  std::vector<unsigned> block_sizes;  // length r
};

struct SupersolvableResult {
  bool value = false;
  std::optional<ModularChain> chain;
};

/// Supersolvability by recursion on modular coatoms: rank <= 2 is always
/// supersolvable; otherwise try each modular coatom X (largest closure
/// first, with backtracking) and recurse on A_X.
inline SupersolvableResult is_supersolvable(const Arrangement& a) {
  const unsigned r = rank(a);
  const IntersectionLattice lat = build_lattice(a);

  auto chain_from_subspaces = [&](const std::vector<QMatrix>& bases) -> ModularChain {
    ModularChain chain;
    for (const QMatrix& b : bases) {
      std::vector<unsigned> closure = detail::closure_of_subspace(a, b);
      Flat f{closure, detail::mask_of(closure), b,
             static_cast<unsigned>(a.dim() - b.rows())};
      chain.flats.push_back(std::move(f));
    }
    for (std::size_t i = 1; i < chain.flats.size(); ++i)
      chain.block_sizes.push_back(static_cast<unsigned>(chain.flats[i].closure.size() -
                                                        chain.flats[i - 1].closure.size()));
    return chain;
  };

  if (r <= 2) {
    std::vector<QMatrix> bases;
    bases.push_back(QMatrix::identity(a.dim()));
    if (r >= 1) bases.push_back(detail::subspace_of(a, {0}));
    if (r == 2) bases.push_back(lat.top().basis);
    return {true, chain_from_subspaces(bases)};
  }

  for (std::size_t ci : modular_coatoms(lat)) {
    const Flat& x = lat.flats[ci];
    Arrangement sub = restriction_subarrangement(a, x);
    SupersolvableResult rec = is_supersolvable(sub);
    if (!rec.value) continue;
    std::vector<QMatrix> bases;
    for (const Flat& f : rec.chain->flats) bases.push_back(f.basis);
    bases.push_back(lat.top().basis);
    return {true, chain_from_subspaces(bases)};
  }
  return {false, std::nullopt};
}

}  // namespace logder
