#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "logder/logder.hpp"
#include "oracles.hpp"

using namespace logder;

namespace {

Arrangement five_lines() {
  return Arrangement(3,
                     {LinearForm({1, 0, 0}), LinearForm({0, 1, 0}), LinearForm({0, 0, 1}),
                      LinearForm({1, 0, -1}), LinearForm({0, 1, -1})},
                     "five-lines");
}

Arrangement generic4() {
  return Arrangement(
      3, {LinearForm({1, 0, 0}), LinearForm({0, 1, 0}), LinearForm({0, 0, 1}),
          LinearForm({1, 2, 3})},
      "generic4");
}

std::vector<Arrangement> oracle_corpus() {
  std::vector<Arrangement> all;
  for (const char* n : {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B4", "SS22(4)"})
    all.push_back(catalog(n));
  all.push_back(five_lines());
  all.push_back(generic4());
  return all;
}

}  // namespace

TEST_CASE("lattice flats match 2^n subset closures", "[lattice][oracle]") {
  for (const Arrangement& a : oracle_corpus()) {
    INFO(a.name());
    const IntersectionLattice lat = build_lattice(a);

    std::set<std::uint64_t> got;
    for (const Flat& f : lat.flats) got.insert(f.mask);
    REQUIRE(got.size() == lat.flats.size());
    REQUIRE(got == oracle::all_flat_masks(a));

    // Structural consistency: every flat's closure is closed, its rank is
    // the rank of its closure, and the levels partition the flats.
    std::size_t levelled = 0;
    for (const Flat& f : lat.flats) {
      REQUIRE(oracle::closure_mask(a, f.mask) == f.mask);
      REQUIRE(oracle::subset_rank(a, f.mask) == f.rank);
      REQUIRE(f.rank + f.basis.rows() == a.dim());
    }
    for (const auto& level : lat.by_rank) levelled += level.size();
    REQUIRE(levelled == lat.flats.size());

    REQUIRE(lat.top_rank == rank(a));
    REQUIRE(lat.top().closure.size() == a.size());
  }
}

TEST_CASE("Poincare polynomial matches the Whitney expansion", "[lattice][oracle]") {
  for (const Arrangement& a : oracle_corpus()) {
    INFO(a.name());
    REQUIRE(poincare_polynomial(build_lattice(a)) == oracle::whitney_poincare(a));
  }
}

TEST_CASE("Mobius values alternate in sign by rank", "[lattice]") {
  for (const char* n : {"A1", "A6", "B4"}) {
    const IntersectionLattice lat = build_lattice(catalog(n));
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
      const long long mu = lat.mobius[i];
      REQUIRE(mu != 0);
      REQUIRE((lat.flats[i].rank % 2 == 0 ? mu > 0 : mu < 0));
    }
  }
}

TEST_CASE("frozen small cases", "[lattice]") {
  REQUIRE(poincare_polynomial(build_lattice(catalog("A1"))) ==
          std::vector<long long>{1, 7, 15, 9});
  REQUIRE(poincare_polynomial(build_lattice(catalog("B4"))) ==
          std::vector<long long>{1, 4, 6, 4, 1});

  const auto p1 = rank2_profile(build_lattice(catalog("A1")));
  REQUIRE(p1.u == 6);
  REQUIRE(p1.v == 0);
  REQUIRE(p1.histogram == std::map<unsigned, unsigned>{{2, 3}, {3, 6}});

  const auto p8 = rank2_profile(build_lattice(catalog("A8")));
  REQUIRE(p8.u == 1);
  REQUIRE(p8.v == 1);
  REQUIRE(p8.histogram == std::map<unsigned, unsigned>{{2, 6}, {3, 1}, {4, 1}});
}

TEST_CASE("modular coatoms", "[lattice]") {
  // A triangle-rich rank-3 arrangement without a modular coatom.
  REQUIRE(modular_coatoms(build_lattice(catalog("A1"))).empty());

  // Every coatom of a Boolean arrangement is modular.
  const IntersectionLattice b4 = build_lattice(catalog("B4"));
  REQUIRE(modular_coatoms(b4).size() == b4.by_rank[3].size());

  const IntersectionLattice l7 = build_lattice(catalog("A7"));
  REQUIRE(modular_coatoms(l7).size() == 4);

  const IntersectionLattice l8 = build_lattice(catalog("A8"));
  std::multiset<std::size_t> sizes;
  for (std::size_t i : modular_coatoms(l8)) sizes.insert(l8.flats[i].closure.size());
  REQUIRE(sizes == std::multiset<std::size_t>{3, 4});

  // The largest coatom of A8 carries the four hyperplanes through the
  // common line of x, y, x-y, x-2y.
  const std::size_t big = modular_coatoms(l8).front();
  REQUIRE(l8.flats[big].closure == std::vector<unsigned>{0, 1, 3, 4});
  const Arrangement sub = restriction_subarrangement(catalog("A8"), l8.flats[big]);
  REQUIRE(sub.size() == 4);
  REQUIRE(rank(sub) == 2);
}

namespace {

void check_chain(const Arrangement& a, const SupersolvableResult& res) {
  REQUIRE(res.value);
  REQUIRE(res.chain.has_value());
  const ModularChain& chain = *res.chain;
  const unsigned r = rank(a);
  const IntersectionLattice lat = build_lattice(a);

  REQUIRE(chain.flats.size() == r + 1);
  REQUIRE(chain.block_sizes.size() == r);
  REQUIRE(chain.flats.front().closure.empty());
  REQUIRE(chain.flats.back().closure.size() == a.size());

  unsigned total = 0;
  for (unsigned i = 0; i < r; ++i) {
    REQUIRE(chain.flats[i + 1].closure.size() ==
            chain.flats[i].closure.size() + chain.block_sizes[i]);
    REQUIRE((chain.flats[i].mask & chain.flats[i + 1].mask) == chain.flats[i].mask);
    total += chain.block_sizes[i];
  }
  REQUIRE(total == a.size());

  // Every chain element is a modular flat of L(A) of the right rank.
  for (unsigned i = 0; i <= r; ++i) {
    REQUIRE(chain.flats[i].rank == i);
    const auto idx = lat.find(chain.flats[i].mask);
    REQUIRE(idx.has_value());
    REQUIRE(lat.flats[*idx].rank == i);
    REQUIRE(is_modular(lat, *idx));
  }
}

}  // namespace

TEST_CASE("supersolvability with certified modular chains", "[lattice]") {
  REQUIRE_FALSE(is_supersolvable(catalog("A1")).value);

  struct Expect {
    const char* name;
    std::multiset<unsigned> blocks;
  };
  for (const Expect& e : {Expect{"A2", {1, 3, 3}}, Expect{"A5", {1, 2, 4}},
                          Expect{"A7", {1, 2, 3}}, Expect{"A8", {1, 2, 3}},
                          Expect{"B4", {1, 1, 1, 1}}}) {
    INFO(e.name);
    const Arrangement a = catalog(e.name);
    const SupersolvableResult res = is_supersolvable(a);
    check_chain(a, res);
    // The block sizes of a modular chain are the exponents as a multiset.
    REQUIRE(std::multiset<unsigned>(res.chain->block_sizes.begin(),
                                    res.chain->block_sizes.end()) == e.blocks);
  }

  // Coordinates plus consecutive sums: chain blocks 1,2,...,2.
  const Arrangement ss = catalog("SS22(4)");
  const SupersolvableResult res = is_supersolvable(ss);
  check_chain(ss, res);
  REQUIRE(res.chain->block_sizes == std::vector<unsigned>{1, 2, 2, 2});
}
