#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "logder/logder.hpp"

using namespace logder;

namespace {

// Parse "147" / "89(10)"-style 1-based flat strings into 0-based label
// lists, matching the rendering used by flat_str.
std::vector<unsigned> flat(const std::string& s) {
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '(') {
      const std::size_t close = s.find(')', i);
      out.push_back(static_cast<unsigned>(std::stoul(s.substr(i + 1, close - i - 1))) - 1);
      i = close + 1;
    } else {
      out.push_back(static_cast<unsigned>(s[i] - '0') - 1);
      ++i;
    }
  }
  return out;
}

Configuration config(unsigned k, const std::vector<std::string>& flats) {
  std::vector<std::vector<unsigned>> closures;
  for (const std::string& s : flats) closures.push_back(flat(s));
  return configuration_from_closures(k, std::move(closures));
}

// The two rank-4 curve-counting configurations listed explicitly.
const std::vector<std::string> k4_s3{"147", "258", "357", "456", "678"};
const std::vector<std::string> k4_s1{"128", "234", "357", "456", "678"};

// The structurally valid rank-5 lists: six 3-circuits each, keyed by their
// s value. (Two further lists of this shape are inconsistent; see the
// dedicated test below.)
const std::vector<std::vector<std::string>> k5_lists{
    {"179", "27(10)", "378", "489", "58(10)", "69(10)"},         // s = 6
    {"16(10)", "27(10)", "38(10)", "49(10)", "589", "679"},      // s = 5, first kind
    {"16(10)", "28(10)", "39(10)", "489", "579", "678"},         // s = 5, second kind
    {"179", "289", "35(10)", "46(10)", "569", "78(10)"},         // s = 4 (ii)
    {"19(10)", "289", "36(10)", "457", "569", "78(10)"},         // s = 4 (iii)
    {"169", "289", "37(10)", "48(10)", "59(10)", "567"},         // s = 4 (iv)
    {"169", "29(10)", "38(10)", "478", "56(10)", "579"},         // s = 4 (v)
    {"189", "269", "38(10)", "47(10)", "56(10)", "579"},         // s = 4 (vi)
    {"15(10)", "28(10)", "389", "467", "569", "79(10)"},         // s = 4 (vii)
    {"15(10)", "26(10)", "389", "478", "569", "79(10)"},         // s = 4 (viii)
    {"19(10)", "26(10)", "38(10)", "457", "569", "789"},         // s = 4 (ix)
    {"14(10)", "25(10)", "379", "456", "678", "89(10)"},         // s = 3 (i)
    {"14(10)", "278", "359", "456", "67(10)", "89(10)"},         // s = 3 (ii)
    {"14(10)", "27(10)", "39(10)", "456", "678", "589"},         // s = 3 (iii)
    {"16(10)", "29(10)", "389", "45(10)", "567", "478"},         // s = 3 (iv)
    {"18(10)", "249", "369", "45(10)", "67(10)", "578"},         // s = 3 (v)
    {"148", "256", "379", "45(10)", "67(10)", "89(10)"},         // s = 3 (vi)
    {"139", "27(10)", "345", "567", "468", "89(10)"},            // s = 2 (i)
    {"138", "29(10)", "345", "567", "789", "46(10)"},            // s = 2 (ii)
};

}  // namespace

TEST_CASE("configuration construction and statistics", "[scan]") {
  const Configuration c = config(3, {"3456", "126"});
  REQUIRE(c.k == 3);
  REQUIRE(c.labels() == 6);
  REQUIRE(c.quads == std::vector<std::vector<unsigned>>{{2, 3, 4, 5}});
  REQUIRE(c.triples == std::vector<std::vector<unsigned>>{{0, 1, 5}});

  const ConfigStats st = config_stats(c);
  REQUIRE(st.u == 1);
  REQUIRE(st.v == 1);
  REQUIRE(st.m_i == std::vector<unsigned>{1, 1, 3, 3, 3, 4});
  REQUIRE(st.s == 2);

  REQUIRE_THROWS_AS(configuration_from_closures(3, {{0, 1, 2, 3, 4}}), std::invalid_argument);
  REQUIRE_THROWS_AS(configuration_from_closures(3, {{0, 1, 9}}), std::invalid_argument);
}

TEST_CASE("configuration validation", "[scan]") {
  std::string why;

  REQUIRE(config_valid(config(3, {"3456", "126"}), &why));
  REQUIRE(why.empty());
  REQUIRE(config_valid(config(3, {"123", "145", "246", "356"})));
  REQUIRE(config_valid(config(4, k4_s3)));
  for (const auto& flats : k5_lists) REQUIRE(config_valid(config(5, flats)));

  // Wrong circuit count for the rank.
  REQUIRE_FALSE(config_valid(config(3, {"123", "145", "246"}), &why));
  REQUIRE(why == "u + 3v != k + 1");

  // A label missing from every flat (the five triples pass the circuit
  // count and the pairwise-intersection checks, but never use label 8).
  REQUIRE_FALSE(config_valid(config(4, {"123", "145", "167", "246", "257"}), &why));
  REQUIRE(why == "label 8 lies on no flat");

  // Two flats meeting in two labels cannot both be rank-2 closures.
  REQUIRE_FALSE(config_valid(config(3, {"1234", "125"}), &why));
  REQUIRE(why == "two flats share more than one label");

  Configuration bad;
  bad.k = 3;
  bad.triples = {{2, 1, 0}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}};
  REQUIRE_FALSE(config_valid(bad, &why));
  REQUIRE(why == "malformed triple flat");

  bad.k = 1;
  REQUIRE_FALSE(config_valid(bad, &why));
  REQUIRE(why == "rank must be at least 2");
}

TEST_CASE("two near-miss rank-5 lists are structurally inconsistent", "[scan]") {
  // These two lists each contain a pair of flats sharing two labels, so
  // they do not describe a rank-2 level at all. Their seeds still
  // propagate to every label under circuit closure.
  const Configuration bad1 =
      config(5, {"17(10)", "28(10)", "389", "468", "569", "79(10)"});  // {7,10} shared
  const Configuration bad2 =
      config(5, {"15(10)", "26(10)", "379", "489", "567", "89(10)"});  // {8,9} shared
  std::string why;
  REQUIRE_FALSE(config_valid(bad1, &why));
  REQUIRE(why == "two flats share more than one label");
  REQUIRE_FALSE(config_valid(bad2, &why));
  REQUIRE(why == "two flats share more than one label");

  auto mask = [](const std::vector<unsigned>& labels) {
    std::uint32_t m = 0;
    for (unsigned l : labels) m |= 1u << l;
    return m;
  };
  REQUIRE(circuit_closure(bad1, mask(flat("689(10)"))) == (1u << 10) - 1);
  REQUIRE(circuit_closure(bad2, mask(flat("569(10)"))) == (1u << 10) - 1);
}

TEST_CASE("circuit closure propagation", "[scan]") {
  const Configuration c = config(3, {"123", "145", "246", "356"});
  // Any two labels of a common triple determine that triple.
  REQUIRE(circuit_closure(c, 0b000011) == 0b000111);
  // No pair closes to all six labels: the pattern needs rank 3.
  const std::uint32_t full = 0b111111;
  for (unsigned a = 0; a < 6; ++a)
    for (unsigned b = a + 1; b < 6; ++b)
      REQUIRE(circuit_closure(c, (1u << a) | (1u << b)) != full);
  REQUIRE(circuit_closure(c, 0b001011) == full);
  REQUIRE(circuit_closure(c, 0) == 0);

  Configuration wide;
  wide.k = 16;
  REQUIRE_THROWS_AS(circuit_closure(wide, 0), std::invalid_argument);
}

TEST_CASE("classification of the frozen small configurations", "[scan]") {
  // Two labels of multiplicity one on a common triple: the conjectured
  // supersolvable conclusion holds.
  const ClassifiedConfiguration ss = classify(config(3, {"3456", "126"}));
  REQUIRE(ss.verdict == ScanVerdict::SupersolvableByS);
  REQUIRE(ss.witness == std::vector<unsigned>{0, 1, 5});

  // The rank-3 pattern with four triples survives every elimination.
  const ClassifiedConfiguration open = classify(config(3, {"123", "145", "246", "356"}));
  REQUIRE(open.verdict == ScanVerdict::Open);
  REQUIRE(open.stats.u == 4);
  REQUIRE(open.stats.s == 0);

  // The rank-4 lists: a 3-element seed determines every label, so 8 forms
  // would be confined to rank 3.
  for (const auto& flats : {k4_s3, k4_s1}) {
    const ClassifiedConfiguration rd = classify(config(4, flats));
    REQUIRE(rd.verdict == ScanVerdict::RankDeficient);
    REQUIRE(rd.witness.size() == 3);
    std::uint32_t seed = 0;
    for (unsigned l : rd.witness) seed |= 1u << l;
    REQUIRE(circuit_closure(rd.config, seed) == (1u << 8) - 1);
  }

  // A quadruple disconnected from the triples: the pattern is a product.
  const ClassifiedConfiguration red =
      classify(config(5, {"1234", "589", "68(10)", "79(10)"}));
  REQUIRE(red.verdict == ScanVerdict::Reducible);
  REQUIRE(red.witness == std::vector<unsigned>{0, 1, 2, 3});
}

TEST_CASE("canonical form is a relabeling invariant", "[scan]") {
  const Configuration c = config(4, k4_s1);
  const Configuration canon = canonical_form(c);
  REQUIRE(config_valid(canon));
  REQUIRE(canonical_form(canon) == canon);

  // A handful of deterministic permutations of the eight labels.
  std::vector<unsigned> perm{0, 1, 2, 3, 4, 5, 6, 7};
  for (unsigned step = 0; step < 5; ++step) {
    std::next_permutation(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 3, perm.end());
    REQUIRE(canonical_form(detail::relabel(c, perm)) == canon);
  }

  // The first two rank-5 s=2 lists are the same configuration in different
  // labelings; the third is genuinely different.
  const Configuration s2a = canonical_form(config(5, k5_lists[17]));
  const Configuration s2b = canonical_form(config(5, k5_lists[18]));
  const Configuration s2c =
      canonical_form(config(5, {"13(10)", "29(10)", "345", "567", "789", "468"}));
  REQUIRE(s2a == s2b);
  REQUIRE_FALSE(s2a == s2c);
  REQUIRE(config_valid(s2c));
}

TEST_CASE("rank-3 scan, frozen", "[scan]") {
  const ScanSummary s = scan(3);
  REQUIRE(s.k == 3);
  REQUIRE(s.items.size() == 2);
  REQUIRE(s.supersolvable_by_s == 1);
  REQUIRE(s.rank_deficient == 0);
  REQUIRE(s.reducible == 0);
  REQUIRE(s.open == 1);
  REQUIRE(s.open_items == std::vector<std::size_t>{0});

  REQUIRE(s.items[0].config == config(3, {"123", "145", "246", "356"}));
  REQUIRE(s.items[0].verdict == ScanVerdict::Open);
  REQUIRE(s.items[1].config == config(3, {"3456", "126"}));
  REQUIRE(s.items[1].verdict == ScanVerdict::SupersolvableByS);
}

TEST_CASE("rank-4 scan, frozen", "[scan]") {
  const ScanSummary s = scan(4);
  REQUIRE(s.items.size() == 8);
  REQUIRE(s.supersolvable_by_s == 4);
  REQUIRE(s.rank_deficient == 4);
  REQUIRE(s.reducible == 0);
  REQUIRE(s.open == 0);

  // The classified set contains both explicitly listed rank-4
  // configurations (up to relabeling) with the rank-deficiency verdict.
  std::map<Configuration, ScanVerdict> by_config;
  for (const ClassifiedConfiguration& it : s.items)
    by_config.emplace(it.config, it.verdict);
  for (const auto& flats : {k4_s3, k4_s1}) {
    const auto found = by_config.find(canonical_form(config(4, flats)));
    REQUIRE(found != by_config.end());
    REQUIRE(found->second == ScanVerdict::RankDeficient);
  }

  // Deterministic output across runs.
  const ScanSummary again = scan(4);
  REQUIRE(again.items.size() == s.items.size());
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    REQUIRE(again.items[i].config == s.items[i].config);
    REQUIRE(again.items[i].verdict == s.items[i].verdict);
    REQUIRE(again.items[i].witness == s.items[i].witness);
  }
}

TEST_CASE("flat and configuration rendering", "[scan]") {
  REQUIRE(label_str(0) == "1");
  REQUIRE(label_str(8) == "9");
  REQUIRE(label_str(9) == "(10)");
  REQUIRE(flat_str({0, 3, 6}) == "147");
  REQUIRE(flat_str({7, 8, 9}) == "89(10)");
  REQUIRE(config_str(config(3, {"3456", "126"})) == "3456, 126");
}
