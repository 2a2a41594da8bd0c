#include <catch2/catch_amalgamated.hpp>

#include "logder/logder.hpp"
#include "oracles.hpp"

using namespace logder;

TEST_CASE("linear forms normalize their first nonzero coefficient to 1", "[arrangement]") {
  const LinearForm f({0, 2, -4});
  REQUIRE(f.pivot() == 1);
  REQUIRE(f.coeffs() == std::vector<Rational>{0, 1, -2});

  // Proportional forms describe the same hyperplane and compare equal.
  REQUIRE(f == LinearForm({0, Rational(-1, 2), 1}));
  REQUIRE_THROWS_AS(LinearForm({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("arrangement construction validates its forms", "[arrangement]") {
  REQUIRE_THROWS_AS(Arrangement(3, {LinearForm({1, 0, 0}), LinearForm({2, 0, 0})}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(Arrangement(3, {LinearForm({1, 0})}), std::invalid_argument);

  const Arrangement a(2, {LinearForm({1, 0}), LinearForm({0, 1}), LinearForm({1, 1})}, "demo");
  REQUIRE(a.dim() == 2);
  REQUIRE(a.size() == 3);
  REQUIRE(a.name() == "demo");
}

TEST_CASE("arr text parsing handles comments, blanks and fractions", "[arrangement][io]") {
  const char* text =
      "# a three-line arrangement in the plane\n"
      "\n"
      "2 3   # header: dimension, count\n"
      "1 0\n"
      "0 1\n"
      "1 1/2\n";
  const Arrangement a = parse_arrangement(text, "demo");
  REQUIRE(a.dim() == 2);
  REQUIRE(a.size() == 3);
  REQUIRE(a.form(2).coeffs() == std::vector<Rational>{1, Rational(1, 2)});
}

TEST_CASE("arr text round-trips through render and parse", "[arrangement][io]") {
  const Arrangement a = catalog("A8");
  const Arrangement b = parse_arrangement(to_arr_text(a));
  REQUIRE(a.dim() == b.dim());
  REQUIRE(a.forms() == b.forms());
}

TEST_CASE("arr parse failures carry a machine-checkable kind", "[arrangement][io]") {
  using Kind = ArrParseError::Kind;
  auto kind_of = [](const char* text) {
    try {
      parse_arrangement(text);
    } catch (const ArrParseError& e) {
      return e.kind();
    }
    throw std::logic_error("expected a parse failure");
  };

  REQUIRE(kind_of("") == Kind::BadHeader);
  REQUIRE(kind_of("3\n1 0 0\n") == Kind::BadHeader);
  REQUIRE(kind_of("x 3\n") == Kind::BadHeader);
  REQUIRE(kind_of("0 1\n1\n") == Kind::BadHeader);
  REQUIRE(kind_of("2 2\n1 0\n0 1\n1 1\n") == Kind::WrongRowCount);
  REQUIRE(kind_of("2 2\n1 0\n") == Kind::WrongRowCount);
  REQUIRE(kind_of("2 2\n1 0 0\n0 1\n") == Kind::WrongColumnCount);
  REQUIRE(kind_of("2 2\n1 0\n0 1.5\n") == Kind::MalformedRational);
  REQUIRE(kind_of("2 2\n1 0\n0 1/0\n") == Kind::MalformedRational);
  REQUIRE(kind_of("2 2\n1 0\n0 0\n") == Kind::ZeroForm);
  REQUIRE(kind_of("2 2\n1 0\n2 0\n") == Kind::DuplicateForm);
}

TEST_CASE("rank and essentiality", "[arrangement]") {
  REQUIRE(rank(catalog("B3")) == 3);
  REQUIRE(is_essential(catalog("B3")));

  // Three concurrent lines placed inside a 3-space: rank 2, not essential.
  const Arrangement flat(3, {LinearForm({1, 0, 0}), LinearForm({0, 1, 0}), LinearForm({1, 1, 0})});
  REQUIRE(rank(flat) == 2);
  REQUIRE_FALSE(is_essential(flat));

  const Arrangement ess = essentialize(flat);
  REQUIRE(ess.dim() == 2);
  REQUIRE(ess.size() == 3);
  REQUIRE(is_essential(ess));

  // Essentialization preserves the combinatorics: same Poincare polynomial
  // and the same rank-2 multiset.
  REQUIRE(oracle::whitney_poincare(flat) == oracle::whitney_poincare(ess));
  const auto pf = rank2_profile(build_lattice(flat));
  const auto pe = rank2_profile(build_lattice(ess));
  REQUIRE(pf.histogram == pe.histogram);
  REQUIRE(pf.u == 1);

  // Essentializing an essential arrangement is the identity up to basis.
  REQUIRE(essentialize(ess).dim() == 2);
}

TEST_CASE("defining polynomial is the product of the normalized forms", "[arrangement]") {
  const Arrangement a = catalog("A7");
  MPoly prod = MPoly::one(a.dim());
  for (const LinearForm& f : a.forms()) prod *= f.to_poly();
  REQUIRE(defining_polynomial(a) == prod);
  REQUIRE(defining_polynomial(a).degree() == int(a.size()));

  const Arrangement empty(2, {});
  REQUIRE(defining_polynomial(empty) == MPoly::one(2));
}

TEST_CASE("catalog names resolve and unknown names are rejected", "[catalog]") {
  // Concrete entries of the listing are resolvable names; entries holding
  // '<' are parameter patterns.
  for (const std::string& name : catalog_names()) {
    INFO(name);
    if (name.find('<') == std::string::npos) REQUIRE(is_catalog_name(name));
  }
  for (const char* name : {"A1", "A8", "B4", "SS22(5)", "Fam5(2,-1)"}) {
    const Arrangement a = catalog(name);
    REQUIRE(a.size() > 0);
    REQUIRE(a.name() == name);
  }
  REQUIRE(catalog("B6").dim() == 6);
  REQUIRE(catalog("SS22(4)").size() == 7);
  REQUIRE_FALSE(is_catalog_name("nope"));
  REQUIRE_THROWS_AS(catalog("nope"), std::invalid_argument);
  REQUIRE_THROWS_AS(catalog("SS22(1)"), std::invalid_argument);
  REQUIRE_THROWS_AS(catalog("B0"), std::invalid_argument);

  // Fam5(1,1) has the right shape for a catalog name, but its second block
  // degenerates to a repeated hyperplane, which the constructor rejects.
  REQUIRE(is_catalog_name("Fam5(1,1)"));
  REQUIRE_THROWS_AS(catalog("Fam5(1,1)"), std::invalid_argument);
}
