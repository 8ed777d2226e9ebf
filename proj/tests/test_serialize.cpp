#include <doctest.h>

#include <string>

#include "monoclone/error.hpp"
#include "monoclone/serialize.hpp"
#include "test_util.hpp"

using namespace monoclone;
using testutil::gen;
using testutil::mono;

TEST_CASE("monomials round-trip through JSON") {
  const auto m = mono(5, {{1, 1}, {4, 2}});
  const auto j = to_json(m);
  CHECK(j.dump() == R"({"q":5,"counts":{"1":1,"4":2}})");
  CHECK(monomial_from_json(j) == m);
  CHECK(monomial_from_json(Json::parse(j.dump())) == m);
}

TEST_CASE("malformed monomials are parse errors") {
  CHECK_THROWS_AS(monomial_from_json(Json::parse(R"({"q":5,"counts":{"7":1}})")), ParseError);
  CHECK_THROWS_AS(monomial_from_json(Json::parse(R"({"q":5,"counts":{"x":1}})")), ParseError);
  CHECK_THROWS_AS(monomial_from_json(Json::parse(R"({"counts":{"1":1}})")), ParseError);
}

TEST_CASE("clones round-trip through JSON") {
  const auto c = gen(3, {"x1^2", "x1*x2^2"});
  const auto j = to_json(c);
  CHECK(j.at("q") == 3);
  CHECK(j.at("stable") == true);
  const auto back = clone_from_json(Json::parse(j.dump()));
  CHECK(back.cap().per_residue_cap == c.cap().per_residue_cap);
  CHECK(members_equal(back, c));
}

TEST_CASE("a clone dump with a wrong member list is rejected") {
  auto j = to_json(gen(3, {"x1*x2^2"}));
  j["members"].push_back("x1^2");
  CHECK_THROWS_AS(clone_from_json(j), ParseError);
}

TEST_CASE("labels and DOT output") {
  const auto f3 = FieldParam::make(3);
  CHECK(label(parse_monomial_list("x1^2, x1*x2^2", f3)) == "{x1^2, x1*x2^2}");
  CHECK(label(std::vector<LinearForm>{LinearForm::zero(3)}) == "{0}");

  const auto l = enumerate_lattice(f3);
  const auto dot = to_dot(l);
  CHECK(dot.find("rankdir=BT") != std::string::npos);
  std::size_t arrows = 0;
  for (auto p = dot.find("->"); p != std::string::npos; p = dot.find("->", p + 1)) ++arrows;
  CHECK(arrows == 8);
  CHECK(dot.find("\"{x1^2, x1*x2^2}\"") != std::string::npos);

  const auto lj = to_json(l);
  CHECK(lj.at("nodes").size() == 7);
  CHECK(lj.at("edges").size() == 8);
}

TEST_CASE("semi-affine lattices and minor sets serialize") {
  const auto sa = enumerate_semiaffine_lattice(2);
  const auto j = to_json(sa);
  CHECK(j.at("modulus") == 2);
  CHECK(j.at("nodes").size() == 4);

  const auto s = phi_minor(gen(3, {"x1^2"}));
  const auto sj = to_json(s);
  CHECK(sj.at("points").size() == 3);
}
