#include <doctest.h>

#include <algorithm>
#include <set>

#include "monoclone/error.hpp"
#include "monoclone/semiaffine.hpp"
#include "test_util.hpp"

using namespace monoclone;
using testutil::gen;
using testutil::mono;

namespace {

LinearForm form(std::uint32_t n, std::vector<std::uint64_t> coeffs) {
  return LinearForm::from_coefficients(n, coeffs);
}

// Maps every expected generator set to the index of the equal lattice node,
// then compares the covering edges through that map.
void check_matches(const SemiaffineLattice& l, std::uint32_t n,
                   const std::vector<std::vector<LinearForm>>& expected,
                   const std::set<std::pair<std::size_t, std::size_t>>& expected_edges) {
  REQUIRE(l.diagram.nodes.size() == expected.size());
  std::vector<std::size_t> where;
  std::set<std::size_t> seen;
  for (const auto& gens : expected) {
    const auto idx = find_node(l, linear_closure(gens, n, l.cap));
    REQUIRE(idx.has_value());
    where.push_back(*idx);
    seen.insert(*idx);
  }
  CHECK(seen.size() == expected.size());
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (auto [a, b] : expected_edges) edges.emplace(where[a], where[b]);
  CHECK(std::set<std::pair<std::size_t, std::size_t>>(l.diagram.edges.begin(),
                                                       l.diagram.edges.end()) == edges);
}

}  // namespace

TEST_CASE("linear forms") {
  const auto f = form(3, {1, 2, 2, 0});
  CHECK(f.width() == 3);
  CHECK(f.count(2) == 2);
  CHECK(to_string(f) == "y1+2*y2+2*y3");
  CHECK(f.evaluate({1, 1, 1}) == 2);
  CHECK(to_string(LinearForm::zero(3)) == "0");
  CHECK(parse_linear_form("y1 + 2*y2", 3) == form(3, {1, 2}));
  CHECK(parse_linear_form("0", 3) == LinearForm::zero(3));
  CHECK(parse_linear_form("4*y1", 3) == LinearForm::identity(3));
  CHECK_THROWS_AS(parse_linear_form("y1+", 3), ParseError);
  CHECK_THROWS_AS(parse_linear_form("x1", 3), ParseError);
}

TEST_CASE("linear image drops exponent q-1") {
  CHECK(linear_image(mono(5, {{1, 1}, {4, 2}})) == LinearForm::identity(4));
  CHECK(linear_image(mono(5, {{4, 1}})) == LinearForm::zero(4));
  CHECK(linear_image(mono(5, {{2, 3}})) == form(4, {2, 2, 2}));
}

TEST_CASE("x+y+z over Z_2 generates the odd all-ones forms") {
  const auto c = linear_closure({form(2, {1, 1, 1})}, 2, 6);
  for (const auto& f : c.members()) {
    CHECK(f.width() % 2 == 1);
    CHECK(f.count(1) == f.width());
  }
  CHECK(c.contains(form(2, {1, 1, 1, 1, 1})));
  CHECK_FALSE(c.contains(form(2, {1, 1})));
  CHECK_FALSE(c.contains(LinearForm::zero(2)));
}

TEST_CASE("x+y over Z_2 generates every form") {
  const auto c = linear_closure({form(2, {1, 1})}, 2);
  CHECK(c.size() == c.box().size());
}

TEST_CASE("phi_affine does not separate x1^(q-1) from x1^(q-1)*x2^(q-1)") {
  const auto a = phi_affine(gen(5, {"x1^4"}));
  const auto b = phi_affine(gen(5, {"x1^4*x2^4"}));
  CHECK(equal(a, b));
  CHECK(equal(a, linear_closure({LinearForm::zero(4)}, 4)));
}

TEST_CASE("semi-affine lattice of modulus 2") {
  const auto l = enumerate_semiaffine_lattice(2);
  // Nodes in order: x, 0, x+y+z, x+y.
  check_matches(l, 2,
                {{LinearForm::identity(2)},
                 {LinearForm::zero(2)},
                 {form(2, {1, 1, 1})},
                 {form(2, {1, 1})}},
                {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("semi-affine lattice of modulus 3") {
  const auto l = enumerate_semiaffine_lattice(3);
  // Nodes in order: x, 0, 2x, x1+x2+x3+x4, <0, 2x>, x+y.
  check_matches(l, 3,
                {{LinearForm::identity(3)},
                 {LinearForm::zero(3)},
                 {form(3, {2})},
                 {form(3, {1, 1, 1, 1})},
                 {LinearForm::zero(3), form(3, {2})},
                 {form(3, {1, 1})}},
                {{0, 3}, {3, 5}, {0, 1}, {1, 4}, {4, 5}, {0, 2}, {2, 4}});
}

TEST_CASE("fibers of phi_affine over F_3") {
  const auto lat = enumerate_lattice(FieldParam::make(3));
  const auto sa = enumerate_semiaffine_lattice(2);
  const auto phis = phi_all(lat, sa.cap);

  const auto proj = fiber(linear_closure({LinearForm::identity(2)}, 2, sa.cap), lat, phis);
  std::vector<Clone> expected{gen(3, {"x1"}), gen(3, {"x1*x2^2"})};
  REQUIRE(proj.nodes.size() == 2);
  for (const auto& e : expected) {
    CHECK(std::count(proj.nodes.begin(), proj.nodes.end(), *find_node(lat, e)) == 1);
  }

  const auto zero = fiber(linear_closure({LinearForm::zero(2)}, 2, sa.cap), lat, phis);
  CHECK(zero.nodes.size() == 3);
  for (const char* g : {"x1^2", "x1^2*x2^2"}) {
    CHECK(std::count(zero.nodes.begin(), zero.nodes.end(), *find_node(lat, gen(3, {g}))) == 1);
  }

  std::size_t total = 0;
  for (const auto& n : sa.diagram.nodes) total += fiber(n, lat, phis).nodes.size();
  CHECK(total == lat.diagram.nodes.size());
}
