#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

#include "monoclone/error.hpp"
#include "monoclone/lattice.hpp"
#include "test_util.hpp"

using namespace monoclone;
using testutil::gen;
using testutil::mono;

namespace {

std::string label_of(const Clone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.generators().size(); ++i) {
    if (i) s += ", ";
    s += to_string(c.generators()[i]);
  }
  return s + "}";
}

std::multiset<std::string> labels(const CloneLattice& l) {
  std::multiset<std::string> out;
  for (const auto& n : l.diagram.nodes) out.insert(label_of(n));
  return out;
}

// Edge set in terms of node labels, so the check does not depend on the
// node order.
std::set<std::pair<std::string, std::string>> labelled_edges(const CloneLattice& l) {
  std::set<std::pair<std::string, std::string>> out;
  for (auto [a, b] : l.diagram.edges) {
    out.emplace(label_of(l.diagram.nodes[a]), label_of(l.diagram.nodes[b]));
  }
  return out;
}

}  // namespace

TEST_CASE("the lattice over F_2 has two clones") {
  const auto l = enumerate_lattice(FieldParam::make(2));
  CHECK(l.complete);
  CHECK(l.stable);
  CHECK(labels(l) == std::multiset<std::string>{"{x1}", "{x1*x2}"});
  CHECK(l.diagram.edges.size() == 1);
}

TEST_CASE("the lattice over F_3 has seven clones") {
  const auto l = enumerate_lattice(FieldParam::make(3));
  CHECK(l.stable);
  CHECK(labels(l) == std::multiset<std::string>{"{x1}", "{x1^2}", "{x1*x2^2}", "{x1^2*x2^2}",
                                                "{x1*x2*x3}", "{x1^2, x1*x2^2}", "{x1*x2}"});
  const std::set<std::pair<std::string, std::string>> expected{
      {"{x1}", "{x1^2}"},
      {"{x1}", "{x1*x2^2}"},
      {"{x1^2}", "{x1^2*x2^2}"},
      {"{x1*x2^2}", "{x1^2, x1*x2^2}"},
      {"{x1*x2^2}", "{x1*x2*x3}"},
      {"{x1^2*x2^2}", "{x1^2, x1*x2^2}"},
      {"{x1*x2*x3}", "{x1*x2}"},
      {"{x1^2, x1*x2^2}", "{x1*x2}"},
  };
  CHECK(labelled_edges(l) == expected);
  CHECK(label_of(l.diagram.nodes[l.diagram.bottom]) == "{x1}");
  CHECK(label_of(l.diagram.nodes[l.diagram.top]) == "{x1*x2}");
}

TEST_CASE("the lattice over F_4 has twelve clones") {
  const auto l = enumerate_lattice(FieldParam::make(4));
  CHECK(l.stable);
  CHECK(l.diagram.nodes.size() == 12);
}

TEST_CASE("lattices with non-square-free q-1 are marked incomplete") {
  const auto l = enumerate_lattice(FieldParam::make(5), {.width_bound = 3});
  CHECK_FALSE(l.complete);
  CHECK(l.chain_witness.size() >= 2);
}

TEST_CASE("atoms") {
  auto atom_labels = [](std::uint32_t q) {
    std::set<std::string> out;
    for (const auto& c : atoms(FieldParam::make(q))) out.insert(label_of(c));
    return out;
  };
  CHECK(atom_labels(3) == std::set<std::string>{"{x1*x2^2}", "{x1^2}"});
  CHECK(atom_labels(4) == std::set<std::string>{"{x1*x2^3}", "{x1^2}", "{x1^3}"});
  CHECK(atom_labels(5) == std::set<std::string>{"{x1*x2^4}", "{x1^3}", "{x1^4}"});
}

TEST_CASE("atoms over F_5 are minimal") {
  // Every monomial other than x1 in the atom generates the atom again.
  const auto f5 = FieldParam::make(5);
  for (const auto& a : atoms(f5)) {
    const auto c = generate(a.generators(), f5);
    for (const auto& m : c.members()) {
      if (m == Monomial::variable(5)) continue;
      CHECK(equal(generate({m}, f5, c.cap()), c).value);
    }
  }
}

TEST_CASE("coatom counts are 2^l - 1 + l") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 13u}) {
    const auto fp = FieldParam::make(q);
    const auto l = fp.primes().size();
    CHECK(coatoms(fp).size() == (std::size_t{1} << l) - 1 + l);
  }
  CHECK_THROWS_AS(coatoms(FieldParam::make(2)), PreconditionError);
}

TEST_CASE("coatoms over F_3 are x1*x2*x3 and the node of x1^2 and x1*x2^2") {
  const auto f3 = FieldParam::make(3);
  const auto cs = coatoms(f3);
  REQUIRE(cs.size() == 2);
  CHECK(members_equal(coatom_clone(cs[0], f3), gen(3, {"x1*x2*x3"})));
  CHECK(members_equal(coatom_clone(cs[1], f3), gen(3, {"x1^2", "x1*x2^2"})));
}

TEST_CASE("membership in K_D over F_7") {
  const auto f7 = FieldParam::make(7);
  CHECK(coatom_member(mono(7, {{2, 2}}), {1}, f7));
  CHECK(coatom_member(mono(7, {{1, 1}, {2, 1}}), {1}, f7));
  CHECK_FALSE(coatom_member(mono(7, {{1, 2}, {2, 1}}), {1}, f7));
}

TEST_CASE("divisor intervals are anti-isomorphic to divisor lattices") {
  for (std::uint32_t q : {3u, 5u, 13u}) {
    const auto d = divisor_interval(FieldParam::make(q));
    CHECK(d.anti_isomorphic);
    CHECK(d.certified);
  }
  const auto d13 = divisor_interval(FieldParam::make(13));
  CHECK(d13.divisors == std::vector<std::uint32_t>{1, 2, 3, 4, 6, 12});

  const auto d5 = divisor_interval(FieldParam::make(5));
  REQUIRE(d5.divisors == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(d5.included[2][1].value);
  CHECK(d5.included[1][0].value);
  CHECK_FALSE(d5.included[0][1].value);
  CHECK(members_equal(d5.clones[1], gen(5, {"x1*x2*x3"})));
}

TEST_CASE("replicate") {
  const auto f5 = FieldParam::make(5);
  CHECK(replicate(mono(5, {{1, 3}}), 1, f5) == mono(5, {{1, 5}}));
  CHECK(replicate(mono(5, {{1, 3}}), 2, f5) == mono(5, {{1, 7}}));
  CHECK(replicate(mono(5, {{1, 1}, {2, 1}}), 0, f5) == mono(5, {{1, 1}, {2, 1}}));
  CHECK(replicate(mono(5, {{1, 1}, {2, 1}}), 1, f5) == mono(5, {{1, 1}, {2, 2}}));
  CHECK_THROWS_AS(replicate(mono(5, {{2, 2}}), 1, f5), PreconditionError);
}

TEST_CASE("ascending chains") {
  const auto c5 = ascending_chain(FieldParam::make(5), 3);
  CHECK(c5.generators ==
        std::vector<Monomial>{mono(5, {{2, 1}}), mono(5, {{2, 3}}), mono(5, {{2, 5}})});
  for (const auto& s : c5.strict) CHECK(s.value);

  const auto c9 = ascending_chain(FieldParam::make(9), 2);
  CHECK(c9.generators == std::vector<Monomial>{mono(9, {{4, 1}}), mono(9, {{4, 3}})});
  for (const auto& s : c9.strict) CHECK(s.value);

  CHECK_THROWS_AS(ascending_chain(FieldParam::make(7), 3), DomainError);
  CHECK_THROWS_AS(ascending_chain(FieldParam::make(8), 3), DomainError);
}

TEST_CASE("finiteness follows square-freeness of q-1") {
  CHECK(lattice_finiteness(FieldParam::make(3)).finite);
  CHECK(lattice_finiteness(FieldParam::make(7)).finite);
  const auto f5 = lattice_finiteness(FieldParam::make(5));
  CHECK_FALSE(f5.finite);
  CHECK(f5.witness.has_value());
}

TEST_CASE("idempotent intervals") {
  auto interval_labels = [](std::uint32_t q) {
    return labels(idempotent_interval(FieldParam::make(q)));
  };
  CHECK(interval_labels(3) == std::multiset<std::string>{"{x1}", "{x1*x2^2}", "{x1*x2*x3}"});
  {
    // Labels are not unique here: x1^2*x2^2 generates the same clone as
    // x1*x2*x3*x4 over F_4, so compare the clones themselves.
    const auto f4 = FieldParam::make(4);
    const auto l = idempotent_interval(f4);
    REQUIRE(l.diagram.nodes.size() == 3);
    for (const char* g : {"x1", "x1*x2^3", "x1*x2*x3*x4"}) {
      const auto c = generate({parse_monomial(g, f4)}, f4, CapPolicy::with_cap(f4, l.cap));
      CHECK(find_node(l, c).has_value());
    }
  }

  const auto f5 = FieldParam::make(5);
  const auto l = idempotent_interval(f5);
  CHECK(l.complete);
  const auto x1x2q = mono(5, {{1, 1}, {4, 1}});
  for (const auto& n : l.diagram.nodes) {
    if (n.size() > 1) CHECK(member(x1x2q, n).value);
  }
}

TEST_CASE("single generators of idempotent pairs") {
  const auto f3 = FieldParam::make(3);
  const auto m1 = mono(3, {{1, 1}, {2, 1}});
  const auto m2 = mono(3, {{1, 3}});
  const auto s = single_generator(m1, m2, f3);
  CHECK(s == mono(3, {{1, 3}, {2, 3}}));
  CHECK(equal(generate({s}, f3), generate({m1, m2}, f3)).value);

  const auto f5 = FieldParam::make(5);
  const auto t = mono(5, {{1, 1}, {4, 1}});
  const auto s5 = single_generator(t, t, f5);
  CHECK(s5 == mono(5, {{1, 1}, {4, 3}}));
  CHECK(equal(generate({s5}, f5), generate({t}, f5)).value);

  CHECK_THROWS_AS(single_generator(mono(3, {{2, 1}}), m2, f3), PreconditionError);
}
