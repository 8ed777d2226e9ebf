// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "monoclone/checks.hpp"
#include "monoclone/error.hpp"
#include "monoclone/lattice.hpp"
#include "monoclone/minorset.hpp"
#include "monoclone/semiaffine.hpp"

using namespace monoclone;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

Monomial mono(std::uint32_t q, const std::string& text) {
  return parse_monomial(text, FieldParam::make(q));
}

// Locates each expected node (given by generators) in the lattice and compares
// the covering relation. Returns an empty string on a match.
std::string match_lattice(const CloneLattice& l, std::uint32_t q,
                         const std::vector<std::string>& expected_nodes, const EdgeSet& expected_edges) {
  const auto fp = FieldParam::make(q);
  if (l.diagram.nodes.size() != expected_nodes.size()) {
    return std::to_string(l.diagram.nodes.size()) + " nodes, expected " +
           std::to_string(expected_nodes.size());
  }
  std::vector<std::size_t> where;
  std::set<std::size_t> seen;
  for (const auto& gens : expected_nodes) {
    const auto c = generate(parse_monomial_list(gens, fp), fp, CapPolicy::with_cap(fp, l.cap));
    const auto idx = find_node(l, c);
    if (!idx) return "no node equals <" + gens + ">";
    where.push_back(*idx);
    seen.insert(*idx);
  }
  if (seen.size() != expected_nodes.size()) return "expected nodes collapse";
  EdgeSet want;
  for (auto [a, b] : expected_edges) want.emplace(where[a], where[b]);
  const EdgeSet got(l.diagram.edges.begin(), l.diagram.edges.end());
  if (got != want) {
    return std::to_string(got.size()) + " covering edges, expected " + std::to_string(want.size());
  }
  return {};
}

std::string match_linear_lattice(const SemiaffineLattice& l, std::uint32_t n,
                                const std::vector<std::vector<std::string>>& expected_nodes,
                                const EdgeSet& expected_edges) {
  if (l.diagram.nodes.size() != expected_nodes.size()) {
    return std::to_string(l.diagram.nodes.size()) + " nodes, expected " +
           std::to_string(expected_nodes.size());
  }
  std::vector<std::size_t> where;
  std::set<std::size_t> seen;
  for (const auto& gens : expected_nodes) {
    std::vector<LinearForm> fs;
    for (const auto& g : gens) fs.push_back(parse_linear_form(g, n));
    const auto idx = find_node(l, linear_closure(fs, n, l.cap));
    if (!idx) return "no node for the expected generators";
    where.push_back(*idx);
    seen.insert(*idx);
  }
  if (seen.size() != expected_nodes.size()) return "expected nodes collapse";
  EdgeSet want;
  for (auto [a, b] : expected_edges) want.emplace(where[a], where[b]);
  if (EdgeSet(l.diagram.edges.begin(), l.diagram.edges.end()) != want) return "edges differ";
  return {};
}

// Nodes directly above the bottom, or directly below the top.
std::vector<std::size_t> covers(const CloneLattice& l, bool above_bottom) {
  std::vector<std::size_t> out;
  for (auto [a, b] : l.diagram.edges) {
    if (above_bottom && a == l.diagram.bottom) out.push_back(b);
    if (!above_bottom && b == l.diagram.top) out.push_back(a);
  }
  return out;
}

// Every clone in `cs` equals exactly one of the listed lattice nodes, and
// the counts agree.
bool same_nodes(const CloneLattice& l, const std::vector<std::size_t>& idx,
                const std::vector<Clone>& cs) {
  if (idx.size() != cs.size()) return false;
  std::set<std::size_t> hit;
  for (const auto& c : cs) {
    const auto f = find_node(l, at_cap(c, l.cap));
    if (!f || std::find(idx.begin(), idx.end(), *f) == idx.end()) return false;
    hit.insert(*f);
  }
  return hit.size() == idx.size();
}

Outcome lattice_f2() {
  const auto l = enumerate_lattice(FieldParam::make(2));
  const auto err = match_lattice(l, 2, {"x1", "x1*x2"}, {{0, 1}});
  return {err.empty() && l.stable, err.empty() ? "2 clones, 1 edge" : err};
}

Outcome lattice_f3() {
  const auto l = enumerate_lattice(FieldParam::make(3));
  // 0 <x1>, 1 <x1x2^2>, 2 <x1^2>, 3 <x1^2x2^2>, 4 <x1x2x3>, 5 <x1^2, x1x2^2>, 6 <x1x2>
  const auto err = match_lattice(
      l, 3, {"x1", "x1*x2^2", "x1^2", "x1^2*x2^2", "x1*x2*x3", "x1^2, x1*x2^2", "x1*x2"},
      {{0, 1}, {0, 2}, {1, 4}, {1, 5}, {2, 3}, {3, 5}, {4, 6}, {5, 6}});
  return {err.empty() && l.stable, err.empty() ? "7 clones, 8 edges" : err};
}

Outcome lattice_f4() {
  const auto l = enumerate_lattice(FieldParam::make(4));
  const auto err = match_lattice(l, 4,
                                {
                                    "x1",                       // 0
                                    "x1*x2^3",                  // 1
                                    "x1^2",                     // 2
                                    "x1^3",                     // 3
                                    "x1^2*x2^3",                // 4
                                    "x1^2, x1^3",               // 5
                                    "x1*x2*x3*x4",              // 6
                                    "x1^3*x2^3",                // 7
                                    "x1*x2^3, x1^3*x2^3",       // 8
                                    "x1^2, x1^3*x2^3",          // 9
                                    "x1^2*x2^3, x1^3*x2^3",     // 10
                                    "x1*x2",                    // 11
                                },
                                {{0, 1}, {1, 4}, {2, 5}, {5, 9}, {1, 8}, {3, 7}, {7, 9}, {9, 10}, {7, 8},
                                 {8, 10}, {0, 2}, {2, 4}, {4, 10}, {10, 11}, {1, 6}, {6, 11}, {0, 3}, {3, 5}});
  return {err.empty() && l.stable, err.empty() ? "12 clones, 18 edges" : err};
}

Outcome atom_sets() {
  const std::vector<std::pair<std::uint32_t, std::vector<std::string>>> expected{
      {3, {"x1*x2^2", "x1^2"}}, {4, {"x1*x2^3", "x1^2", "x1^3"}}, {5, {"x1*x2^4", "x1^3", "x1^4"}}};
  for (const auto& [q, gens] : expected) {
    const auto fp = FieldParam::make(q);
    const auto as = atoms(fp);
    if (as.size() != gens.size()) return {false, "q=" + std::to_string(q) + ": atom count"};
    for (const auto& g : gens) {
      const auto want = generate({mono(q, g)}, fp);
      bool found = false;
      for (const auto& a : as) found = found || equal(a, want).value;
      if (!found) return {false, "q=" + std::to_string(q) + ": missing <" + g + ">"};
    }
  }
  for (std::uint32_t q : {3u, 4u}) {
    const auto fp = FieldParam::make(q);
    const auto l = enumerate_lattice(fp);
    if (!same_nodes(l, covers(l, true), atoms(fp))) {
      return {false, "q=" + std::to_string(q) + ": atoms differ from enumeration"};
    }
  }
  return {true, "q=3,4,5 closed form; q=3,4 minimal nodes"};
}

Outcome coatom_sets() {
  std::ostringstream d;
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 13u}) {
    const auto fp = FieldParam::make(q);
    const auto l = fp.primes().size();
    const auto n = coatoms(fp).size();
    d << "q=" << q << ":" << n << " ";
    if (n != (std::size_t{1} << l) - 1 + l) return {false, d.str()};
  }
  for (std::uint32_t q : {3u, 4u}) {
    const auto fp = FieldParam::make(q);
    const auto l = enumerate_lattice(fp);
    std::vector<Clone> cs;
    for (const auto& c : coatoms(fp)) cs.push_back(coatom_clone(c, fp));
    if (!same_nodes(l, covers(l, false), cs)) {
      return {false, "q=" + std::to_string(q) + ": coatoms differ from enumeration"};
    }
  }
  d << "members match for q=3,4";
  return {true, d.str()};
}

Outcome divisor_intervals() {
  for (std::uint32_t q : {5u, 13u}) {
    const auto d = divisor_interval(FieldParam::make(q));
    if (!d.anti_isomorphic || !d.certified) {
      return {false, "q=" + std::to_string(q) + " anti_isomorphic=" +
                         std::to_string(d.anti_isomorphic) + " certified=" + std::to_string(d.certified)};
    }
  }
  return {true, "q=5: 3 divisors, q=13: 6 divisors"};
}

Outcome chain_f5() {
  const auto c = ascending_chain(FieldParam::make(5), 4);
  if (c.strict.size() != 3) return {false, "wrong chain length"};
  for (const auto& s : c.strict) {
    if (!s.value || !s.exact()) return {false, "a step is not strict or not exact"};
  }
  return {true, "<x1^2> < <x1^2*x2^2*x3^2> < ... < <x1^2*...*x7^2>"};
}

Outcome semiaffine_lattices() {
  const auto l2 = enumerate_semiaffine_lattice(2);
  auto err = match_linear_lattice(l2, 2, {{"y1"}, {"0"}, {"y1+y2+y3"}, {"y1+y2"}},
                                 {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  if (!err.empty()) return {false, "modulus 2: " + err};
  const auto l3 = enumerate_semiaffine_lattice(3);
  err = match_linear_lattice(l3, 3, {{"y1"}, {"0"}, {"2*y1"}, {"y1+y2+y3+y4"}, {"0", "2*y1"}, {"y1+y2"}},
                            {{0, 3}, {3, 5}, {0, 1}, {1, 4}, {4, 5}, {0, 2}, {2, 4}});
  if (!err.empty()) return {false, "modulus 3: " + err};
  return {true, "modulus 2: 4 clones, modulus 3: 6 clones"};
}

Outcome from_checks(const std::vector<std::uint32_t>& qs, const std::string& prefix) {
  std::size_t n = 0;
  for (auto q : qs) {
    for (const auto& r : run_checks(FieldParam::make(q))) {
      if (r.name.rfind(prefix, 0) != 0) continue;
      ++n;
      if (!r.passed) return {false, "q=" + std::to_string(q) + " " + r.name + ": " + r.detail};
    }
  }
  if (n == 0) return {false, "no checks matched"};
  return {true, std::to_string(n) + " checks passed"};
}

Outcome idempotent_intervals() {
  std::ostringstream d;
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const auto fp = FieldParam::make(q);
    const auto l = idempotent_interval(fp);
    if (!l.complete || !l.stable) return {false, "q=" + std::to_string(q) + " not finite/stable"};
    const auto top_of_interval = generate({Monomial::product(q, q)}, fp, CapPolicy::with_cap(fp, l.cap));
    const auto x1x2q = Monomial(q, [&] {
      std::vector<std::uint32_t> c(q - 1, 0);
      c[0] = 1;
      c[q - 2] += 1;
      return c;
    }());
    std::vector<Monomial> single;
    for (const auto& n : l.diagram.nodes) {
      if (!subset(n, top_of_interval).value) return {false, "node above <x1...xq>"};
      if (n.size() > 1 && !member(x1x2q, n).value) return {false, "node without x1*x2^(q-1)"};
      // Fold the generators into one.
      auto s = n.generators().front();
      for (std::size_t i = 1; i < n.generators().size(); ++i) {
        s = single_generator(s, n.generators()[i], fp);
      }
      if (!equal(generate({s}, fp, CapPolicy::with_cap(fp, l.cap)), n).value) {
        return {false, "single generator fails for a node"};
      }
      single.push_back(s);
    }
    // Any two nodes: the single generator of the pair generates their join.
    for (std::size_t i = 0; i < single.size(); ++i) {
      for (std::size_t j = 0; j < single.size(); ++j) {
        const auto cap = CapPolicy::with_cap(fp, l.cap);
        const auto s = single_generator(single[i], single[j], fp);
        if (s.max_count() > l.cap) continue;
        if (!equal(generate({s}, fp, cap), generate({single[i], single[j]}, fp, cap)).value) {
          return {false, "pair " + to_string(single[i]) + ", " + to_string(single[j])};
        }
      }
    }
    d << "q=" << q << ":" << l.diagram.nodes.size() << " ";
  }
  d << "nodes";
  return {true, d.str()};
}

Outcome battery() {
  std::size_t total = 0;
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 13u}) {
    for (const auto& r : run_checks(FieldParam::make(q))) {
      ++total;
      if (!r.passed) return {false, "q=" + std::to_string(q) + " " + r.name + ": " + r.detail};
    }
  }
  return {true, std::to_string(total) + " checks, 0 failures"};
}

Outcome negative_control() {
  for (std::uint32_t q : {7u, 8u}) {
    try {
      ascending_chain(FieldParam::make(q), 3);
      return {false, "q=" + std::to_string(q) + " built a chain"};
    } catch (const DomainError&) {
    }
  }
  const auto f = lattice_finiteness(FieldParam::make(5));
  if (f.finite || !f.witness) return {false, "q=5 reported finite"};
  return {true, "q=7,8 rejected; q=5 infinite"};
}

struct Criterion {
  const char* name;
  double limit_s;  // 0 means no time limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"1 lattice F_2", 1, lattice_f2},
      {"2 lattice F_3", 10, lattice_f3},
      {"3 lattice F_4", 60, lattice_f4},
      {"4 atoms", 0, atom_sets},
      {"5 coatoms", 0, coatom_sets},
      {"6 divisor interval", 30, divisor_intervals},
      {"7 ascending chain F_5", 60, chain_f5},
      {"8 semi-affine lattices", 10, semiaffine_lattices},
      {"9 phi consistency", 0, [] { return from_checks({3, 4}, "phi-affine"); }},
      {"10 idempotent interval", 0, idempotent_intervals},
      {"11 property battery", 300, battery},
      {"12 negative control", 0, negative_control},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && s > c.limit_s) {
      o.passed = false;
      o.detail += " (over time limit)";
    }
    if (!o.passed) ++failed;
    char limit[32] = "-";
    if (c.limit_s > 0) std::snprintf(limit, sizeof limit, "%.0fs", c.limit_s);
    std::printf("%s  %-24s %7.2fs (limit %s)  %s\n", o.passed ? "PASS" : "FAIL", c.name, s, limit,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
