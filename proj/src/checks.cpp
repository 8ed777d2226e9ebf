#include "monoclone/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "monoclone/clone.hpp"
#include "monoclone/error.hpp"
#include "monoclone/lattice.hpp"
#include "monoclone/minorset.hpp"
#include "monoclone/semiaffine.hpp"
#include "oracle/oracle.hpp"

namespace monoclone {

namespace {

using Counts = std::vector<std::uint32_t>;

// Collects instance counts and the first failure of one check.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checked_;
    if (!ok && !failure_) failure_ = what();
  }
  void skip() { ++skipped_; }

  CheckResult result() const {
    CheckResult r{name_, !failure_, ""};
    if (failure_) {
      r.detail = "counterexample: " + *failure_;
    } else {
      r.detail = std::to_string(checked_) + (checked_ == 1 ? " instance" : " instances");
      if (skipped_) r.detail += ", " + std::to_string(skipped_) + " beyond the cap";
    }
    return r;
  }

 private:
  std::string name_;
  std::size_t checked_ = 0;
  std::size_t skipped_ = 0;
  std::optional<std::string> failure_;
};

std::string label_of_gens(const std::vector<Monomial>& gens) {
  std::string s = "{";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += to_string(gens[i]);
  }
  return s + "}";
}

std::string label_of(const Clone& c) { return label_of_gens(c.generators()); }

std::string forms_label(const std::vector<LinearForm>& fs) {
  std::string s = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) s += ", ";
    s += to_string(fs[i]);
  }
  return s + "}";
}

std::string str(const Counts& c, std::uint32_t q) {
  if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) return "1";
  return to_string(Monomial(q, c));
}

Monomial mono(std::uint32_t q, std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> rc) {
  Counts c(q - 1, 0);
  for (auto [r, k] : rc) c[r - 1] += k;
  return Monomial(q, std::move(c));
}

// Membership of a count vector; nullopt if it does not fit the cap.
std::optional<bool> has(const Clone& c, const Counts& counts) {
  if (c.characterization()) return c.characterization()->contains(Monomial(c.field().q(), counts));
  const auto box = c.box();
  for (auto x : counts) {
    if (x > box.cap()) return std::nullopt;
  }
  return box.contains(counts) && c.member_bits().test(box.index(counts));
}

std::vector<Counts> member_counts(const Clone& c, std::uint32_t max_width) {
  std::vector<Counts> out;
  const auto box = c.box();
  c.member_bits().for_each([&](std::size_t i) {
    auto counts = box.counts(i);
    std::uint32_t w = 0;
    for (auto x : counts) w += x;
    if (w <= max_width) out.push_back(std::move(counts));
  });
  return out;
}

struct Context {
  FieldParam fp;
  /// Principal clones of small monomials, closed without the saturation
  /// shortcut so the rewrite-rule checks are not circular.
  std::vector<Clone> samples;
  std::optional<CloneLattice> lattice;
};

// ---- monomial calculus ----------------------------------------------------

CheckResult reduce_idempotent(const Context& ctx) {
  Tally t("reduce-exponent-idempotent");
  const auto& fp = ctx.fp;
  for (std::uint64_t a = 0; a <= 10ull * fp.q(); ++a) {
    const auto r = reduce_exponent(a, fp);
    t.expect(reduce_exponent(r, fp) == r && (r == 0) == (a == 0) && r <= fp.order(),
             [&] { return "a=" + std::to_string(a); });
  }
  return t.result();
}

std::uint32_t small_width(const FieldParam& fp) { return fp.q() <= 5 ? 4 : 2; }

CheckResult identify_width(const Context& ctx) {
  Tally t("identify-lowers-width");
  const auto& fp = ctx.fp;
  for (const auto& m : all_monomials(fp, small_width(fp))) {
    if (m.width() < 2) continue;
    for (std::uint32_t a = 1; a <= fp.order(); ++a) {
      for (std::uint32_t b = a; b <= fp.order(); ++b) {
        if (!m.count(a) || !m.count(b) || (a == b && m.count(a) < 2)) continue;
        const auto n = identify(m, a, b, fp);
        t.expect(n.width() + 1 == m.width(), [&] { return to_string(m); });
      }
    }
  }
  return t.result();
}

CheckResult equivalent_exponents(const Context& ctx) {
  Tally t("equivalent-exponents");
  const auto& fp = ctx.fp;
  for (const auto& m : all_monomials(fp, 3)) {
    const auto ex = m.exponents();
    for (std::size_t i = 0; i < ex.size(); ++i) {
      for (std::uint64_t k = 1; k <= 3; ++k) {
        std::vector<std::uint64_t> raw(ex.begin(), ex.end());
        raw[i] += k * fp.order();
        raw.push_back(0);
        t.expect(canonicalize(raw, fp) == m, [&] { return to_string(m); });
      }
    }
  }
  return t.result();
}

// Enumerates all points of GF(q)^w.
void for_points(int q, std::size_t w, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> x(w, 0);
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < w && ++x[i] == q) x[i++] = 0;
    if (i == w) return;
  }
}

CheckResult evaluate_matches_field(const Context& ctx) {
  Tally t("evaluate-matches-field-arithmetic");
  const auto& fp = ctx.fp;
  const auto field = oracle::make_field(static_cast<int>(fp.q()));
  const std::uint32_t w = fp.q() <= 5 ? 3 : 2;
  for (const auto& m : all_monomials(fp, w)) {
    const auto ex = m.exponents();
    std::vector<int> exps(ex.begin(), ex.end());
    const auto table = oracle::monomial_table(field, exps);
    for_points(field.q, ex.size(), [&](const std::vector<int>& x) {
      // monomial_table lists tuples with x_1 most significant; for_points
      // varies x[0] fastest, so rebuild the index.
      std::size_t k = 0;
      for (std::size_t i = 0; i < x.size(); ++i) k = k * field.q + x[i];
      std::vector<LogValue> pt;
      for (int v : x) {
        pt.push_back(v == 0 ? LogValue{} : LogValue{static_cast<std::uint32_t>(field.log[v])});
      }
      const auto got = evaluate(m, pt, fp);
      const int val = table[k];
      const LogValue want =
          val == 0 ? LogValue{} : LogValue{static_cast<std::uint32_t>(field.log[val])};
      t.expect(got == want, [&] { return to_string(m); });
    });
  }
  return t.result();
}

CheckResult identify_evaluate(const Context& ctx) {
  Tally t("identify-matches-evaluation");
  const auto& fp = ctx.fp;
  const auto n = fp.order();
  for (const auto& m : all_monomials(fp, 3)) {
    if (m.width() < 2) continue;
    const auto ex = m.exponents();
    for (std::size_t i = 0; i < ex.size(); ++i) {
      for (std::size_t j = i + 1; j < ex.size(); ++j) {
        const auto id = identify(m, ex[i], ex[j], fp);
        // Points over Z_{q-1} u {-inf}; value index n stands for -inf.
        std::vector<std::uint32_t> x(ex.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
          if (k < ex.size()) {
            for (x[k] = 0; x[k] <= n; ++x[k]) {
              if (k == j) {
                x[k] = x[i];
                rec(k + 1);
                break;
              }
              rec(k + 1);
            }
            return;
          }
          auto lv = [&](std::uint32_t v) { return v == n ? LogValue{} : LogValue{v}; };
          std::vector<LogValue> pt;
          for (auto v : x) pt.push_back(lv(v));
          // Pair the identified monomial's exponents with the same values.
          std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
          for (std::size_t k2 = 0; k2 < ex.size(); ++k2) {
            if (k2 != i && k2 != j) pairs.emplace_back(ex[k2], x[k2]);
          }
          pairs.emplace_back(reduce_exponent(ex[i] + ex[j], fp), x[i]);
          std::sort(pairs.begin(), pairs.end());
          std::vector<LogValue> pt2;
          for (auto [e, v] : pairs) pt2.push_back(lv(v));
          t.expect(evaluate(id, pt2, fp) == evaluate(m, pt, fp),
                   [&] { return to_string(m); });
        };
        rec(0);
      }
    }
  }
  return t.result();
}

// ---- closure rules ---------------------------------------------------------

CheckResult plain_closure_agrees(const Context& ctx) {
  Tally t("plain-closure-matches-default-closure");
  for (const auto& c : ctx.samples) {
    const auto d = generate(c.generators(), ctx.fp, c.cap());
    t.expect(members_equal(c, d) && c.stable() && d.stable(),
             [&] { return to_string(c.generators().front()); });
  }
  return t.result();
}

CheckResult closure_idempotent(const Context& ctx) {
  Tally t("closure-idempotent");
  for (const auto& c : ctx.samples) {
    if (c.size() > 120) {
      t.skip();
      continue;
    }
    const auto d = generate(c.members(), ctx.fp, c.cap());
    t.expect(members_equal(c, d), [&] { return to_string(c.generators().front()); });
  }
  return t.result();
}

CheckResult closure_monotone(const Context& ctx) {
  Tally t("closure-monotone");
  const auto& s = ctx.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); j += 3) {
      auto gens = s[i].generators();
      gens.insert(gens.end(), s[j].generators().begin(), s[j].generators().end());
      const auto big = generate(gens, ctx.fp, s[i].cap());
      t.expect(subset(s[i], big).value, [&] { return to_string(s[i].generators().front()); });
    }
  }
  return t.result();
}

// Visits every sub-multiset d of c other than 0 and c.
void for_proper_parts(const Counts& c, const std::function<void(const Counts&)>& f) {
  Counts d(c.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.size()) {
      if (d != c && std::any_of(d.begin(), d.end(), [](auto x) { return x > 0; })) f(d);
      return;
    }
    for (d[i] = 0; d[i] <= c[i]; ++d[i]) rec(i + 1);
    d[i] = 0;
  };
  rec(0);
}

CheckResult zero_sum_cut(const Context& ctx) {
  Tally t("zero-sum-variables-removable");
  const auto q = ctx.fp.q();
  for (const auto& c : ctx.samples) {
    for (const auto& m : member_counts(c, 6)) {
      std::uint32_t w = 0;
      for (auto x : m) w += x;
      if (w < 2) continue;
      for_proper_parts(m, [&](const Counts& d) {
        std::uint64_t s = 0;
        for (std::uint32_t r = 1; r < q; ++r) s += std::uint64_t{r} * d[r - 1];
        if (s % (q - 1)) return;
        Counts rest = m;
        for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= d[k];
        const auto in = has(c, rest);
        t.expect(in.value_or(false), [&] { return str(m, q) + " minus " + str(d, q); });
      });
    }
  }
  return t.result();
}

CheckResult saturation(const Context& ctx) {
  Tally t("order-exponent-multiplicity-free");
  const auto q = ctx.fp.q();
  for (const auto& c : ctx.samples) {
    const auto cap = c.cap().per_residue_cap;
    for (const auto& m : member_counts(c, ~0u)) {
      if (m[q - 2] == 0) continue;
      bool rest = false;
      for (std::uint32_t r = 0; r + 1 < q - 1; ++r) rest = rest || m[r];
      if (!rest) continue;
      for (std::uint32_t k = 0; k <= cap; ++k) {
        Counts v = m;
        v[q - 2] = k;
        t.expect(has(c, v).value_or(false), [&] { return str(m, q) + " with " + std::to_string(k); });
      }
    }
  }
  return t.result();
}

CheckResult replication(const Context& ctx) {
  Tally t("replication-through-exponent-one");
  const auto q = ctx.fp.q();
  for (const auto& c : ctx.samples) {
    const auto cap = c.cap().per_residue_cap;
    for (const auto& m : member_counts(c, ~0u)) {
      if (m[0] == 0) continue;
      Counts rest = m;
      --rest[0];
      if (std::all_of(rest.begin(), rest.end(), [](auto x) { return x == 0; })) continue;
      for (std::uint32_t n = 0;; ++n) {
        Counts v(q - 1, 0);
        v[0] = 1;
        bool fits = true;
        for (std::size_t k = 0; k < v.size(); ++k) {
          v[k] += n * rest[k];
          fits = fits && v[k] <= cap;
        }
        if (!fits) break;
        t.expect(has(c, v).value_or(false), [&] { return str(m, q) + " n=" + std::to_string(n); });
      }
    }
  }
  return t.result();
}

bool has_top_idempotent(const Clone& c) {
  return has(c, mono(c.field().q(), {{1, c.field().q()}}).counts()).value_or(false);
}

CheckResult two_ones(const Context& ctx) {
  Tally t("two-exponent-ones-give-idempotent-top");
  for (const auto& c : ctx.samples) {
    bool trigger = false;
    for (const auto& m : member_counts(c, ~0u)) trigger = trigger || m[0] >= 2;
    if (trigger) t.expect(has_top_idempotent(c), [&] { return label_of(c); });
  }
  return t.result();
}

CheckResult two_units(const Context& ctx) {
  Tally t("two-unit-exponents-give-idempotent-top");
  const auto q = ctx.fp.q();
  for (const auto& c : ctx.samples) {
    bool trigger = false;
    for (const auto& m : member_counts(c, ~0u)) {
      std::uint32_t units = 0;
      for (std::uint32_t r = 1; r < q; ++r) {
        if (gcd(r, q - 1) == 1) units += m[r - 1];
      }
      trigger = trigger || units >= 2;
    }
    if (trigger) t.expect(has_top_idempotent(c), [&] { return label_of(c); });
  }
  return t.result();
}

CheckResult power_with_top(const Context& ctx) {
  Tally t("power-and-idempotent-top-give-product");
  const auto q = ctx.fp.q();
  for (const auto& c : ctx.samples) {
    if (!has_top_idempotent(c)) continue;
    for (std::uint32_t a = 1; a < q; ++a) {
      if (!has(c, mono(q, {{a, 1}}).counts()).value_or(false)) continue;
      t.expect(has(c, mono(q, {{1, a}}).counts()).value_or(false),
               [&] { return label_of(c) + " a=" + std::to_string(a); });
    }
  }
  return t.result();
}

// generate({x1...xk}) against the congruence predicate on its whole box.
void congruence_compare(Tally& t, const FieldParam& fp, std::uint32_t k) {
  const auto g = Monomial::product(fp.q(), k);
  const auto c = generate({g}, fp, std::nullopt, {.saturate = false});
  const auto b = static_cast<std::uint32_t>(gcd(k - 1, fp.order()));
  const auto box = c.box();
  bool ok = c.stable() && box.support().size() == fp.order();
  std::string bad;
  for (std::size_t i = 1; ok && i < box.size(); ++i) {
    const auto m = box.monomial(i);
    if (c.member_bits().test(i) != congruence_clone_member(m, b, fp)) {
      ok = false;
      bad = to_string(m);
    }
  }
  t.expect(ok, [&] { return "k=" + std::to_string(k) + " at " + bad; });
}

CheckResult product_congruence(const Context& ctx) {
  Tally t("product-clone-is-congruence-clone");
  for (std::uint32_t k = 2; k <= ctx.fp.q() + 2; ++k) congruence_compare(t, ctx.fp, k);
  return t.result();
}

CheckResult idempotent_top(const Context& ctx) {
  Tally t("idempotent-top-is-all-idempotents");
  congruence_compare(t, ctx.fp, ctx.fp.q());
  return t.result();
}

// Builds x1...x_{1+g} from x1...x_{1+k} and x1...x_{1+l}, g = gcd(k, l),
// with substitutions and identifications only.
std::optional<Monomial> gcd_derivation(const FieldParam& fp, std::uint32_t k, std::uint32_t l) {
  const auto n = fp.order();
  const auto g = static_cast<std::uint32_t>(gcd(k, l));
  const auto gk = Monomial::product(fp.q(), 1 + k);
  const auto gl = Monomial::product(fp.q(), 1 + l);
  for (std::uint32_t s = 1; s <= 2 * n * n; ++s) {
    for (std::uint32_t a = 0; a <= s; ++a) {
      const auto b = s - a;
      const std::uint64_t total = std::uint64_t{a} * k + std::uint64_t{b} * l;
      if (total < g || (total - g) % n) continue;
      Monomial m = a ? replicate(gk, a - 1, fp) : replicate(gl, b - 1, fp);
      if (a && b) m = substitute(m, 1, replicate(gl, b - 1, fp), fp);
      for (std::uint64_t rounds = (total - g) / n; rounds > 0; --rounds) {
        // q-1 identifications fold q-1 exponent-one variables into one.
        std::uint32_t e = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
          m = identify(m, e, 1, fp);
          e = reduce_exponent(e + 1, fp);
        }
      }
      return m;
    }
  }
  return std::nullopt;
}

CheckResult gcd_products(const Context& ctx) {
  Tally t("product-pair-gives-gcd-product");
  const auto& fp = ctx.fp;
  const auto ds = divisors(fp.order());
  for (auto k : ds) {
    for (auto l : ds) {
      const auto g = static_cast<std::uint32_t>(gcd(k, l));
      const auto target = Monomial::product(fp.q(), 1 + g);
      const auto got = gcd_derivation(fp, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(l));
      t.expect(got && *got == target, [&] { return std::to_string(k) + "," + std::to_string(l); });
      // Conversely x1...x_{1+g} yields both products by replication.
      for (auto e : {k, l}) {
        const auto back = replicate(target, static_cast<std::uint32_t>(e / g - 1), fp);
        t.expect(back == Monomial::product(fp.q(), static_cast<std::uint32_t>(1 + e)),
                 [&] { return "back " + std::to_string(e); });
      }
    }
  }
  return t.result();
}

CheckResult gcd_condition_instances(const Context& ctx) {
  Tally t("pairwise-coprime-exponents-give-idempotent-top");
  const auto& fp = ctx.fp;
  const auto q = fp.q();
  const auto n1 = fp.order();
  const auto top = Monomial::product(q, q);
  for (std::uint32_t n = 2; n <= 3; ++n) {
    std::vector<std::uint32_t> a(n, 1);
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t lo) {
      if (i < n) {
        for (a[i] = lo; a[i] < q; ++a[i]) rec(i + 1, a[i]);
        return;
      }
      // Every (n-1)-subset together with q-1 has gcd 1.
      for (std::uint32_t skip = 0; skip < n; ++skip) {
        std::uint64_t g = n1;
        for (std::uint32_t j = 0; j < n; ++j) {
          if (j != skip) g = gcd(g, a[j]);
        }
        if (g != 1) return;
      }
      for (std::uint32_t gamma = 0; gamma < q; ++gamma) {
        std::vector<std::uint64_t> ex(a.begin(), a.end());
        ex.push_back(gamma);
        const auto m = canonicalize(ex, fp);
        bool ok;
        if (q <= 5) {
          ok = member(top, generate({m}, fp)).value;
        } else {
          ok = derive(top, {m}, fp, 3 * q).found;
        }
        t.expect(ok, [&] { return to_string(m); });
      }
    };
    rec(0, 1);
  }
  return t.result();
}

CheckResult oracle_tables(const Context& ctx) {
  Tally t("arity-3-tables-match-brute-force-clone");
  const auto& fp = ctx.fp;
  const auto q = fp.q();
  const auto field = oracle::make_field(static_cast<int>(q));
  const auto small = all_monomials(fp, 2);
  std::vector<std::vector<Monomial>> gen_sets;
  for (std::size_t i = 0; i < small.size(); ++i) {
    gen_sets.push_back({small[i]});
    for (std::size_t j = i + 1; j < small.size(); ++j) gen_sets.push_back({small[i], small[j]});
  }
  for (const auto& gens : gen_sets) {
    std::vector<std::vector<int>> raw;
    for (const auto& g : gens) {
      const auto ex = g.exponents();
      raw.emplace_back(ex.begin(), ex.end());
    }
    const auto want = oracle::clone_tables(field, raw, 3);
    const auto c = generate(gens, fp);
    std::set<oracle::Table> got;
    for (const auto& m : member_counts(c, 3)) {
      auto ex = Monomial(q, m).exponents();
      // Every placement of the exponents into three argument slots.
      std::vector<int> slots(3, 0);
      for (std::size_t i = 0; i < ex.size(); ++i) slots[i] = static_cast<int>(ex[i]);
      std::sort(slots.begin(), slots.end());
      do {
        got.insert(oracle::monomial_table(field, slots));
      } while (std::next_permutation(slots.begin(), slots.end()));
    }
    t.expect(got == want && c.stable(), [&] { return label_of_gens(gens); });
  }
  return t.result();
}

// ---- lattice structure -------------------------------------------------------

std::vector<std::size_t> covers_of_bottom(const CloneLattice& l) {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : l.diagram.edges) {
    if (a == l.diagram.bottom) out.push_back(b);
  }
  return out;
}

std::vector<std::size_t> covered_by_top(const CloneLattice& l) {
  std::vector<std::size_t> out;
  for (const auto& [a, b] : l.diagram.edges) {
    if (b == l.diagram.top) out.push_back(a);
  }
  return out;
}

// Each clone in `cs` equals exactly one of the nodes and vice versa.
bool same_clones(const CloneLattice& l, const std::vector<std::size_t>& nodes,
                 const std::vector<Clone>& cs) {
  if (nodes.size() != cs.size()) return false;
  for (const auto& c : cs) {
    std::size_t hits = 0;
    for (auto i : nodes) hits += members_equal(c, l.diagram.nodes[i]);
    if (hits != 1) return false;
  }
  return true;
}

CheckResult atoms_match(const Context& ctx) {
  Tally t("atoms-match-enumeration");
  const auto& l = *ctx.lattice;
  std::vector<Clone> as;
  for (const auto& a : atoms(ctx.fp)) as.push_back(at_cap(a, l.cap));
  t.expect(same_clones(l, covers_of_bottom(l), as), [&] { return "atoms"; });
  return t.result();
}

CheckResult coatoms_match(const Context& ctx) {
  Tally t("coatoms-match-enumeration");
  const auto& l = *ctx.lattice;
  std::vector<Clone> cs;
  for (const auto& d : coatoms(ctx.fp)) {
    cs.push_back(coatom_clone(d, ctx.fp, CapPolicy::with_cap(ctx.fp, l.cap)));
  }
  std::vector<Clone> mat;
  for (const auto& c : cs) {
    mat.emplace_back(c.field(), c.generators(), c.cap(), c.stable(), c.member_bits(), c.support());
  }
  t.expect(same_clones(l, covered_by_top(l), mat), [&] { return "coatoms"; });
  return t.result();
}

CheckResult coatom_count(const Context& ctx) {
  Tally t("coatom-count");
  const auto l = ctx.fp.primes().size();
  t.expect(coatoms(ctx.fp).size() == (std::size_t{1} << l) - 1 + l, [&] { return "count"; });
  return t.result();
}

CheckResult coatoms_incomparable(const Context& ctx) {
  Tally t("product-coatoms-incomparable");
  const auto& fp = ctx.fp;
  const auto cs = coatoms(fp);
  const auto probes = all_monomials(fp, 3);
  for (const auto& a : cs) {
    if (a.kind != CoatomDescriptor::Kind::k_d) continue;
    for (const auto& b : cs) {
      if (b.kind != CoatomDescriptor::Kind::k_d || a.d == b.d) continue;
      // A witness in a but not in b shows a is not below b.
      bool found = false;
      for (const auto& m : probes) {
        if (coatom_member(m, a.d, fp) && !coatom_member(m, b.d, fp)) {
          found = true;
          break;
        }
      }
      t.expect(found, [&] { return to_string(a, fp) + " vs " + to_string(b, fp); });
    }
  }
  return t.result();
}

template <class Node, class Leq>
void check_covers(Tally& t, const HasseDiagram<Node>& d, Leq leq) {
  const auto n = d.nodes.size();
  std::set<Edge> edges(d.edges.begin(), d.edges.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool cover = i != j && leq(i, j);
      for (std::size_t k = 0; cover && k < n; ++k) {
        if (k != i && k != j && leq(i, k) && leq(k, j)) cover = false;
      }
      t.expect(cover == (edges.count({i, j}) > 0),
               [&] { return std::to_string(i) + "->" + std::to_string(j); });
    }
  }
}

CheckResult hasse_covers(const Context& ctx) {
  Tally t("hasse-edges-are-covers");
  const auto& d = ctx.lattice->diagram;
  check_covers(t, d, [&](std::size_t i, std::size_t j) { return subset(d.nodes[i], d.nodes[j]).value; });
  return t.result();
}

CheckResult idempotent_contains_atom(const Context& ctx) {
  Tally t("idempotent-clones-contain-x1x2^(q-1)");
  const auto l = idempotent_interval(ctx.fp);
  const auto q = ctx.fp.q();
  const auto atom = mono(q, {{1, 1}, {q - 1, 1}});
  const auto top = congruence_clone(ctx.fp.order(), ctx.fp);
  for (std::size_t i = 0; i < l.diagram.nodes.size(); ++i) {
    const auto& c = l.diagram.nodes[i];
    t.expect(subset(c, top).value, [&] { return label_of(c) + " not idempotent"; });
    if (i == l.diagram.bottom) continue;
    t.expect(member(atom, c).value, [&] { return label_of(c); });
  }
  return t.result();
}

CheckResult single_generators(const Context& ctx) {
  Tally t("idempotent-pair-has-single-generator");
  const auto& fp = ctx.fp;
  std::vector<Monomial> ids;
  for (const auto& m : all_monomials(fp, 3)) {
    if (is_idempotent(m, fp)) ids.push_back(m);
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i; j < ids.size(); ++j) {
      const auto s = single_generator(ids[i], ids[j], fp);
      std::vector<Monomial> pair{ids[i], ids[j]};
      const auto cap = CapPolicy::for_generators(fp, {s});
      const auto a = generate(pair, fp, cap);
      const auto b = generate({s}, fp, cap);
      t.expect(members_equal(a, b) && a.stable() && b.stable(),
               [&] { return to_string(ids[i]) + ", " + to_string(ids[j]); });
    }
  }
  return t.result();
}

// ---- semi-affine image -------------------------------------------------------

struct PhiData {
  std::vector<LinearClone> phis;
  SemiaffineLattice lin;
};

PhiData phi_data(const Context& ctx) {
  const auto n = ctx.fp.order();
  return {phi_all(*ctx.lattice), enumerate_semiaffine_lattice(n)};
}

void phi_checks(const Context& ctx, std::vector<CheckResult>& out) {
  const auto pd = phi_data(ctx);
  const auto& nodes = ctx.lattice->diagram.nodes;
  {
    Tally t("phi-affine-monotone");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!subset(nodes[i], nodes[j]).value) continue;
        t.expect(subset(pd.phis[i], pd.phis[j]),
                 [&] { return label_of(nodes[i]) + " <= " + label_of(nodes[j]); });
      }
    }
    out.push_back(t.result());
  }
  {
    Tally t("phi-affine-surjective");
    for (const auto& lc : pd.lin.diagram.nodes) {
      bool hit = false;
      for (const auto& p : pd.phis) hit = hit || equal(p, lc);
      t.expect(hit, [&] { return forms_label(lc.generators()); });
    }
    for (const auto& p : pd.phis) {
      t.expect(find_node(pd.lin, p).has_value(), [&] { return forms_label(p.generators()); });
    }
    out.push_back(t.result());
  }
  {
    Tally t("linear-forms-semi-affine");
    const auto n = ctx.fp.order();
    for (const auto& lc : pd.lin.diagram.nodes) {
      for (const auto& f : lc.members()) {
        const auto w = f.width();
        if (w > 3) continue;
        std::vector<std::uint32_t> u(w), v(w), s(w), zero(w, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == 2 * w) {
            for (std::size_t k = 0; k < w; ++k) s[k] = (u[k] + v[k]) % n;
            t.expect((f.evaluate(s) + f.evaluate(zero)) % n == (f.evaluate(u) + f.evaluate(v)) % n,
                     [&] { return to_string(f); });
            return;
          }
          auto& x = i < w ? u[i] : v[i - w];
          for (x = 0; x < n; ++x) rec(i + 1);
        };
        rec(0);
      }
    }
    out.push_back(t.result());
  }
  {
    Tally t("phi-affine-fibers-partition");
    std::vector<int> owner(nodes.size(), 0);
    for (const auto& lc : pd.lin.diagram.nodes) {
      const auto f = fiber(lc, *ctx.lattice, pd.phis);
      t.expect(!f.nodes.empty(), [&] { return "empty fiber " + forms_label(lc.generators()); });
      for (auto i : f.nodes) ++owner[i];
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      t.expect(owner[i] == 1, [&] { return label_of(nodes[i]); });
    }
    // The fiber over the projections is {<x1>, <x1 x2^{q-1}>}.
    const auto q = ctx.fp.q();
    const auto proj = linear_closure({}, ctx.fp.order());
    const auto f = fiber(proj, *ctx.lattice, pd.phis);
    const auto delta = generate({Monomial::variable(q)}, ctx.fp);
    const auto atom = generate({mono(q, {{1, 1}, {q - 1, 1}})}, ctx.fp);
    std::vector<Clone> want{delta, atom};
    t.expect(same_clones(*ctx.lattice, f.nodes, want), [&] { return "projection fiber"; });
    out.push_back(t.result());
  }
}

// ---- minor sets --------------------------------------------------------------

void minor_checks(const Context& ctx, std::vector<CheckResult>& out) {
  const auto& nodes = ctx.lattice->diagram.nodes;
  std::vector<QMinorSet> sets;
  for (const auto& c : nodes) sets.push_back(phi_minor(c));
  {
    Tally t("phi-minor-valid");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      t.expect(sets[i].valid(), [&] { return label_of(nodes[i]); });
    }
    out.push_back(t.result());
  }
  {
    Tally t("phi-minor-order-embedding");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const bool a = subset(nodes[i], nodes[j]).value;
        const bool b = sets[i].bits().subset_of(sets[j].bits());
        t.expect(a == b, [&] { return label_of(nodes[i]) + " vs " + label_of(nodes[j]); });
      }
    }
    out.push_back(t.result());
  }
  {
    Tally t("minor-decomposition-embedding");
    const auto step = ctx.fp.order();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j) {
        const auto e = embedding_check(sets[i], sets[j]);
        t.expect(e.agree(), [&] { return label_of(nodes[i]) + " vs " + label_of(nodes[j]); });
      }
      Point b(step, 0);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == step) {
          t.expect(downward_closed(minor_M(b, sets[i])), [&] { return label_of(nodes[i]); });
          return;
        }
        for (b[k] = 0; b[k] < step; ++b[k]) rec(k + 1);
        b[k] = 0;
      };
      rec(0);
    }
    out.push_back(t.result());
  }
}

CheckResult antichain_sample(const Context& ctx) {
  Tally t("random-clones-antichain");
  const auto& fp = ctx.fp;
  std::mt19937 rng(12345);
  const auto pool = all_monomials(fp, 3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const auto cap = CapPolicy::with_cap(fp, 2 * fp.order() + 3);
  std::vector<Clone> cs;
  while (cs.size() < 50) {
    std::vector<Monomial> gens{pool[pick(rng)]};
    if (rng() % 2) gens.push_back(pool[pick(rng)]);
    cs.push_back(generate(gens, fp, cap));
  }
  std::vector<std::vector<bool>> leq(cs.size(), std::vector<bool>(cs.size()));
  std::vector<QMinorSet> sets;
  for (const auto& c : cs) sets.push_back(phi_minor(c));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < cs.size(); ++j) {
      leq[i][j] = subset(cs[i], cs[j]).value;
      t.expect(leq[i][j] == sets[i].bits().subset_of(sets[j].bits()), [&] { return "embedding"; });
    }
  }
  // Equal clones collapse to one element before measuring antichains.
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool dup = false;
    for (auto r : reps) dup = dup || (leq[i][r] && leq[r][i]);
    if (!dup) reps.push_back(i);
  }
  std::vector<std::vector<bool>> sub(reps.size(), std::vector<bool>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) sub[i][j] = leq[reps[i]][reps[j]];
  }
  const auto width = largest_antichain(sub);
  t.expect(width >= 1 && width <= reps.size(), [&] { return "antichain"; });
  auto r = t.result();
  r.detail += "; " + std::to_string(reps.size()) + " distinct clones, largest antichain " +
              std::to_string(width);
  return r;
}

}  // namespace

std::vector<CheckResult> run_checks(const FieldParam& fp) {
  Context ctx{fp, {}, std::nullopt};
  const auto q = fp.q();
  std::vector<CheckResult> out;
  out.push_back(reduce_idempotent(ctx));
  out.push_back(identify_width(ctx));
  out.push_back(equivalent_exponents(ctx));
  if (q <= 13) out.push_back(evaluate_matches_field(ctx));
  if (q <= 5) out.push_back(identify_evaluate(ctx));

  if (q <= 5) {
    const std::uint32_t w = q <= 4 ? 3 : 2;
    for (const auto& m : all_monomials(fp, w)) {
      ctx.samples.push_back(generate({m}, fp, std::nullopt, {.saturate = false}));
    }
    out.push_back(plain_closure_agrees(ctx));
    out.push_back(closure_idempotent(ctx));
    out.push_back(closure_monotone(ctx));
    out.push_back(zero_sum_cut(ctx));
    out.push_back(saturation(ctx));
    out.push_back(replication(ctx));
    out.push_back(two_ones(ctx));
    out.push_back(two_units(ctx));
    out.push_back(power_with_top(ctx));
    out.push_back(product_congruence(ctx));
    out.push_back(idempotent_top(ctx));
  }
  if (q >= 3) out.push_back(gcd_products(ctx));
  if (q >= 3 && q <= 7) out.push_back(gcd_condition_instances(ctx));
  if (q <= 4) out.push_back(oracle_tables(ctx));

  if (q >= 3) {
    out.push_back(coatom_count(ctx));
    out.push_back(coatoms_incomparable(ctx));
  }
  if (q <= 5) {
    out.push_back(idempotent_contains_atom(ctx));
    out.push_back(single_generators(ctx));
  }
  if (q >= 3 && q <= 4) {
    ctx.lattice = enumerate_lattice(fp);
    out.push_back(hasse_covers(ctx));
    out.push_back(atoms_match(ctx));
    out.push_back(coatoms_match(ctx));
    phi_checks(ctx, out);
    minor_checks(ctx, out);
  }
  if (q == 5) out.push_back(antichain_sample(ctx));
  return out;
}

}  // namespace monoclone
