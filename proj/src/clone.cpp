#include "monoclone/clone.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "monoclone/error.hpp"

namespace monoclone {

namespace {

// Characterized clones are only expanded into a member set when the box is
// at most this large; beyond that the predicate alone answers queries.
constexpr std::size_t kMaterializeCells = std::size_t{1} << 22;

void require_same_field(const FieldParam& a, const FieldParam& b) {
  if (!(a == b)) {
    throw DomainError("clones over F_" + std::to_string(a.q()) + " and F_" +
                      std::to_string(b.q()) + " cannot be compared");
  }
}

std::uint32_t max_count(const std::vector<Monomial>& ms) {
  std::uint32_t m = 0;
  for (const auto& g : ms) m = std::max(m, g.max_count());
  return m;
}

// Residue arithmetic tables, 1-based residues stored at index r-1.
struct ResidueTables {
  std::uint32_t n;
  std::vector<std::uint32_t> add;  // n*n, reduce(r1 + r2) - 1
  std::vector<std::uint32_t> mul;  // n*n, reduce(r1 * r2) - 1

  explicit ResidueTables(const FieldParam& fp) : n(fp.order()) {
    add.resize(std::size_t{n} * n);
    mul.resize(std::size_t{n} * n);
    for (std::uint32_t a = 1; a <= n; ++a) {
      for (std::uint32_t b = 1; b <= n; ++b) {
        add[(a - 1) * n + (b - 1)] = reduce_exponent(a + b, fp) - 1;
        mul[(a - 1) * n + (b - 1)] = reduce_exponent(std::uint64_t{a} * b, fp) - 1;
      }
    }
  }
};

using Counts = std::vector<std::uint32_t>;

// Writes into out the result of substituting g into one slot of residue
// index ri of c.
void substitute_counts(const ResidueTables& t, const Counts& c, std::uint32_t ri,
                       const Counts& g, Counts& out) {
  std::copy(c.begin(), c.end(), out.begin());
  --out[ri];
  for (std::uint32_t s = 0; s < t.n; ++s) {
    if (g[s]) out[t.mul[ri * t.n + s]] += g[s];
  }
}

class BoxClosure {
 public:
  BoxClosure(const Box& box, const FieldParam& fp, const ClosureOptions& opt)
      : box_(box), opt_(opt), t_(fp), bits_(box.size()), stride_(t_.n, 0),
        in_support_(t_.n, false) {
    std::size_t st = 1;
    const auto& sup = box.support();
    for (std::size_t i = sup.size(); i-- > 0;) {
      stride_[sup[i] - 1] = st;
      in_support_[sup[i] - 1] = true;
      st *= std::size_t{box.cap()} + 1;
    }
  }

  // c is scratch space and may be modified.
  void add(Counts& c) {
    if (full_) return;
    const auto n = t_.n;
    std::size_t idx = 0;
    std::uint32_t w = 0;
    for (std::uint32_t r = 0; r < n; ++r) {
      // Lowering by q-1 is identifying q-1 equal exponents into another
      // variable; the monomial has more than 2(q-1) variables here, so one
      // is always left over.
      while (c[r] > box_.cap()) c[r] -= n;
      if (c[r] && !in_support_[r]) {
        throw PreconditionError("closure left its residue support");
      }
      idx += c[r] * stride_[r];
      w += c[r];
    }
    if (!bits_.insert(idx)) return;
    queue_.push_back(idx);
    if (c[0] == 2 && w == 2) {
      fill();
      return;
    }
    if (opt_.saturate && c[n - 1] >= 1 && w >= 2) {
      const bool rest_empty = w == c[n - 1];
      const auto base = idx - c[n - 1] * stride_[n - 1];
      for (std::uint32_t k = rest_empty ? 1 : 0; k <= box_.cap(); ++k) {
        const auto j = base + k * stride_[n - 1];
        if (bits_.insert(j)) queue_.push_back(j);
      }
    }
  }

  void run(const std::vector<Counts>& gens) {
    const auto n = t_.n;
    Counts c(n), out(n);
    std::vector<Counts> done;
    while (!queue_.empty() && !full_) {
      const auto idx = queue_.front();
      queue_.pop_front();
      decode(idx, c);
      std::uint32_t w = 0;
      for (auto x : c) w += x;
      if (w >= 2) {
        for (std::uint32_t a = 0; a < n; ++a) {
          if (!c[a]) continue;
          for (std::uint32_t b = a; b < n; ++b) {
            if (!c[b] || (a == b && c[a] < 2)) continue;
            out = c;
            --out[a];
            --out[b];
            ++out[t_.add[a * n + b]];
            add(out);
          }
        }
      }
      for (std::uint32_t r = 0; r < n; ++r) {
        if (!c[r]) continue;
        for (const auto& g : gens) {
          substitute_counts(t_, c, r, g, out);
          add(out);
        }
      }
      if (opt_.substitute_members) {
        done.push_back(c);
        for (const auto& d : done) {
          for (std::uint32_t r = 0; r < n; ++r) {
            if (c[r]) {
              substitute_counts(t_, c, r, d, out);
              add(out);
            }
            if (d[r]) {
              substitute_counts(t_, d, r, c, out);
              add(out);
            }
          }
        }
      }
    }
  }

  void decode(std::size_t idx, Counts& c) const {
    const std::size_t base = std::size_t{box_.cap()} + 1;
    std::fill(c.begin(), c.end(), 0);
    const auto& sup = box_.support();
    for (std::size_t i = sup.size(); i-- > 0;) {
      c[sup[i] - 1] = static_cast<std::uint32_t>(idx % base);
      idx /= base;
    }
  }

  BitSet take() { return std::move(bits_); }

  // Marks every member of s without queueing it.
  void absorb(const BitSet& s) {
    bits_ |= s;
    if (bits_.test(full_index())) fill();
  }

  // Applies the generators to every member of s.
  void expand(const BitSet& s, const std::vector<Counts>& gens) {
    const auto n = t_.n;
    Counts c(n), out(n);
    s.for_each([&](std::size_t idx) {
      decode(idx, c);
      for (std::uint32_t r = 0; r < n; ++r) {
        if (!c[r]) continue;
        for (const auto& g : gens) {
          substitute_counts(t_, c, r, g, out);
          add(out);
        }
      }
    });
  }

 private:
  std::size_t full_index() const {
    return in_support_[0] && box_.cap() >= 2 ? 2 * stride_[0] : 0;
  }

  // x1x2 generates every monomial.
  void fill() {
    for (std::size_t i = 1; i < box_.size(); ++i) bits_.set(i);
    full_ = true;
    queue_.clear();
  }

  const Box& box_;
  ClosureOptions opt_;
  ResidueTables t_;
  BitSet bits_;
  std::vector<std::size_t> stride_;
  std::vector<bool> in_support_;
  std::deque<std::size_t> queue_;
  bool full_ = false;
};

BitSet materialize(const Box& box, const Characterization& ch) {
  BitSet bits(box.size());
  for (std::size_t i = 1; i < box.size(); ++i) {
    if (ch.contains(box.monomial(i))) bits.set(i);
  }
  return bits;
}

// Closure at the policy's cap and in the enlarged universes of the
// stabilization rounds, each restricted back to the base universe. Members
// near the cap can need room above it to be derived, so the largest
// computation is returned; it is stable when the last two rounds agree.
std::pair<BitSet, bool> stabilized(const std::vector<Monomial>& gens,
                                   const FieldParam& fp, const CapPolicy& cap,
                                   const ClosureOptions& opt,
                                   const std::vector<const Clone*>& seeds) {
  auto support = residue_support(fp, gens);
  const Box base(fp.q(), cap.per_residue_cap, support);
  auto seeded = [&](const Box& box) {
    BitSet s(box.size());
    for (const Clone* c : seeds) s |= box.transfer(c->member_bits(), c->box());
    return s;
  };
  BitSet s0 = seeded(base);
  BitSet bits = close_in_box(base, fp, gens, &s0, opt);
  bool stable = false;
  for (std::uint32_t i = 1; i <= cap.stabilization_rounds; ++i) {
    const auto bigger = cap.per_residue_cap + i * fp.order();
    if (!Box::fits(support.size(), bigger)) {
      stable = false;
      break;
    }
    const Box box(fp.q(), bigger, support);
    BitSet s = seeded(box);
    auto restricted = base.transfer(close_in_box(box, fp, gens, &s, opt), box);
    stable = restricted == bits;
    bits = std::move(restricted);
  }
  return {std::move(bits), stable};
}

Clone generate_seeded(const std::vector<Monomial>& generators,
                      const FieldParam& fp, std::optional<CapPolicy> cap,
                      const ClosureOptions& opt,
                      const std::vector<const Clone*>& seeds) {
  if (generators.empty()) {
    throw PreconditionError("generate: the generator set is empty");
  }
  for (const auto& g : generators) {
    if (g.q() != fp.q()) {
      throw DomainError("generator " + to_string(g) + " is not over F_" +
                        std::to_string(fp.q()));
    }
  }
  const auto policy = cap ? *cap : CapPolicy::for_generators(fp, generators);
  if (policy.per_residue_cap < 2 * fp.order()) {
    throw PreconditionError("cap " + std::to_string(policy.per_residue_cap) +
                            " is below 2(q-1)");
  }
  if (max_count(generators) > policy.per_residue_cap) {
    throw CapError("cap " + std::to_string(policy.per_residue_cap) +
                   " is too small to hold the generators");
  }
  std::vector<Monomial> gens = generators;
  std::sort(gens.begin(), gens.end(), width_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  auto [bits, stable] = stabilized(gens, fp, policy, opt, seeds);
  auto support = residue_support(fp, gens);
  return Clone(fp, std::move(gens), policy, stable, std::move(bits),
               std::move(support));
}

}  // namespace

CapPolicy CapPolicy::for_generators(const FieldParam& fp,
                                    const std::vector<Monomial>& generators) {
  return {2 * fp.order() + max_count(generators), 2};
}

CapPolicy CapPolicy::with_cap(const FieldParam& fp, std::uint32_t cap,
                              std::uint32_t rounds) {
  if (cap < 2 * fp.order()) {
    throw PreconditionError("cap " + std::to_string(cap) +
                            " is below 2(q-1) = " +
                            std::to_string(2 * fp.order()));
  }
  return {cap, rounds};
}

BitSet close_in_box(const Box& box, const FieldParam& fp,
                    const std::vector<Monomial>& generators, const BitSet* seeds,
                    const ClosureOptions& options) {
  if (box.q() != fp.q()) throw DomainError("universe built for another q");
  BoxClosure cl(box, fp, options);
  std::vector<Counts> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(g.counts());
  Counts scratch = Monomial::variable(fp.q()).counts();
  cl.add(scratch);
  for (const auto& g : gens) {
    scratch = g;
    cl.add(scratch);
  }
  if (seeds) {
    seeds->for_each([&](std::size_t i) {
      cl.decode(i, scratch);
      cl.add(scratch);
    });
  }
  cl.run(gens);
  return cl.take();
}

std::vector<std::uint32_t> residue_support(const FieldParam& fp,
                                           const std::vector<Monomial>& generators) {
  const auto n = fp.order();
  std::vector<bool> in(n + 1, false), gen(n + 1, false);
  std::vector<std::uint32_t> stack;
  for (const auto& g : generators) {
    if (g.width() < 2) {
      // A unary generator only ever acts by multiplication.
      for (auto r : g.exponents()) gen[r] = true;
      continue;
    }
    for (auto r : g.exponents()) {
      gen[r] = true;
      if (!in[r]) {
        in[r] = true;
        stack.push_back(r);
      }
    }
  }
  while (!stack.empty()) {
    const auto a = stack.back();
    stack.pop_back();
    auto visit = [&](std::uint32_t r) {
      if (!in[r]) {
        in[r] = true;
        stack.push_back(r);
      }
    };
    for (std::uint32_t s = 1; s <= n; ++s) {
      if (in[s]) visit(reduce_exponent(a + s, fp));
      if (gen[s]) visit(reduce_exponent(std::uint64_t{a} * s, fp));
    }
  }
  // Width-1 members are x1 and powers of x1 reached through unary
  // generators: 1 multiplied by generator residues.
  std::vector<bool> unary(n + 1, false);
  unary[1] = true;
  stack.assign(1, 1u);
  while (!stack.empty()) {
    const auto a = stack.back();
    stack.pop_back();
    for (std::uint32_t s = 1; s <= n; ++s) {
      if (!gen[s]) continue;
      const auto r = reduce_exponent(std::uint64_t{a} * s, fp);
      if (!unary[r]) {
        unary[r] = true;
        stack.push_back(r);
      }
    }
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 1; r <= n; ++r) {
    if (in[r] || unary[r]) out.push_back(r);
  }
  return out;
}

BitSet join_in_box(const Box& box, const FieldParam& fp, const BitSet& a,
                   const std::vector<Monomial>& ga, const BitSet& b,
                   const std::vector<Monomial>& gb) {
  auto counts_of = [](const std::vector<Monomial>& ms) {
    std::vector<Counts> out;
    for (const auto& m : ms) out.push_back(m.counts());
    return out;
  };
  const auto ca = counts_of(ga);
  const auto cb = counts_of(gb);
  BoxClosure cl(box, fp, {});
  cl.absorb(a);
  cl.absorb(b);
  BitSet only_a = a;
  only_a.subtract(b);
  BitSet only_b = b;
  only_b.subtract(a);
  cl.expand(only_a, cb);
  cl.expand(only_b, ca);
  auto all = ca;
  all.insert(all.end(), cb.begin(), cb.end());
  cl.run(all);
  return cl.take();
}

Clone::Clone(FieldParam fp, std::vector<Monomial> generators, CapPolicy cap,
             bool stable, std::optional<BitSet> members,
             std::vector<std::uint32_t> support,
             std::optional<Characterization> characterization,
             bool defined_by_generators)
    : fp_(std::move(fp)),
      generators_(std::move(generators)),
      cap_(cap),
      stable_(stable),
      members_(std::move(members)),
      support_(std::move(support)),
      characterization_(std::move(characterization)),
      defined_by_generators_(defined_by_generators) {}

Box Clone::box() const {
  if (!members_) {
    throw CapError("clone is only characterized by a predicate; its member "
                   "set is too large to materialize");
  }
  return Box(fp_.q(), cap_.per_residue_cap, support_);
}

const BitSet& Clone::member_bits() const {
  if (!members_) box();
  return *members_;
}

std::vector<Monomial> Clone::members() const {
  const auto b = box();
  std::vector<Monomial> out;
  members_->for_each([&](std::size_t i) { out.push_back(b.monomial(i)); });
  return out;
}

std::size_t Clone::size() const { return member_bits().count(); }

Clone generate(const std::vector<Monomial>& generators, const FieldParam& fp,
               std::optional<CapPolicy> cap, const ClosureOptions& options) {
  return generate_seeded(generators, fp, cap, options, {});
}

Clone at_cap(const Clone& c, std::uint32_t cap) {
  CapPolicy policy = CapPolicy::with_cap(c.field(), cap,
                                         c.cap().stabilization_rounds);
  if (c.characterization()) {
    return characterized_clone(c.field(), c.generators(), *c.characterization(),
                               policy, c.defined_by_generators());
  }
  auto r = generate(c.generators(), c.field(), policy);
  if (c.defined_by_generators()) return r;
  return Clone(r.field(), r.generators(), r.cap(), r.stable() && c.stable(),
               r.member_bits(), r.support(), std::nullopt, false);
}

Answer member(const Monomial& m, const Clone& c) {
  if (m.q() != c.field().q()) {
    throw DomainError(to_string(m) + " is over F_" + std::to_string(m.q()) +
                      ", the clone over F_" + std::to_string(c.field().q()));
  }
  if (c.characterization()) {
    return {c.characterization()->contains(m), Confidence::exact};
  }
  const auto box = c.box();
  if (m.max_count() > box.cap()) {
    throw CapError(to_string(m) + " exceeds the cap " +
                   std::to_string(box.cap()) +
                   "; regenerate the clone with a larger cap");
  }
  // Residues outside the support never occur in members.
  const bool in = box.contains(m.counts()) && c.member_bits().test(box.index(m.counts()));
  return {in, c.stable() ? Confidence::exact : Confidence::cap_limited};
}

namespace {

Confidence both(bool a, bool b) {
  return a && b ? Confidence::exact : Confidence::cap_limited;
}

struct Aligned {
  Clone a, b;
  Box box;
  BitSet bits_a, bits_b;
};

// Both clones at the larger cap, re-indexed into one box over the union of
// their supports.
Aligned aligned(const Clone& c1, const Clone& c2) {
  const auto cap = std::max(c1.cap().per_residue_cap, c2.cap().per_residue_cap);
  Clone a = c1.cap().per_residue_cap == cap ? c1 : at_cap(c1, cap);
  Clone b = c2.cap().per_residue_cap == cap ? c2 : at_cap(c2, cap);
  std::vector<std::uint32_t> support;
  std::set_union(a.support().begin(), a.support().end(), b.support().begin(),
                 b.support().end(), std::back_inserter(support));
  Box box(a.field().q(), cap, support);
  auto ba = box.transfer(a.member_bits(), a.box());
  auto bb = box.transfer(b.member_bits(), b.box());
  return {std::move(a), std::move(b), std::move(box), std::move(ba), std::move(bb)};
}

}  // namespace

Answer subset(const Clone& c1, const Clone& c2) {
  require_same_field(c1.field(), c2.field());
  if (c2.characterization() || !c1.materialized()) {
    // A clone lies inside another exactly when its generators do.
    bool all = true;
    bool exact = c1.defined_by_generators();
    for (const auto& g : c1.generators()) {
      const auto a = member(g, c2);
      exact = exact && a.exact();
      if (!a.value) {
        all = false;
        break;
      }
    }
    return {all, both(exact, true)};
  }
  const auto al = aligned(c1, c2);
  return {al.bits_a.subset_of(al.bits_b), both(al.a.stable(), al.b.stable())};
}

Answer equal(const Clone& c1, const Clone& c2) {
  const auto ab = subset(c1, c2);
  const auto ba = subset(c2, c1);
  return {ab.value && ba.value, both(ab.exact(), ba.exact())};
}

bool members_equal(const Clone& c1, const Clone& c2) {
  require_same_field(c1.field(), c2.field());
  const auto al = aligned(c1, c2);
  return al.bits_a == al.bits_b;
}

Clone join(const Clone& c1, const Clone& c2, std::optional<CapPolicy> cap) {
  require_same_field(c1.field(), c2.field());
  auto gens = c1.generators();
  gens.insert(gens.end(), c2.generators().begin(), c2.generators().end());
  CapPolicy policy;
  if (cap) {
    policy = *cap;
  } else {
    policy = CapPolicy::for_generators(c1.field(), gens);
    policy.per_residue_cap = std::max({policy.per_residue_cap,
                                       c1.cap().per_residue_cap,
                                       c2.cap().per_residue_cap});
    policy.stabilization_rounds =
        std::max(c1.cap().stabilization_rounds, c2.cap().stabilization_rounds);
  }
  // Members of the operands are members of the join; starting from them
  // saves most of the work.
  std::vector<const Clone*> seeds;
  for (const Clone* c : {&c1, &c2}) {
    if (c->materialized() && !c->characterization() &&
        c->cap().per_residue_cap <= policy.per_residue_cap) {
      seeds.push_back(c);
    }
  }
  return generate_seeded(gens, c1.field(), policy, {}, seeds);
}

Clone meet(const Clone& c1, const Clone& c2) {
  require_same_field(c1.field(), c2.field());
  auto al = aligned(c1, c2);
  const auto& a = al.a;
  const auto& b = al.b;
  BitSet bits = std::move(al.bits_a);
  bits &= al.bits_b;
  auto gens = find_generators(bits, al.box, a.field());
  // The meet's own support may be smaller than the union.
  auto support = residue_support(a.field(), gens);
  const Box own(a.field().q(), a.cap().per_residue_cap, support);
  bits = own.transfer(bits, al.box);
  std::optional<Characterization> ch;
  if (a.characterization() && b.characterization()) {
    ch = Characterization{
        "(" + a.characterization()->description + ") and (" +
            b.characterization()->description + ")",
        [p = a.characterization()->contains, r = b.characterization()->contains](
            const Monomial& m) { return p(m) && r(m); }};
  }
  return Clone(a.field(), std::move(gens), a.cap(), a.stable() && b.stable(),
               std::move(bits), std::move(support), std::move(ch), false);
}

std::vector<Monomial> find_generators(const BitSet& members, const Box& box,
                                      const FieldParam& fp) {
  std::vector<Monomial> candidates;
  members.for_each([&](std::size_t i) { candidates.push_back(box.monomial(i)); });
  std::sort(candidates.begin(), candidates.end(), width_less);
  std::vector<Monomial> gens;
  BitSet cur = close_in_box(box, fp, {});
  for (const auto& m : candidates) {
    if (cur == members) break;
    if (cur.test(box.index(m.counts()))) continue;
    gens.push_back(m);
    cur = close_in_box(box, fp, gens, &cur);
  }
  if (!(cur == members)) {
    throw PreconditionError("find_generators: member set is not closed");
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    auto fewer = gens;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (close_in_box(box, fp, fewer) == members) gens = std::move(fewer);
  }
  if (gens.empty()) gens.push_back(Monomial::variable(fp.q()));
  return gens;
}

bool congruence_clone_member(const Monomial& m, std::uint32_t b,
                             const FieldParam& fp) {
  if (b == 0 || fp.order() % b != 0) {
    throw DomainError(std::to_string(b) + " does not divide q-1 = " +
                      std::to_string(fp.order()));
  }
  return (m.degree() + b - 1) % b == 0;
}

Clone congruence_clone(std::uint32_t b, const FieldParam& fp,
                       std::optional<CapPolicy> cap) {
  congruence_clone_member(Monomial::variable(fp.q()), b, fp);
  Characterization ch{
      "sum of exponents = 1 mod " + std::to_string(b),
      [b, fp](const Monomial& m) { return congruence_clone_member(m, b, fp); }};
  return characterized_clone(fp, {Monomial::product(fp.q(), b + 1)},
                             std::move(ch), cap);
}

Clone characterized_clone(const FieldParam& fp, std::vector<Monomial> generators,
                          Characterization characterization,
                          std::optional<CapPolicy> cap, bool generators_complete) {
  const auto policy = cap ? *cap : CapPolicy::for_generators(fp, generators);
  std::optional<BitSet> bits;
  if (Box::fits(fp.order(), policy.per_residue_cap)) {
    const Box box(fp.q(), policy.per_residue_cap);
    if (box.size() <= kMaterializeCells) bits = materialize(box, characterization);
  }
  std::sort(generators.begin(), generators.end(), width_less);
  return Clone(fp, std::move(generators), policy, true, std::move(bits),
               Box::full_support(fp.q()), std::move(characterization),
               generators_complete);
}

DerivationResult derive(const Monomial& target,
                        const std::vector<Monomial>& generators,
                        const FieldParam& fp, std::uint32_t max_width,
                        std::size_t max_states) {
  const ResidueTables t(fp);
  std::unordered_set<Monomial, MonomialHash> seen;
  std::deque<Monomial> queue;
  DerivationResult res;
  auto push = [&](const Monomial& m) {
    if (m.width() > max_width || seen.size() >= max_states) return;
    if (seen.insert(m).second) queue.push_back(m);
    if (m == target) res.found = true;
  };
  push(Monomial::variable(fp.q()));
  for (const auto& g : generators) push(g);
  Counts out(t.n);
  while (!queue.empty() && !res.found) {
    const auto m = queue.front();
    queue.pop_front();
    const auto& c = m.counts();
    for (std::uint32_t a = 0; a < t.n && !res.found; ++a) {
      if (!c[a]) continue;
      for (std::uint32_t b = a; b < t.n && m.width() >= 2; ++b) {
        if (!c[b] || (a == b && c[a] < 2)) continue;
        push(identify(m, a + 1, b + 1, fp));
      }
      for (const auto& g : generators) {
        if (m.width() - 1 + g.width() > max_width) continue;
        substitute_counts(t, c, a, g.counts(), out);
        push(Monomial(fp.q(), out));
      }
    }
  }
  res.states = seen.size();
  return res;
}

}  // namespace monoclone
