#include "monoclone/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "monoclone/error.hpp"

namespace monoclone {

namespace {

bool label_less(const std::vector<Monomial>& a, const std::vector<Monomial>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      width_less);
}

std::vector<Monomial> normalized(std::vector<Monomial> label, std::uint32_t q) {
  std::sort(label.begin(), label.end(), width_less);
  label.erase(std::unique(label.begin(), label.end()), label.end());
  const auto x1 = Monomial::variable(q);
  if (label.size() > 1) std::erase(label, x1);
  return label;
}

// Join/meet closure on bit sets over one full-support universe. Closures
// run in a working universe 2(q-1) above the cap so that members near the
// cap are found; nodes are told apart by their members up to the cap.
class Enumerator {
 public:
  Enumerator(const FieldParam& fp, std::uint32_t cap, std::uint32_t rounds)
      : fp_(fp),
        policy_(CapPolicy::with_cap(fp, cap, rounds)),
        work_(fp.q(), cap + 2 * fp.order()),
        view_(fp.q(), cap) {}

  void seed(const Monomial& m) {
    add(close_in_box(work_, fp_, {m}), {m}, false);
  }

  void close() {
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        // Comparable pairs add nothing new.
        if (nodes_[i].key.subset_of(nodes_[j].key) ||
            nodes_[j].key.subset_of(nodes_[i].key)) {
          continue;
        }
        auto label = nodes_[i].label;
        label.insert(label.end(), nodes_[j].label.begin(), nodes_[j].label.end());
        add(join_in_box(work_, fp_, nodes_[i].work, nodes_[i].label,
                        nodes_[j].work, nodes_[j].label),
            label, false);
        BitSet both = nodes_[i].work;
        both &= nodes_[j].work;
        add(std::move(both), {}, true);
      }
    }
  }

  CloneLattice finish(std::uint32_t width_bound) {
    const auto n = nodes_.size();
    std::vector<Clone> clones;
    std::vector<std::size_t> sizes(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto label = minimized(nodes_[i].label, nodes_[i].key);
      auto c = generate(label, fp_, policy_);
      // The node must be what its label generates with the full
      // stabilization protocol; a mismatch means the cap was too tight.
      const auto key = view_.transfer(c.member_bits(), c.box());
      const bool agrees = key == nodes_[i].key;
      clones.emplace_back(fp_, std::move(label), c.cap(), c.stable() && agrees,
                          c.member_bits(), c.support());
      sizes[i] = nodes_[i].key.count();
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (sizes[a] != sizes[b]) return sizes[a] < sizes[b];
      return label_less(clones[a].generators(), clones[b].generators());
    });
    CloneLattice out;
    for (auto i : order) out.diagram.nodes.push_back(clones[i]);
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        leq[i][j] = nodes_[order[i]].key.subset_of(nodes_[order[j]].key);
      }
    }
    out.diagram.edges = covering_edges(leq);
    out.diagram.bottom = 0;
    out.diagram.top = n - 1;
    out.width_bound = width_bound;
    out.cap = policy_.per_residue_cap;
    out.complete = fp_.squarefree();
    for (const auto& c : out.diagram.nodes) out.stable = out.stable && c.stable();
    return out;
  }

 private:
  struct Node {
    BitSet work;
    BitSet key;
    std::vector<Monomial> label;
  };

  void add(BitSet work, std::vector<Monomial> label, bool needs_label) {
    auto key = view_.transfer(work, work_);
    auto it = std::find_if(nodes_.begin(), nodes_.end(),
                           [&](const Node& n) { return n.key == key; });
    if (it == nodes_.end()) {
      if (needs_label) label = find_generators(work, work_, fp_);
      nodes_.push_back({std::move(work), std::move(key),
                        normalized(std::move(label), fp_.q())});
      return;
    }
    if (needs_label) return;
    label = normalized(std::move(label), fp_.q());
    if (label_less(label, it->label)) it->label = std::move(label);
  }

  // Drops label entries that the others already generate.
  std::vector<Monomial> minimized(std::vector<Monomial> label, const BitSet& key) {
    for (std::size_t i = label.size(); i-- > 0 && label.size() > 1;) {
      auto fewer = label;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      if (view_.transfer(close_in_box(work_, fp_, fewer), work_) == key) {
        label = std::move(fewer);
      }
    }
    return label;
  }

  FieldParam fp_;
  CapPolicy policy_;
  Box work_;
  Box view_;
  std::vector<Node> nodes_;
};

std::uint32_t ipow_mod(std::uint64_t b, std::uint32_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  for (std::uint32_t i = 0; i < e; ++i) r = r * b % m;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

CloneLattice enumerate_from_seeds(const FieldParam& fp,
                                  const std::vector<Monomial>& seeds,
                                  std::uint32_t cap, std::uint32_t rounds) {
  if (seeds.empty()) throw PreconditionError("enumeration needs seeds");
  Enumerator e(fp, cap, rounds);
  std::uint32_t width = 0;
  for (const auto& m : seeds) {
    e.seed(m);
    width = std::max(width, m.width());
  }
  e.close();
  return e.finish(width);
}

CloneLattice enumerate_lattice(const FieldParam& fp,
                               const EnumerationOptions& options) {
  const auto w = options.width_bound ? options.width_bound : fp.q();
  const auto cap = options.cap ? *options.cap : 2 * fp.order() + w;
  auto out = enumerate_from_seeds(fp, all_monomials(fp, w), cap,
                                  options.stabilization_rounds);
  out.width_bound = w;
  if (!out.complete) {
    try {
      out.chain_witness = ascending_chain(fp, 3).clones;
    } catch (const Error&) {
      // The witness is informational; the flag already says "partial".
    }
  }
  return out;
}

std::optional<std::size_t> find_node(const CloneLattice& lattice,
                                     const Clone& c) {
  for (std::size_t i = 0; i < lattice.diagram.nodes.size(); ++i) {
    if (members_equal(lattice.diagram.nodes[i], c)) return i;
  }
  return std::nullopt;
}

std::vector<Monomial> atom_generators(const FieldParam& fp) {
  const auto q = fp.q();
  const std::uint64_t n = fp.order();
  std::vector<Monomial> out;
  out.emplace_back(canonicalize({1, n}, fp));
  for (std::uint32_t s = 2; s <= q - 1; ++s) {
    bool ok = reduce_exponent(std::uint64_t{s} * s, fp) == s;
    for (std::uint32_t p = 2; p <= n && !ok; ++p) {
      if (is_prime(p) && ipow_mod(s, p, n) == 1 % n) ok = true;
    }
    if (ok) out.push_back(Monomial::power(q, s));
  }
  return out;
}

std::vector<Clone> atoms(const FieldParam& fp) {
  std::vector<Clone> out;
  for (const auto& g : atom_generators(fp)) {
    Characterization ch;
    if (g.width() == 1) {
      const auto s = g.exponents().front();
      ch.description = "x1 and the powers x1^(" + std::to_string(s) + "^k)";
      ch.contains = [s, fp](const Monomial& m) {
        if (m.width() != 1) return false;
        std::uint32_t r = 1;
        for (std::uint32_t k = 0; k <= fp.order(); ++k) {
          if (m.count(r)) return true;
          r = reduce_exponent(std::uint64_t{r} * s, fp);
        }
        return false;
      };
    } else if (fp.q() == 2) {
      ch.description = "all monomials";
      ch.contains = [](const Monomial&) { return true; };
    } else {
      ch.description = "one exponent 1, all others q-1";
      ch.contains = [fp](const Monomial& m) {
        return m.count(1) == 1 && m.width() == 1 + m.count(fp.order());
      };
    }
    out.push_back(characterized_clone(fp, {g}, std::move(ch)));
  }
  return out;
}

std::string to_string(const CoatomDescriptor& c, const FieldParam& fp) {
  if (c.kind == CoatomDescriptor::Kind::interval) {
    return "<" + to_string(Monomial::product(fp.q(), 1 + c.prime)) + ">";
  }
  std::string s = "K_{";
  for (std::size_t i = 0; i < c.d.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c.d[i]);
  }
  return s + "}";
}

std::vector<CoatomDescriptor> coatoms(const FieldParam& fp) {
  if (fp.q() == 2) {
    throw PreconditionError(
        "F_2 has no coatoms below the top: the top covers the bottom");
  }
  const auto& ps = fp.primes();
  std::vector<CoatomDescriptor> out;
  for (auto p : ps) {
    CoatomDescriptor c;
    c.kind = CoatomDescriptor::Kind::interval;
    c.prime = p;
    out.push_back(c);
  }
  std::vector<CoatomDescriptor> kd;
  for (std::uint32_t mask = 1; mask < (1u << ps.size()); ++mask) {
    CoatomDescriptor c;
    c.kind = CoatomDescriptor::Kind::k_d;
    c.t = 1;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (mask & (1u << i)) {
        c.d.push_back(i + 1);
        c.t *= ps[i];
      }
    }
    kd.push_back(std::move(c));
  }
  std::stable_sort(kd.begin(), kd.end(), [](const auto& a, const auto& b) {
    if (a.d.size() != b.d.size()) return a.d.size() < b.d.size();
    return a.d < b.d;
  });
  out.insert(out.end(), kd.begin(), kd.end());
  return out;
}

bool coatom_member(const Monomial& m, const std::vector<std::size_t>& d,
                   const FieldParam& fp) {
  const auto& ps = fp.primes();
  if (d.empty()) throw PreconditionError("K_D needs a nonempty D");
  std::uint64_t t = 1;
  for (auto i : d) {
    if (i < 1 || i > ps.size()) {
      throw PreconditionError("K_D index " + std::to_string(i) +
                              " out of range 1.." + std::to_string(ps.size()));
    }
    t *= ps[i - 1];
  }
  const auto exps = m.exponents();
  for (auto i : d) {
    const auto p = ps[i - 1];
    if (std::all_of(exps.begin(), exps.end(), [p](auto e) { return e % p == 0; })) {
      return true;
    }
  }
  const auto divisible = static_cast<std::size_t>(
      std::count_if(exps.begin(), exps.end(), [t](auto e) { return e % t == 0; }));
  return divisible + 1 >= exps.size();
}

Clone coatom_clone(const CoatomDescriptor& c, const FieldParam& fp,
                   std::optional<CapPolicy> cap) {
  if (c.kind == CoatomDescriptor::Kind::interval) {
    return congruence_clone(c.prime, fp, cap);
  }
  const auto q = fp.q();
  std::vector<Monomial> gens;
  for (std::uint32_t t = 2; t < q; ++t) gens.push_back(Monomial::power(q, t));
  gens.push_back(canonicalize({1, c.t}, fp));
  for (auto i : c.d) {
    const std::uint64_t p = fp.primes()[i - 1];
    gens.push_back(canonicalize({p, p}, fp));
  }
  Characterization ch{to_string(c, fp),
                      [d = c.d, fp](const Monomial& m) {
                        return coatom_member(m, d, fp);
                      }};
  // For square-free q-1, x1^{P}x2^{P} and the unary powers yield every
  // x1^P...x_n^P; otherwise the family is needed in full.
  return characterized_clone(fp, std::move(gens), std::move(ch), cap,
                             fp.squarefree());
}

Monomial replicate(const Monomial& g, std::uint32_t times, const FieldParam& fp) {
  if (g.count(1) == 0) {
    throw PreconditionError("replicate: " + to_string(g) +
                            " has no exponent-1 variable");
  }
  Monomial m = g;
  for (std::uint32_t i = 0; i < times; ++i) m = substitute(m, 1, g, fp);
  return m;
}

DivisorInterval divisor_interval(const FieldParam& fp) {
  if (fp.q() < 3) throw PreconditionError("divisor interval needs q >= 3");
  DivisorInterval out;
  for (auto a : divisors(fp.order())) {
    out.divisors.push_back(static_cast<std::uint32_t>(a));
    out.clones.push_back(congruence_clone(static_cast<std::uint32_t>(a), fp));
  }
  const auto n = out.divisors.size();
  out.anti_isomorphic = true;
  out.certified = true;
  out.included.assign(n, std::vector<Answer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto a = out.divisors[i];
      const auto b = out.divisors[j];
      out.included[i][j] = subset(out.clones[i], out.clones[j]);
      const bool divides = a % b == 0;
      if (out.included[i][j].value != divides) out.anti_isomorphic = false;
      const auto gi = Monomial::product(fp.q(), a + 1);
      const auto gj = Monomial::product(fp.q(), b + 1);
      if (divides) {
        if (!(replicate(gj, a / b - 1, fp) == gi)) out.certified = false;
      } else if (!congruence_clone_member(gj, b, fp) ||
                 congruence_clone_member(gi, b, fp)) {
        out.certified = false;
      }
    }
  }
  if (fp.q() <= 5) {
    const auto lat = enumerate_lattice(fp);
    const auto bottom = congruence_clone(fp.order(), fp);
    std::size_t above = 0;
    for (const auto& node : lat.diagram.nodes) {
      if (subset(bottom, node).value) ++above;
    }
    out.enumerated_above = above;
  }
  return out;
}

AscendingChain ascending_chain(const FieldParam& fp, std::uint32_t n) {
  if (n == 0) throw PreconditionError("chain length must be positive");
  const std::uint32_t q1 = fp.order();
  std::uint32_t k = 0;
  for (std::uint32_t c = 2; c * c <= q1; ++c) {
    if (q1 % (c * c) == 0) {
      k = c;
      break;
    }
  }
  if (k == 0) {
    throw DomainError("q-1 = " + std::to_string(q1) +
                      " is square-free, so the lattice of monomial clones on F_" +
                      std::to_string(fp.q()) + " has no infinite ascending chain");
  }
  AscendingChain out;
  out.k = k;
  out.d = q1 / k;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> c(q1, 0);
    c[out.d - 1] = k * i + 1;
    out.generators.emplace_back(fp.q(), std::move(c));
  }
  // Room for the last generator; the stabilization rounds add more.
  const auto policy = CapPolicy::with_cap(fp, 2 * q1 + k * (n - 1) + 1);
  for (const auto& g : out.generators) out.clones.push_back(generate({g}, fp, policy));
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    const auto up = subset(out.clones[i], out.clones[i + 1]);
    const auto back = member(out.generators[i + 1], out.clones[i]);
    out.strict.push_back(
        {up.value && !back.value,
         up.exact() && back.exact() ? Confidence::exact : Confidence::cap_limited});
  }
  return out;
}

Finiteness lattice_finiteness(const FieldParam& fp) {
  Finiteness f;
  f.finite = fp.squarefree();
  if (!f.finite) f.witness = ascending_chain(fp, 3);
  return f;
}

CloneLattice idempotent_interval(const FieldParam& fp,
                                 const EnumerationOptions& options) {
  const auto w = options.width_bound ? options.width_bound : fp.q();
  std::vector<Monomial> seeds;
  for (auto& m : all_monomials(fp, w)) {
    if (is_idempotent(m, fp)) seeds.push_back(std::move(m));
  }
  const auto cap = options.cap ? *options.cap : 2 * fp.order() + w;
  auto out = enumerate_from_seeds(fp, seeds, cap, options.stabilization_rounds);
  out.width_bound = w;
  // The interval is finite for every q.
  out.complete = true;
  return out;
}

Monomial single_generator(const Monomial& m1, const Monomial& m2,
                          const FieldParam& fp) {
  if (!is_idempotent(m1, fp) || !is_idempotent(m2, fp)) {
    throw PreconditionError("single_generator needs idempotent monomials");
  }
  std::vector<std::uint32_t> c(fp.order(), 0);
  for (std::uint32_t a = 1; a < fp.q(); ++a) {
    for (std::uint32_t b = 1; b < fp.q(); ++b) {
      c[reduce_exponent(std::uint64_t{a} * b, fp) - 1] += m1.count(a) * m2.count(b);
    }
  }
  return Monomial(fp.q(), std::move(c));
}

}  // namespace monoclone
