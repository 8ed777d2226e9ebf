#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monoclone/clone.hpp"
#include "monoclone/hasse.hpp"

namespace monoclone {

struct EnumerationOptions {
  /// Widest seed monomial; 0 means q.
  std::uint32_t width_bound = 0;
  /// Common cap of all nodes; default 2(q-1) + width_bound.
  std::optional<std::uint32_t> cap;
  std::uint32_t stabilization_rounds = 2;
};

/// Clones reachable from principal clones of small seeds by joins and meets.
/// Node generators are readable minimal generating sets. Nodes are ordered
/// by member count, then by generators.
struct CloneLattice {
  HasseDiagram<Clone> diagram;
  std::uint32_t width_bound = 0;
  std::uint32_t cap = 0;
  /// False when q-1 is not square-free: the lattice is infinite and the
  /// diagram shows only the part reached.
  bool complete = true;
  /// Every node passed its stabilization rounds.
  bool stable = true;
  /// For incomplete lattices, the start of an infinite ascending chain.
  std::vector<Clone> chain_witness;
};

CloneLattice enumerate_lattice(const FieldParam& fp,
                               const EnumerationOptions& options = {});

/// Join/meet closure of the principal clones of `seeds`, all at one cap.
CloneLattice enumerate_from_seeds(const FieldParam& fp,
                                  const std::vector<Monomial>& seeds,
                                  std::uint32_t cap, std::uint32_t rounds);

/// Index of the node with the same member set, if any.
std::optional<std::size_t> find_node(const CloneLattice& lattice,
                                     const Clone& c);

/// x1 x2^{q-1} and the powers x1^s generating atoms.
std::vector<Monomial> atom_generators(const FieldParam& fp);
/// The atoms, each characterized exactly.
std::vector<Clone> atoms(const FieldParam& fp);

struct CoatomDescriptor {
  enum class Kind { interval, k_d };
  Kind kind = Kind::interval;
  /// interval: the prime P_i of <x1...x_{1+P_i}>.
  std::uint32_t prime = 0;
  /// k_d: 1-based indices into FieldParam::primes(), ascending.
  std::vector<std::size_t> d;
  /// k_d: product of the primes indexed by d.
  std::uint32_t t = 0;
};

std::string to_string(const CoatomDescriptor& c, const FieldParam& fp);

/// l interval coatoms followed by the 2^l - 1 clones K_D. Throws
/// PreconditionError for q = 2, where the top covers the bottom.
std::vector<CoatomDescriptor> coatoms(const FieldParam& fp);

/// Membership in K_D: some P_i (i in D) divides every exponent, or all but at
/// most one exponent are divisible by T.
bool coatom_member(const Monomial& m, const std::vector<std::size_t>& d,
                   const FieldParam& fp);

Clone coatom_clone(const CoatomDescriptor& c, const FieldParam& fp,
                   std::optional<CapPolicy> cap = std::nullopt);

struct DivisorInterval {
  std::vector<std::uint32_t> divisors;
  /// clones[i] = <x1...x_{1+divisors[i]}>, characterized exactly.
  std::vector<Clone> clones;
  /// included[i][j]: clones[i] is contained in clones[j].
  std::vector<std::vector<Answer>> included;
  /// included[i][j] holds exactly when divisors[j] divides divisors[i].
  bool anti_isomorphic = false;
  /// Every inclusion has a replayed derivation, every non-inclusion a
  /// separating congruence clone.
  bool certified = false;
  /// Number of enumerated clones above <x1...x_q>, when the lattice was
  /// enumerated (q <= 5).
  std::optional<std::size_t> enumerated_above;
};

DivisorInterval divisor_interval(const FieldParam& fp);

/// Starting from g, substitutes g into an exponent-1 slot `times` times.
/// From x1...x_{b+1} this yields x1...x_{1+(times+1)b}.
Monomial replicate(const Monomial& g, std::uint32_t times, const FieldParam& fp);

struct AscendingChain {
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  std::vector<Monomial> generators;
  std::vector<Clone> clones;
  /// strict[i]: clones[i] is properly contained in clones[i+1].
  std::vector<Answer> strict;
};

/// f_i = x1^d ... x_{ki+1}^d for the least k >= 2 with k^2 | q-1 and
/// d = (q-1)/k. Throws DomainError when q-1 is square-free.
AscendingChain ascending_chain(const FieldParam& fp, std::uint32_t n);

struct Finiteness {
  bool finite = true;
  std::optional<AscendingChain> witness;
};

/// The lattice is finite exactly when q-1 is square-free; otherwise a
/// three-step ascending chain is attached.
Finiteness lattice_finiteness(const FieldParam& fp);

/// The interval [<x1>, <x1...x_q>], enumerated from idempotent seeds.
CloneLattice idempotent_interval(const FieldParam& fp,
                                 const EnumerationOptions& options = {});

/// m1(m2(x_1..x_l), ..., m2(...)): a single generator of <m1, m2> for
/// idempotent m1, m2. Throws PreconditionError otherwise.
Monomial single_generator(const Monomial& m1, const Monomial& m2,
                          const FieldParam& fp);

}  // namespace monoclone
