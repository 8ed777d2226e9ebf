#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "monoclone/field.hpp"
#include "monoclone/monomial.hpp"
#include "monoclone/universe.hpp"

namespace monoclone {

/// How large a finite universe to close in, and how many enlarged universes
/// to recompute in order to judge whether the answer depends on the cap.
struct CapPolicy {
  std::uint32_t per_residue_cap = 0;
  std::uint32_t stabilization_rounds = 2;

  /// 2(q-1) plus the largest count occurring in a generator.
  static CapPolicy for_generators(const FieldParam& fp,
                                  const std::vector<Monomial>& generators);
  /// Throws PreconditionError if cap < 2(q-1).
  static CapPolicy with_cap(const FieldParam& fp, std::uint32_t cap,
                            std::uint32_t rounds = 2);
};

enum class Confidence { exact, cap_limited };

/// A yes/no answer together with whether it could still change at a larger
/// cap.
struct Answer {
  bool value = false;
  Confidence confidence = Confidence::cap_limited;

  bool exact() const noexcept { return confidence == Confidence::exact; }
  explicit operator bool() const noexcept { return value; }
};

/// Knobs of the closure itself. The defaults are what generate() uses; the
/// others exist so tests can check the rewrite rules against plain closure.
struct ClosureOptions {
  /// Pump residue q-1 occurrences to every count once one is present in a
  /// monomial of width >= 2.
  bool saturate = true;
  /// Substitute every discovered member (not only generators) into every
  /// slot. Much slower; only for cross-checking.
  bool substitute_members = false;
};

/// Closes `seeds` (may be null) together with x1 and the generators under
/// substitution of generators, identification of variables and the
/// saturation rule, inside `box`. Counts that overflow the cap are lowered
/// by multiples of q-1, which is what identifying q-1 equal exponents into a
/// further variable does.
BitSet close_in_box(const Box& box, const FieldParam& fp,
                    const std::vector<Monomial>& generators,
                    const BitSet* seeds = nullptr,
                    const ClosureOptions& options = {});

/// Residues that can occur in a member of width >= 2 of the clone generated
/// by `generators`, together with 1: the generator residues closed under
/// addition and under multiplication by generator residues.
std::vector<std::uint32_t> residue_support(const FieldParam& fp,
                                           const std::vector<Monomial>& generators);

/// Closure of a u b where a is closed under the generators ga and b under
/// gb (both inside `box`). Members of a only need the generators of b
/// applied and vice versa, which makes this much cheaper than closing from
/// scratch.
BitSet join_in_box(const Box& box, const FieldParam& fp, const BitSet& a,
                   const std::vector<Monomial>& ga, const BitSet& b,
                   const std::vector<Monomial>& gb);

/// An exact membership test for clones known in closed form.
struct Characterization {
  std::string description;
  std::function<bool(const Monomial&)> contains;
};

/// A monomial clone. Either materialized as a member set inside a capped
/// universe, characterized by an exact predicate, or both.
class Clone {
 public:
  /// support lists the residues members may use (see residue_support).
  Clone(FieldParam fp, std::vector<Monomial> generators, CapPolicy cap,
        bool stable, std::optional<BitSet> members,
        std::vector<std::uint32_t> support,
        std::optional<Characterization> characterization = std::nullopt,
        bool defined_by_generators = true);

  const FieldParam& field() const noexcept { return fp_; }
  const std::vector<Monomial>& generators() const noexcept { return generators_; }
  const CapPolicy& cap() const noexcept { return cap_; }
  /// True if the member set did not change under the stabilization rounds,
  /// or if the clone is characterized exactly.
  bool stable() const noexcept { return stable_; }
  bool materialized() const noexcept { return members_.has_value(); }
  /// False when the generators were recovered from a member set (meets), so
  /// that they reproduce the clone only as far as the cap can tell.
  bool defined_by_generators() const noexcept { return defined_by_generators_; }
  const std::optional<Characterization>& characterization() const noexcept {
    return characterization_;
  }

  const std::vector<std::uint32_t>& support() const noexcept { return support_; }
  /// Requires materialized().
  Box box() const;
  const BitSet& member_bits() const;
  /// Members in canonical (lexicographic) order.
  std::vector<Monomial> members() const;
  std::size_t size() const;

 private:
  FieldParam fp_;
  std::vector<Monomial> generators_;
  CapPolicy cap_;
  bool stable_;
  std::optional<BitSet> members_;
  std::vector<std::uint32_t> support_;
  std::optional<Characterization> characterization_;
  bool defined_by_generators_;
};

/// The least clone containing the generators, restricted to the capped
/// universe. Throws PreconditionError on an empty generator set and
/// CapError if a generator does not fit or the universe is too large.
Clone generate(const std::vector<Monomial>& generators, const FieldParam& fp,
               std::optional<CapPolicy> cap = std::nullopt,
               const ClosureOptions& options = {});

/// The same clone recomputed in a universe with the given cap.
Clone at_cap(const Clone& c, std::uint32_t cap);

/// Throws CapError if m does not fit the cap of a materialized clone with
/// no characterization.
Answer member(const Monomial& m, const Clone& c);
Answer subset(const Clone& c1, const Clone& c2);
Answer equal(const Clone& c1, const Clone& c2);
/// Compares materialized member sets at the larger of the two caps,
/// ignoring characterizations.
bool members_equal(const Clone& c1, const Clone& c2);
/// The clone generated by both generator sets. The cap defaults to the
/// largest of the operands' caps and the default for the combined generators.
Clone join(const Clone& c1, const Clone& c2,
           std::optional<CapPolicy> cap = std::nullopt);
Clone meet(const Clone& c1, const Clone& c2);

/// A small generating set for the clone whose members are `members`:
/// members are added greedily in width-then-lex order until they generate
/// the whole set, then redundant ones are dropped.
std::vector<Monomial> find_generators(const BitSet& members, const Box& box,
                                      const FieldParam& fp);

/// Sum of exponents congruent to 1 modulo b. Throws DomainError unless
/// b divides q-1.
bool congruence_clone_member(const Monomial& m, std::uint32_t b,
                             const FieldParam& fp);

/// {m : sum of exponents = 1 mod b} as a characterized clone; it is generated
/// by x1...x_{b+1}. Materialized when the universe fits.
Clone congruence_clone(std::uint32_t b, const FieldParam& fp,
                       std::optional<CapPolicy> cap = std::nullopt);

/// A clone given by generators and an exact predicate for its members.
/// Materialized from the predicate when the universe fits.
/// generators_complete says whether the generators are known to generate
/// the whole clone rather than a subclone.
Clone characterized_clone(const FieldParam& fp, std::vector<Monomial> generators,
                          Characterization characterization,
                          std::optional<CapPolicy> cap = std::nullopt,
                          bool generators_complete = true);

struct DerivationResult {
  bool found = false;
  std::size_t states = 0;
};

/// Searches for a derivation of `target` from the generators using only
/// substitution and identification, never passing through a monomial wider
/// than `max_width`. A hit is a proof of membership; a miss proves nothing.
DerivationResult derive(const Monomial& target,
                        const std::vector<Monomial>& generators,
                        const FieldParam& fp, std::uint32_t max_width,
                        std::size_t max_states = 20'000'000);

}  // namespace monoclone
