#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoclone/clone.hpp"
#include "monoclone/hasse.hpp"
#include "monoclone/lattice.hpp"
#include "monoclone/universe.hpp"

namespace monoclone {

/// y_1..y_k -> sum a_i y_i over Z_n, stored as the multiplicity of each
/// nonzero coefficient 1..n-1. Zero coefficients are dummy arguments and are
/// not stored, so the empty form is the constant 0.
class LinearForm {
 public:
  LinearForm(std::uint32_t n, std::vector<std::uint32_t> counts);

  static LinearForm identity(std::uint32_t n);
  static LinearForm zero(std::uint32_t n);
  /// Form with the given coefficients; zeros (mod n) are dropped.
  static LinearForm from_coefficients(std::uint32_t n,
                                      const std::vector<std::uint64_t>& coeffs);

  std::uint32_t modulus() const noexcept { return n_; }
  const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
  std::uint32_t count(std::uint32_t a) const;
  std::uint32_t width() const noexcept;
  /// Coefficients with multiplicity, ascending.
  std::vector<std::uint32_t> coefficients() const;
  /// Value at a point of Z_n^width (coordinates in coefficient order).
  std::uint32_t evaluate(const std::vector<std::uint32_t>& point) const;

  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> counts_;
};

bool width_less(const LinearForm& a, const LinearForm& b);
/// "0" for the empty form, otherwise "y1+2*y2+2*y3".
std::string to_string(const LinearForm& f);

/// Parses "y1+2*y2+y3" or "0"; a repeated variable adds its coefficients.
/// Throws ParseError.
LinearForm parse_linear_form(std::string_view text, std::uint32_t n);

/// The image of a monomial: exponent r becomes coefficient r mod (q-1).
LinearForm linear_image(const Monomial& m);

/// A clone of 0-preserving affine maps on Z_n, kept as the forms whose
/// coefficient counts are at most cap.
class LinearClone {
 public:
  LinearClone(std::uint32_t n, std::uint32_t cap, std::vector<LinearForm> generators,
              BitSet members, bool stable);

  std::uint32_t modulus() const noexcept { return n_; }
  std::uint32_t cap() const noexcept { return cap_; }
  const std::vector<LinearForm>& generators() const noexcept { return generators_; }
  bool stable() const noexcept { return stable_; }
  Box box() const;
  const BitSet& member_bits() const noexcept { return members_; }
  std::vector<LinearForm> members() const;
  std::size_t size() const noexcept { return members_.count(); }
  bool contains(const LinearForm& f) const;

 private:
  std::uint32_t n_;
  std::uint32_t cap_;
  std::vector<LinearForm> generators_;
  BitSet members_;
  bool stable_;
};

/// 2n, the default count cap for forms.
std::uint32_t default_linear_cap(std::uint32_t n);

/// Least set of forms containing the generators and the identity, closed
/// under substituting a generator into one argument and identifying two
/// arguments. Counts above the cap drop by n, which identifying n equal
/// coefficients does. Also closes `seeds` (forms in Box(n, cap)) if given.
LinearClone linear_closure(const std::vector<LinearForm>& generators,
                           std::uint32_t n,
                           std::optional<std::uint32_t> cap = std::nullopt,
                           const BitSet* seeds = nullptr);

/// Both clones restricted to the smaller cap. Throws PreconditionError on
/// different moduli.
bool subset(const LinearClone& a, const LinearClone& b);
bool equal(const LinearClone& a, const LinearClone& b);

/// The linear clone of the images of all members of c. Defaults to the
/// cap 2(q-1).
LinearClone phi_affine(const Clone& c, std::optional<std::uint32_t> cap = std::nullopt);

struct SemiaffineLattice {
  HasseDiagram<LinearClone> diagram;
  std::uint32_t cap = 0;
};

/// Join/meet closure of the principal clones of all forms of arity <= n+1.
SemiaffineLattice enumerate_semiaffine_lattice(std::uint32_t n,
                                               std::optional<std::uint32_t> cap = std::nullopt);

std::optional<std::size_t> find_node(const SemiaffineLattice& lattice,
                                     const LinearClone& c);

struct Fiber {
  /// Indices into the monomial lattice.
  std::vector<std::size_t> nodes;
  /// Every clone in the fiber contains x1 x2^{q-1}.
  bool all_contain_x1x2q = false;
};

/// Nodes of an enumerated monomial lattice whose image is lc. phis[i] must be
/// phi_affine of node i (see phi_all).
Fiber fiber(const LinearClone& lc, const CloneLattice& lattice,
            const std::vector<LinearClone>& phis);

std::vector<LinearClone> phi_all(const CloneLattice& lattice,
                                 std::optional<std::uint32_t> cap = std::nullopt);

}  // namespace monoclone
