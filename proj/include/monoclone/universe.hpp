#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monoclone/monomial.hpp"

namespace monoclone {

/// Fixed-size bit vector with the handful of set operations the closure
/// code needs.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  /// Sets bit i and reports whether it was previously clear.
  bool insert(std::size_t i) noexcept {
    const auto mask = std::uint64_t{1} << (i & 63);
    auto& w = words_[i >> 6];
    if (w & mask) return false;
    w |= mask;
    return true;
  }
  std::size_t count() const noexcept;
  bool subset_of(const BitSet& other) const noexcept;
  BitSet& operator&=(const BitSet& other) noexcept;
  BitSet& operator|=(const BitSet& other) noexcept;
  /// Removes the members of other.
  BitSet& subtract(const BitSet& other) noexcept;
  friend bool operator==(const BitSet&, const BitSet&) = default;

  /// Calls f(i) for every set bit in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        const auto b = static_cast<std::size_t>(__builtin_ctzll(bits));
        f(w * 64 + b);
        bits &= bits - 1;
      }
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The box of count vectors with every count <= cap and zero counts outside
/// a set of residues (the support). Index order coincides with the
/// lexicographic order on count vectors; index 0 is the zero vector, which is
/// not a monomial.
class Box {
 public:
  /// Largest number of cells a closure is allowed to allocate.
  static constexpr std::size_t kMaxCells = std::size_t{1} << 27;

  /// Full support {1..q-1}.
  Box(std::uint32_t q, std::uint32_t cap);
  /// support: ascending residues in 1..q-1.
  Box(std::uint32_t q, std::uint32_t cap, std::vector<std::uint32_t> support);

  /// Whether a box with this many free coordinates fits under kMaxCells.
  static bool fits(std::size_t dims, std::uint32_t cap);
  static std::vector<std::uint32_t> full_support(std::uint32_t q);

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return size_; }
  const std::vector<std::uint32_t>& support() const noexcept { return support_; }

  bool contains(const std::vector<std::uint32_t>& counts) const noexcept;
  std::size_t index(const std::vector<std::uint32_t>& counts) const noexcept;
  std::vector<std::uint32_t> counts(std::size_t index) const;
  Monomial monomial(std::size_t index) const;

  /// Re-indexes the members of `bits` (a set over `from`) into this box,
  /// dropping points outside it.
  BitSet transfer(const BitSet& bits, const Box& from) const;

 private:
  std::uint32_t q_;
  std::uint32_t cap_;
  std::vector<std::uint32_t> support_;
  std::size_t size_;
};

}  // namespace monoclone
