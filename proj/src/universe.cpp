#include "monoclone/universe.hpp"

#include <bit>

#include "monoclone/error.hpp"

namespace monoclone {

std::size_t BitSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitSet::subset_of(const BitSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

BitSet& BitSet::operator&=(const BitSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitSet& BitSet::operator|=(const BitSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitSet& BitSet::subtract(const BitSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

bool Box::fits(std::size_t dims, std::uint32_t cap) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < dims; ++i) {
    size *= std::size_t{cap} + 1;
    if (size > kMaxCells) return false;
  }
  return true;
}

std::vector<std::uint32_t> Box::full_support(std::uint32_t q) {
  std::vector<std::uint32_t> s(q - 1);
  for (std::uint32_t r = 1; r < q; ++r) s[r - 1] = r;
  return s;
}

Box::Box(std::uint32_t q, std::uint32_t cap) : Box(q, cap, full_support(q)) {}

Box::Box(std::uint32_t q, std::uint32_t cap, std::vector<std::uint32_t> support)
    : q_(q), cap_(cap), support_(std::move(support)), size_(1) {
  if (!fits(support_.size(), cap)) {
    throw CapError("universe of " + std::to_string(cap + 1) + "^" +
                   std::to_string(support_.size()) +
                   " count vectors is too large to materialize");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) size_ *= std::size_t{cap} + 1;
}

bool Box::contains(const std::vector<std::uint32_t>& counts) const noexcept {
  std::size_t j = 0;
  for (std::uint32_t r = 1; r <= counts.size(); ++r) {
    const bool in = j < support_.size() && support_[j] == r;
    if (in) ++j;
    if (counts[r - 1] > (in ? cap_ : 0)) return false;
  }
  return true;
}

std::size_t Box::index(const std::vector<std::uint32_t>& counts) const noexcept {
  std::size_t idx = 0;
  for (auto r : support_) idx = idx * (std::size_t{cap_} + 1) + counts[r - 1];
  return idx;
}

std::vector<std::uint32_t> Box::counts(std::size_t index) const {
  std::vector<std::uint32_t> c(q_ - 1, 0);
  for (std::size_t i = support_.size(); i-- > 0;) {
    c[support_[i] - 1] = static_cast<std::uint32_t>(index % (std::size_t{cap_} + 1));
    index /= std::size_t{cap_} + 1;
  }
  return c;
}

Monomial Box::monomial(std::size_t index) const {
  return Monomial(q_, counts(index));
}

BitSet Box::transfer(const BitSet& bits, const Box& from) const {
  BitSet out(size_);
  // Strides of this box per residue; residues outside the support get none.
  std::vector<std::size_t> stride(q_ - 1, 0);
  std::vector<bool> allowed(q_ - 1, false);
  std::size_t st = 1;
  for (std::size_t i = support_.size(); i-- > 0;) {
    stride[support_[i] - 1] = st;
    allowed[support_[i] - 1] = true;
    st *= std::size_t{cap_} + 1;
  }
  const std::size_t base = std::size_t{from.cap_} + 1;
  const auto& fs = from.support_;
  bits.for_each([&](std::size_t i) {
    std::size_t idx = 0;
    for (std::size_t k = fs.size(); k-- > 0;) {
      const auto c = i % base;
      i /= base;
      if (c == 0) continue;
      if (c > cap_ || !allowed[fs[k] - 1]) return;
      idx += c * stride[fs[k] - 1];
    }
    out.set(idx);
  });
  return out;
}

}  // namespace monoclone
