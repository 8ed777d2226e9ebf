#include "monoclone/semiaffine.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "monoclone/error.hpp"

namespace monoclone {

namespace {

using Counts = std::vector<std::uint32_t>;

Counts dims_zero(std::uint32_t n) { return Counts(n > 0 ? n - 1 : 0, 0); }

}  // namespace

LinearForm::LinearForm(std::uint32_t n, std::vector<std::uint32_t> counts)
    : n_(n), counts_(std::move(counts)) {
  if (n == 0) throw PreconditionError("modulus must be positive");
  if (counts_.size() != n - 1) {
    throw PreconditionError("a form over Z_" + std::to_string(n) + " needs " +
                            std::to_string(n - 1) + " counts");
  }
}

LinearForm LinearForm::identity(std::uint32_t n) {
  auto c = dims_zero(n);
  if (n > 1) c[0] = 1;
  return LinearForm(n, std::move(c));
}

LinearForm LinearForm::zero(std::uint32_t n) { return LinearForm(n, dims_zero(n)); }

LinearForm LinearForm::from_coefficients(std::uint32_t n,
                                         const std::vector<std::uint64_t>& coeffs) {
  auto c = dims_zero(n);
  for (auto a : coeffs) {
    if (a % n) ++c[a % n - 1];
  }
  return LinearForm(n, std::move(c));
}

std::uint32_t LinearForm::count(std::uint32_t a) const {
  if (a == 0 || a >= n_) throw PreconditionError("coefficient out of range");
  return counts_[a - 1];
}

std::uint32_t LinearForm::width() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), 0u);
}

std::vector<std::uint32_t> LinearForm::coefficients() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 1; a < n_; ++a) out.insert(out.end(), counts_[a - 1], a);
  return out;
}

std::uint32_t LinearForm::evaluate(const std::vector<std::uint32_t>& point) const {
  const auto co = coefficients();
  if (point.size() != co.size()) throw PreconditionError("point has wrong length");
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < co.size(); ++i) s += std::uint64_t{co[i]} * point[i];
  return static_cast<std::uint32_t>(s % n_);
}

bool width_less(const LinearForm& a, const LinearForm& b) {
  if (a.width() != b.width()) return a.width() < b.width();
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  const auto sa = std::accumulate(ca.begin(), ca.end(), 0ull);
  const auto sb = std::accumulate(cb.begin(), cb.end(), 0ull);
  if (sa != sb) return sa < sb;
  return a < b;
}

std::string to_string(const LinearForm& f) {
  const auto co = f.coefficients();
  if (co.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < co.size(); ++i) {
    if (i) s += '+';
    if (co[i] != 1) s += std::to_string(co[i]) + '*';
    s += 'y' + std::to_string(i + 1);
  }
  return s;
}

LinearForm parse_linear_form(std::string_view text, std::uint32_t n) {
  const std::string input(text);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&](const char* what) {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError(i, what, input);
    }
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
      if (v > (1u << 30)) throw ParseError(i, "a smaller number", input);
    }
    return v;
  };
  std::map<std::uint64_t, std::uint64_t> coeff;
  skip();
  if (i < text.size() && text[i] == '0') {
    ++i;
    skip();
    if (i != text.size()) throw ParseError(i, "end of input", input);
    return LinearForm::zero(n);
  }
  while (true) {
    skip();
    std::uint64_t c = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = number("a coefficient");
      skip();
      if (i >= text.size() || text[i] != '*') throw ParseError(i, "'*'", input);
      ++i;
      skip();
    }
    if (i >= text.size() || text[i] != 'y') throw ParseError(i, "a variable y<k>", input);
    ++i;
    const auto var = number("a variable index");
    if (var == 0) throw ParseError(i, "a positive variable index", input);
    coeff[var] += c;
    skip();
    if (i == text.size()) break;
    if (text[i] != '+') throw ParseError(i, "'+' or end of input", input);
    ++i;
  }
  std::vector<std::uint64_t> cs;
  for (const auto& [v, c] : coeff) cs.push_back(c);
  return LinearForm::from_coefficients(n, cs);
}

LinearForm linear_image(const Monomial& m) {
  const auto n = m.order();
  Counts c(m.counts().begin(), m.counts().end() - 1);
  return LinearForm(n, std::move(c));
}

LinearClone::LinearClone(std::uint32_t n, std::uint32_t cap,
                         std::vector<LinearForm> generators, BitSet members,
                         bool stable)
    : n_(n), cap_(cap), generators_(std::move(generators)),
      members_(std::move(members)), stable_(stable) {}

Box LinearClone::box() const { return Box(n_, cap_); }

std::vector<LinearForm> LinearClone::members() const {
  std::vector<LinearForm> out;
  const auto b = box();
  members_.for_each([&](std::size_t i) { out.emplace_back(n_, b.counts(i)); });
  return out;
}

bool LinearClone::contains(const LinearForm& f) const {
  if (f.modulus() != n_) throw PreconditionError("modulus mismatch");
  const auto b = box();
  if (!b.contains(f.counts())) {
    throw CapError("form " + to_string(f) + " exceeds the cap " + std::to_string(cap_));
  }
  return members_.test(b.index(f.counts()));
}

std::uint32_t default_linear_cap(std::uint32_t n) { return std::max(2 * n, 2u); }

namespace {

class FormClosure {
 public:
  FormClosure(const Box& box, std::uint32_t n) : box_(box), n_(n), bits_(box.size()) {}

  void add(Counts c) {
    for (auto& x : c) {
      while (x > box_.cap()) x -= n_;
    }
    const auto i = box_.index(c);
    if (bits_.insert(i)) queue_.push_back(std::move(c));
  }

  void run(const std::vector<Counts>& gens) {
    const auto d = n_ - 1;
    while (!queue_.empty()) {
      const auto c = std::move(queue_.front());
      queue_.pop_front();
      for (std::uint32_t a = 1; a <= d; ++a) {
        if (!c[a - 1]) continue;
        for (const auto& g : gens) {
          auto out = c;
          --out[a - 1];
          for (std::uint32_t b = 1; b <= d; ++b) {
            const auto ab = (a * b) % n_;
            if (ab) out[ab - 1] += g[b - 1];
          }
          add(std::move(out));
        }
        for (std::uint32_t b = a; b <= d; ++b) {
          if (!c[b - 1] || (a == b && c[a - 1] < 2)) continue;
          auto out = c;
          --out[a - 1];
          --out[b - 1];
          const auto s = (a + b) % n_;
          if (s) ++out[s - 1];
          add(std::move(out));
        }
      }
    }
  }

  BitSet take() { return std::move(bits_); }

 private:
  const Box& box_;
  std::uint32_t n_;
  BitSet bits_;
  std::deque<Counts> queue_;
};

BitSet close_forms(const Box& box, std::uint32_t n, const std::vector<LinearForm>& gens,
                   const BitSet* seeds, const Box* seed_box) {
  FormClosure cl(box, n);
  cl.add(LinearForm::identity(n).counts());
  std::vector<Counts> gc;
  for (const auto& g : gens) {
    gc.push_back(g.counts());
    cl.add(g.counts());
  }
  if (seeds) {
    seeds->for_each([&](std::size_t i) { cl.add(seed_box->counts(i)); });
  }
  cl.run(gc);
  return cl.take();
}

void check_forms(const std::vector<LinearForm>& gens, std::uint32_t n) {
  for (const auto& g : gens) {
    if (g.modulus() != n) throw PreconditionError("form has a different modulus");
  }
}

// Greedy generators in width_less order, then drop redundant ones.
std::vector<LinearForm> find_form_generators(const BitSet& members, const Box& box,
                                             std::uint32_t n) {
  std::vector<LinearForm> all;
  members.for_each([&](std::size_t i) { all.emplace_back(n, box.counts(i)); });
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return width_less(a, b); });
  std::vector<LinearForm> gens;
  BitSet cur = close_forms(box, n, gens, nullptr, nullptr);
  for (const auto& f : all) {
    if (cur == members) break;
    if (cur.test(box.index(f.counts()))) continue;
    gens.push_back(f);
    cur = close_forms(box, n, gens, nullptr, nullptr);
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    auto fewer = gens;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
    if (close_forms(box, n, fewer, nullptr, nullptr) == members) gens = std::move(fewer);
  }
  // The projection clone is labelled by the identity rather than by nothing.
  if (gens.empty()) gens.push_back(LinearForm::identity(n));
  return gens;
}

}  // namespace

LinearClone linear_closure(const std::vector<LinearForm>& generators, std::uint32_t n,
                           std::optional<std::uint32_t> cap, const BitSet* seeds) {
  check_forms(generators, n);
  const auto c = cap.value_or(default_linear_cap(n));
  if (c < n) throw PreconditionError("form cap must be at least the modulus");
  const Box base(n, c);
  // Same scheme as the monomial side: close in two larger boxes and keep the
  // restriction of the largest; stable when both restrictions agree.
  BitSet prev, last;
  for (std::uint32_t round = 0; round < 3; ++round) {
    const Box big(n, c + round * n);
    auto bits = close_forms(big, n, generators, seeds, &base);
    prev = std::move(last);
    last = base.transfer(bits, big);
  }
  const bool stable = prev == last;
  return LinearClone(n, c, generators, std::move(last), stable);
}

namespace {

void same_modulus(const LinearClone& a, const LinearClone& b) {
  if (a.modulus() != b.modulus()) throw PreconditionError("moduli differ");
}

std::pair<BitSet, BitSet> aligned(const LinearClone& a, const LinearClone& b) {
  same_modulus(a, b);
  const auto cap = std::min(a.cap(), b.cap());
  const Box box(a.modulus(), cap);
  return {box.transfer(a.member_bits(), a.box()), box.transfer(b.member_bits(), b.box())};
}

}  // namespace

bool subset(const LinearClone& a, const LinearClone& b) {
  const auto [x, y] = aligned(a, b);
  return x.subset_of(y);
}

bool equal(const LinearClone& a, const LinearClone& b) {
  const auto [x, y] = aligned(a, b);
  return x == y;
}

LinearClone phi_affine(const Clone& c, std::optional<std::uint32_t> cap) {
  const auto n = c.field().order();
  const auto lc = cap.value_or(default_linear_cap(n));
  std::vector<LinearForm> gens;
  for (const auto& g : c.generators()) gens.push_back(linear_image(g));
  if (!c.materialized()) return linear_closure(gens, n, lc);
  // Images of members are seeds: meets carry generators that only reproduce
  // the member set inside the box.
  const Box fb(n, lc);
  BitSet seeds(fb.size());
  for (const auto& m : c.members()) {
    auto counts = linear_image(m).counts();
    for (auto& x : counts) {
      while (x > lc) x -= n;
    }
    seeds.set(fb.index(counts));
  }
  return linear_closure(gens, n, lc, &seeds);
}

namespace {

struct FormNode {
  BitSet bits;
  std::vector<LinearForm> label;
};

}  // namespace

SemiaffineLattice enumerate_semiaffine_lattice(std::uint32_t n,
                                               std::optional<std::uint32_t> cap) {
  const auto c = cap.value_or(default_linear_cap(n));
  const Box box(n, c);
  std::vector<FormNode> nodes;
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  auto key_of = [&](const BitSet& b) {
    std::vector<std::uint64_t> k;
    b.for_each([&](std::size_t i) { k.push_back(i); });
    return k;
  };
  auto add = [&](BitSet bits, std::vector<LinearForm> label) {
    auto k = key_of(bits);
    if (seen.count(k)) return;
    seen.emplace(std::move(k), nodes.size());
    nodes.push_back({std::move(bits), std::move(label)});
  };
  // Seeds: every form of arity <= n+1.
  const auto d = n > 0 ? n - 1 : 0;
  Counts cur(d, 0);
  std::vector<LinearForm> seeds;
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i,
                                                               std::uint32_t left) {
    if (i == d) {
      seeds.emplace_back(n, cur);
      return;
    }
    for (std::uint32_t k = 0; k <= left; ++k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(0, n + 1);
  for (const auto& f : seeds) {
    auto lc = linear_closure({f}, n, c);
    add(lc.member_bits(), {f});
  }
  for (std::size_t done = 0; done < nodes.size();) {
    const auto end = nodes.size();
    for (std::size_t j = done; j < end; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        auto label = nodes[i].label;
        label.insert(label.end(), nodes[j].label.begin(), nodes[j].label.end());
        BitSet both = nodes[i].bits;
        both |= nodes[j].bits;
        add(linear_closure(label, n, c, &both).member_bits(), label);
        BitSet common = nodes[i].bits;
        common &= nodes[j].bits;
        if (!seen.count(key_of(common))) {
          add(common, find_form_generators(common, box, n));
        }
      }
    }
    done = end;
  }
  SemiaffineLattice out;
  out.cap = c;
  for (auto& nd : nodes) {
    auto label = find_form_generators(nd.bits, box, n);
    out.diagram.nodes.emplace_back(n, c, std::move(label), std::move(nd.bits), true);
  }
  auto& ns = out.diagram.nodes;
  std::sort(ns.begin(), ns.end(), [](const LinearClone& a, const LinearClone& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(
        a.generators().begin(), a.generators().end(), b.generators().begin(),
        b.generators().end(), [](const auto& x, const auto& y) { return width_less(x, y); });
  });
  std::vector<std::vector<bool>> leq(ns.size(), std::vector<bool>(ns.size()));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t j = 0; j < ns.size(); ++j) {
      leq[i][j] = ns[i].member_bits().subset_of(ns[j].member_bits());
    }
  }
  out.diagram.edges = covering_edges(leq);
  out.diagram.bottom = 0;
  out.diagram.top = ns.size() - 1;
  return out;
}

std::optional<std::size_t> find_node(const SemiaffineLattice& lattice,
                                     const LinearClone& c) {
  const auto& ns = lattice.diagram.nodes;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (equal(ns[i], c)) return i;
  }
  return std::nullopt;
}

std::vector<LinearClone> phi_all(const CloneLattice& lattice,
                                 std::optional<std::uint32_t> cap) {
  std::vector<LinearClone> out;
  for (const auto& c : lattice.diagram.nodes) out.push_back(phi_affine(c, cap));
  return out;
}

Fiber fiber(const LinearClone& lc, const CloneLattice& lattice,
            const std::vector<LinearClone>& phis) {
  Fiber f;
  f.all_contain_x1x2q = true;
  const auto& ns = lattice.diagram.nodes;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!equal(phis[i], lc)) continue;
    f.nodes.push_back(i);
    const auto q = ns[i].field().q();
    Counts c(q - 1, 0);
    ++c[0];
    ++c[q - 2];
    if (!member(Monomial(q, c), ns[i]).value) f.all_contain_x1x2q = false;
  }
  if (f.nodes.empty()) f.all_contain_x1x2q = false;
  return f;
}

}  // namespace monoclone
