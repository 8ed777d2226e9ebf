#include "monoclone/serialize.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "monoclone/error.hpp"

namespace monoclone {

namespace {

template <class T>
std::string join_labels(const std::vector<T>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += to_string(xs[i]);
  }
  return s + "}";
}

Json edges_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const auto& [a, b] : edges) out.push_back({a, b});
  return out;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

template <class Node>
std::string dot(const HasseDiagram<Node>& d, const std::string& title) {
  std::ostringstream os;
  os << "digraph \"" << escape(title) << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << escape(label(d.nodes[i].generators())) << "\"];\n";
  }
  for (const auto& [a, b] : d.edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

}  // namespace

std::string label(const std::vector<Monomial>& gens) { return join_labels(gens); }
std::string label(const std::vector<LinearForm>& gens) { return join_labels(gens); }

Json to_json(const Monomial& m) {
  Json counts = Json::object();
  for (std::uint32_t r = 1; r <= m.order(); ++r) {
    if (m.count(r)) counts[std::to_string(r)] = m.count(r);
  }
  return {{"q", m.q()}, {"counts", counts}};
}

Monomial monomial_from_json(const Json& j) {
  try {
    const auto q = j.at("q").get<std::uint32_t>();
    const auto fp = FieldParam::make(q);
    std::vector<std::uint32_t> counts(q - 1, 0);
    for (const auto& [k, v] : j.at("counts").items()) {
      const auto r = std::stoul(k);
      if (r == 0 || r >= q) bad("residue " + k + " out of range");
      counts[r - 1] = v.get<std::uint32_t>();
    }
    return Monomial(q, std::move(counts));
  } catch (const Json::exception& e) {
    bad(std::string("malformed monomial: ") + e.what());
  } catch (const std::logic_error&) {
    bad("malformed monomial: residue keys must be integers");
  }
}

Json to_json(const Clone& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators()) gens.push_back(to_string(g));
  Json j = {{"q", c.field().q()},
            {"cap", c.cap().per_residue_cap},
            {"stable", c.stable()},
            {"generators", gens}};
  if (c.materialized()) {
    Json ms = Json::array();
    for (const auto& m : c.members()) ms.push_back(to_string(m));
    j["members"] = ms;
  }
  return j;
}

Clone clone_from_json(const Json& j) {
  try {
    const auto fp = FieldParam::make(j.at("q").get<std::uint32_t>());
    std::vector<Monomial> gens;
    for (const auto& g : j.at("generators")) {
      gens.push_back(parse_monomial(g.get<std::string>(), fp));
    }
    const auto cap = CapPolicy::with_cap(fp, j.at("cap").get<std::uint32_t>());
    auto c = generate(gens, fp, cap);
    if (j.contains("members")) {
      std::vector<Monomial> listed;
      for (const auto& m : j.at("members")) {
        listed.push_back(parse_monomial(m.get<std::string>(), fp));
      }
      std::sort(listed.begin(), listed.end());
      if (listed != c.members()) bad("member list does not match the generators");
    }
    return c;
  } catch (const Json::exception& e) {
    bad(std::string("malformed clone: ") + e.what());
  }
}

Json to_json(const CloneLattice& l) {
  const auto& d = l.diagram;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& c = d.nodes[i];
    Json gens = Json::array();
    for (const auto& g : c.generators()) gens.push_back(to_string(g));
    nodes.push_back({{"id", i}, {"generators", gens}, {"size", c.size()}, {"stable", c.stable()}});
  }
  const auto q = d.nodes.empty() ? 0u : d.nodes.front().field().q();
  Json j = {{"q", q},
            {"cap", l.cap},
            {"width_bound", l.width_bound},
            {"complete", l.complete},
            {"stable", l.stable},
            {"nodes", nodes},
            {"edges", edges_json(d.edges)},
            {"bottom", d.bottom},
            {"top", d.top}};
  if (!l.chain_witness.empty()) {
    Json w = Json::array();
    for (const auto& c : l.chain_witness) w.push_back(label(c.generators()));
    j["chain_witness"] = w;
  }
  return j;
}

Json to_json(const LinearForm& f) {
  Json counts = Json::object();
  for (std::uint32_t a = 1; a < f.modulus(); ++a) {
    if (f.count(a)) counts[std::to_string(a)] = f.count(a);
  }
  return {{"modulus", f.modulus()}, {"counts", counts}};
}

Json to_json(const LinearClone& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators()) gens.push_back(to_string(g));
  Json ms = Json::array();
  for (const auto& m : c.members()) ms.push_back(to_string(m));
  return {{"modulus", c.modulus()},
          {"cap", c.cap()},
          {"stable", c.stable()},
          {"generators", gens},
          {"members", ms}};
}

Json to_json(const SemiaffineLattice& l) {
  const auto& d = l.diagram;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    Json gens = Json::array();
    for (const auto& g : d.nodes[i].generators()) gens.push_back(to_string(g));
    nodes.push_back({{"id", i}, {"generators", gens}, {"size", d.nodes[i].size()}});
  }
  const auto n = d.nodes.empty() ? 0u : d.nodes.front().modulus();
  return {{"modulus", n},
          {"cap", l.cap},
          {"nodes", nodes},
          {"edges", edges_json(d.edges)},
          {"bottom", d.bottom},
          {"top", d.top}};
}

Json to_json(const QMinorSet& s) {
  Json pts = Json::array();
  for (const auto& p : s.points()) pts.push_back(p);
  return {{"q", s.q()}, {"bound", s.bound()}, {"points", pts}};
}

std::string to_dot(const CloneLattice& l) {
  const auto q = l.diagram.nodes.empty() ? 0u : l.diagram.nodes.front().field().q();
  return dot(l.diagram, "monomial clones q=" + std::to_string(q));
}

std::string to_dot(const SemiaffineLattice& l) {
  const auto n = l.diagram.nodes.empty() ? 0u : l.diagram.nodes.front().modulus();
  return dot(l.diagram, "semi-affine clones Z_" + std::to_string(n));
}

}  // namespace monoclone
