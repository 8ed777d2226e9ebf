#pragma once

#include <string>

#include <json.hpp>

#include "monoclone/clone.hpp"
#include "monoclone/lattice.hpp"
#include "monoclone/minorset.hpp"
#include "monoclone/semiaffine.hpp"

namespace monoclone {

using Json = nlohmann::ordered_json;

/// {"q": 5, "counts": {"2": 2, "3": 1}}, residues ascending, zeros omitted.
Json to_json(const Monomial& m);
Monomial monomial_from_json(const Json& j);

/// {"q", "cap", "stable", "generators", "members"}; members are omitted for
/// clones that are only characterized.
Json to_json(const Clone& c);
/// Regenerates from the generators at the recorded cap and checks the
/// member list if present. Throws ParseError on malformed input or a member
/// list that does not match.
Clone clone_from_json(const Json& j);

Json to_json(const CloneLattice& l);
Json to_json(const LinearForm& f);
Json to_json(const LinearClone& c);
Json to_json(const SemiaffineLattice& l);
Json to_json(const QMinorSet& s);

/// Generator lists joined by ", " in braces, e.g. "{x1^2, x1*x2^2}".
std::string label(const std::vector<Monomial>& gens);
std::string label(const std::vector<LinearForm>& gens);

/// Hasse diagrams drawn bottom to top.
std::string to_dot(const CloneLattice& l);
std::string to_dot(const SemiaffineLattice& l);

}  // namespace monoclone
