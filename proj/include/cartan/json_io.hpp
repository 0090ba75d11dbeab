#pragma once

#include <string>

#include <json.hpp>

#include "cartan/autgrp.hpp"
#include "cartan/derlie.hpp"
#include "cartan/special.hpp"

namespace cartan {

using Json = nlohmann::json;

// Element formats.  Scalars are decimal integers over F_p and coefficient
// lists over extensions.  Polynomial:
//   {"p": int, "n": int, "coeffs": [scalar, ...]}   (trailing zeros omissible)
// Derivation:
//   {"type": "derivation", "p": int, "n": int, "comps": [poly|coeff-list, ...]}
//   optionally tagged {"algebra": "S"}.
// Automorphism:
//   {"type": "automorphism", "p": int, "n": int, "images": [poly|coeff-list, ...]}

Json scalar_to_json(const Fp& a);
Json scalar_to_json(const FpExt& a);
Fp scalar_from_json(const Json& j, std::uint32_t p);
FpExt scalar_from_json(const Json& j, const std::shared_ptr<const FpExtCtx>& ctx);

Json poly_to_json(const TruncPoly<Fp>& f);
TruncPoly<Fp> poly_from_json(const Json& j);
TruncPoly<FpExt> poly_ext_from_json(const Json& j, std::uint32_t m);

Json derivation_to_json(const Derivation<Fp>& x);
/// Same document with an {"algebra": tag} marker (e.g. "S" for elements
/// meant as members of the special algebra).
Json derivation_to_json(const Derivation<Fp>& x, const std::string& algebra_tag);
Derivation<Fp> derivation_from_json(const Json& j);

// Slice-element documents realize to derivations:
//   {"kind": "delta-eps", "p", "n", "eps": [n-1 scalars]}   (element of W_(n-1))
//   {"kind": "omega",     "p", "n", "eps": [...], "f": [poly|coeff-list, ...]}
//   {"kind": "torus",     "p", "n", "index": i}              (i-th generator)
Json delta_eps_to_json(std::uint32_t p, std::uint32_t n, const std::vector<Fp>& eps);
Json omega_to_json(const std::vector<Fp>& eps, const std::vector<TruncPoly<Fp>>& f);
Derivation<Fp> slice_from_json(const Json& j);

Json automorphism_to_json(const Automorphism<Fp>& g);
Automorphism<Fp> automorphism_from_json(const Json& j);

Json invariants_to_json(const std::vector<Fp>& values, const std::string& algebra);

/// Parses any supported element document; returns its "type" value.
Json parse_document(const std::string& text);

/// Human-readable analysis used by the `inspect` command.
std::string inspect_element(const Json& doc);

} // namespace cartan
