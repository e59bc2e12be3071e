#pragma once

#include "json.hpp"

#include "mtk1/automorphism.hpp"
#include "mtk1/definable.hpp"
#include "mtk1/k1_symbolic.hpp"

namespace mtk1 {

using Json = nlohmann::ordered_json;

/// Integers become JSON numbers, everything else a "p/q" string.
Json rational_to_json(const Rational& r);
/// Accepts integers or strings "p", "p/q".
Rational rational_from_json(const Json& j);

/// {"coeffs": [c0, c1, ...], "pretty": "X^2 - X", "dim": 2 | "-inf"}
Json k0_to_json(const K0Class& c);

/// {"ambient": n, "blocks": [{"carrier": rows, "holes": [rows, ...]}]}, each
/// row [a1, ..., an, b] meaning a . x = b.
Json set_to_json(const DefinableSet& d);
DefinableSet set_from_json(const Json& j);

Json affine_map_to_json(const AffineMap& m);

/// {"ambient": n, "domain": optional set, "pieces": [{"carrier", "holes",
/// "matrix", "offset"}]}. Throws std::invalid_argument on malformed input.
PAMap pamap_from_json(const Json& j);
Json pamap_to_json(const PAMap& f);

Json atom_to_json(const Atom& a);
/// {"summands": [{"atom": "Zmod", "k": 2, "mult": "countable"}, ...]}
Json formal_to_json(const FormalAbGroup& g);
/// formal_to_json of the canonical form plus "pretty".
Json expr_to_json(const FormalExpr& e);

}  // namespace mtk1
