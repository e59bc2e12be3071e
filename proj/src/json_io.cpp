#include "mtk1/json_io.hpp"

#include <stdexcept>

namespace mtk1 {

Json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return to_string(r);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json k0_to_json(const K0Class& c) {
  Json out;
  out["coeffs"] = c.coeffs();
  out["pretty"] = c.to_string();
  Dim d = c.degree();
  out["dim"] = d ? Json(*d) : Json("-inf");
  return out;
}

namespace {

Json rows_to_json(const AffineCoset& c) {
  Json rows = Json::array();
  if (c.is_empty()) {
    // 0 = 1
    Json row = Json::array();
    for (int j = 0; j < c.ambient(); ++j) row.push_back(0);
    row.push_back(1);
    rows.push_back(row);
    return rows;
  }
  for (const auto& r : c.equations()) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(rational_to_json(v));
    rows.push_back(row);
  }
  return rows;
}

AffineCoset coset_from_json(const Json& j, int n, const std::string& where) {
  if (!j.is_array()) throw std::invalid_argument(where + ": expected a list of equation rows");
  std::vector<RatVec> rows;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n + 1)
      throw std::invalid_argument(where + ": each row needs " + std::to_string(n + 1) + " entries");
    RatVec r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    rows.push_back(std::move(r));
  }
  return AffineCoset::from_equations(n, rows);
}

std::optional<Block> block_from_json(const Json& j, int n, const std::string& where) {
  if (!j.is_object() || !j.contains("carrier")) throw std::invalid_argument(where + ": missing \"carrier\"");
  AffineCoset carrier = coset_from_json(j["carrier"], n, where + ".carrier");
  std::vector<AffineCoset> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) throw std::invalid_argument(where + ".holes: expected a list");
    for (std::size_t i = 0; i < j["holes"].size(); ++i)
      holes.push_back(coset_from_json(j["holes"][i], n, where + ".holes[" + std::to_string(i) + "]"));
  }
  return make_block(std::move(carrier), std::move(holes));
}

int ambient_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient") || !j["ambient"].is_number_integer())
    throw std::invalid_argument("missing integer \"ambient\"");
  int n = j["ambient"].get<int>();
  if (n < 1) throw std::invalid_argument("ambient must be at least 1");
  return n;
}

Json block_to_json(const Block& b) {
  Json out;
  out["carrier"] = rows_to_json(b.carrier);
  Json holes = Json::array();
  for (const auto& h : b.holes) holes.push_back(rows_to_json(h));
  out["holes"] = holes;
  return out;
}

}  // namespace

Json set_to_json(const DefinableSet& d) {
  Json out;
  out["ambient"] = d.ambient();
  Json blocks = Json::array();
  for (const auto& b : d.blocks()) blocks.push_back(block_to_json(b));
  out["blocks"] = blocks;
  return out;
}

DefinableSet set_from_json(const Json& j) {
  const int n = ambient_from_json(j);
  DefinableSet d(n);
  if (!j.contains("blocks") || !j["blocks"].is_array()) throw std::invalid_argument("missing \"blocks\" list");
  for (std::size_t i = 0; i < j["blocks"].size(); ++i)
    if (auto b = block_from_json(j["blocks"][i], n, "blocks[" + std::to_string(i) + "]"))
      d = set_union(d, DefinableSet::from_block(*b));
  return d;
}

Json affine_map_to_json(const AffineMap& m) {
  Json out;
  Json rows = Json::array();
  for (int i = 0; i < m.matrix.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.matrix.cols(); ++j) row.push_back(rational_to_json(m.matrix(i, j)));
    rows.push_back(row);
  }
  out["matrix"] = rows;
  Json off = Json::array();
  for (const auto& v : m.offset) off.push_back(rational_to_json(v));
  out["offset"] = off;
  return out;
}

PAMap pamap_from_json(const Json& j) {
  const int n = ambient_from_json(j);
  if (!j.contains("pieces") || !j["pieces"].is_array()) throw std::invalid_argument("missing \"pieces\" list");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    const Json& p = j["pieces"][i];
    const std::string where = "pieces[" + std::to_string(i) + "]";
    auto block = block_from_json(p, n, where);
    if (!block) throw std::invalid_argument(where + ": the piece is empty");
    RatMatrix a = RatMatrix::identity(n);
    if (p.contains("matrix")) {
      const Json& m = p["matrix"];
      if (!m.is_array() || static_cast<int>(m.size()) != n)
        throw std::invalid_argument(where + ".matrix: expected " + std::to_string(n) + " rows");
      for (int r = 0; r < n; ++r) {
        if (!m[r].is_array() || static_cast<int>(m[r].size()) != n)
          throw std::invalid_argument(where + ".matrix: expected " + std::to_string(n) + " columns");
        for (int c = 0; c < n; ++c) a(r, c) = rational_from_json(m[r][c]);
      }
    }
    RatVec b(n);
    if (p.contains("offset")) {
      const Json& o = p["offset"];
      if (!o.is_array() || static_cast<int>(o.size()) != n)
        throw std::invalid_argument(where + ".offset: expected " + std::to_string(n) + " entries");
      for (int c = 0; c < n; ++c) b[c] = rational_from_json(o[c]);
    }
    try {
      pieces.push_back({std::move(*block), AffineMap::make(std::move(a), std::move(b))});
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  std::optional<DefinableSet> domain;
  if (j.contains("domain")) {
    Json d = j["domain"];
    if (!d.contains("ambient")) d["ambient"] = n;
    domain = set_from_json(d);
  }
  return PAMap(n, std::move(pieces), std::move(domain));
}

Json pamap_to_json(const PAMap& f) {
  Json out;
  out["ambient"] = f.ambient();
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) {
    Json piece = block_to_json(p.block);
    Json m = affine_map_to_json(p.map);
    piece["matrix"] = m["matrix"];
    piece["offset"] = m["offset"];
    pieces.push_back(piece);
  }
  out["pieces"] = pieces;
  return out;
}

Json atom_to_json(const Atom& a) {
  Json out;
  switch (a.kind) {
    case Atom::Kind::Zmod:
      out["atom"] = "Zmod";
      out["k"] = a.k;
      break;
    case Atom::Kind::UnitsOf:
      out["atom"] = "UnitsOf";
      out["ring"] = a.ring.name();
      break;
    case Atom::Kind::GLab:
      out["atom"] = "GLab";
      out["n"] = a.level == kSymbolicLevel ? Json("n") : Json(a.level);
      out["ring"] = a.ring.name();
      break;
    case Atom::Kind::Undetermined:
      out["atom"] = "UndeterminedZmod2";
      out["k"] = 2;
      out["label"] = a.label;
      break;
  }
  return out;
}

Json formal_to_json(const FormalAbGroup& g) {
  Json summands = Json::array();
  for (const auto& s : g.summands()) {
    Json item = atom_to_json(s.atom);
    item["mult"] = s.mult.countable ? Json("countable") : Json(s.mult.count);
    summands.push_back(item);
  }
  Json out;
  out["summands"] = summands;
  return out;
}

Json expr_to_json(const FormalExpr& e) {
  Json out = formal_to_json(e.canonical());
  out["pretty"] = e.pretty();
  return out;
}

}  // namespace mtk1
