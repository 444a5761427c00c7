#include "ltnn/spec_io.hpp"

#include "ltnn/errors.hpp"
#include "ltnn/json_io.hpp"

namespace ltnn {

namespace {

using json_io::json;

std::vector<LinearRow> parse_rows(const json& cell, const char* key, std::size_t n, const std::string& path) {
  std::vector<LinearRow> rows;
  auto it = cell.find(key);
  if (it == cell.end()) return rows;
  const std::string p = path + "." + key;
  const Mat m = json_io::matrix(*it, p);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != n + 1) {
      throw ParseError(p + "[" + std::to_string(i) + "]",
                       "expected " + std::to_string(n + 1) + " entries (coefficients then right-hand side)");
    }
    LinearRow r;
    r.a.assign(m[i].begin(), m[i].end() - 1);
    r.b = m[i].back();
    rows.push_back(std::move(r));
  }
  return rows;
}

json rows_to_json(const std::vector<LinearRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    Vec v = r.a;
    v.push_back(r.b);
    a.push_back(json_io::to_json(v));
  }
  return a;
}

json complex_cells(const PolyhedralComplex& cx) {
  json cells = json::array();
  for (std::size_t i = 0; i < cx.size(); ++i) {
    json c;
    c["dim"] = cx.declared_dims()[i];
    c["leq"] = rows_to_json(cx.cell(i).inequalities());
    if (!cx.cell(i).equalities().empty()) c["eq"] = rows_to_json(cx.cell(i).equalities());
    cells.push_back(std::move(c));
  }
  return cells;
}

json faces_json(const PolyhedralComplex& cx) {
  json f = json::array();
  for (const auto& [a, b] : cx.face_of()) f.push_back(json::array({a, b}));
  return f;
}

}  // namespace

FunctionSpec parse_spec(const json& j) {
  const std::size_t n = json_io::count(json_io::field(j, "dim", "$"), "$.dim");
  const json& cells_j = json_io::field(j, "cells", "$");
  if (!cells_j.is_array() || cells_j.empty()) throw ParseError("$.cells", "expected a nonempty array of cells");

  std::vector<Polyhedron> cells;
  std::vector<std::size_t> dims;
  Vec values;
  std::vector<AffinePiece> pieces;
  bool any_affine = false;
  for (std::size_t i = 0; i < cells_j.size(); ++i) {
    const std::string path = "$.cells[" + std::to_string(i) + "]";
    const json& c = cells_j[i];
    dims.push_back(json_io::count(json_io::field(c, "dim", path), path + ".dim"));
    auto leq = parse_rows(c, "leq", n, path);
    auto eq = parse_rows(c, "eq", n, path);
    try {
      cells.emplace_back(n, std::move(leq), std::move(eq));
    } catch (const InputError& e) {
      throw ParseError(path, e.what());
    }
    const bool has_value = c.contains("value");
    const bool has_affine = c.contains("affine");
    if (has_value == has_affine) throw ParseError(path, "each cell needs exactly one of \"value\" or \"affine\"");
    if (has_value) {
      Rational v = json_io::rational(c["value"], path + ".value");
      values.push_back(v);
      pieces.push_back({Vec(n, Rational(0)), v});
    } else {
      any_affine = true;
      const json& aff = c["affine"];
      AffinePiece p{json_io::vector(json_io::field(aff, "a", path + ".affine"), path + ".affine.a"),
                    json_io::rational(json_io::field(aff, "c", path + ".affine"), path + ".affine.c")};
      if (p.a.size() != n) throw ParseError(path + ".affine.a", "expected " + std::to_string(n) + " coefficients");
      values.push_back(p.c);
      pieces.push_back(std::move(p));
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> faces;
  if (auto it = j.find("faces"); it != j.end()) {
    if (!it->is_array()) throw ParseError("$.faces", "expected an array of [face, cell] pairs");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = "$.faces[" + std::to_string(k) + "]";
      const json& pr = (*it)[k];
      if (!pr.is_array() || pr.size() != 2) throw ParseError(path, "expected [face, cell]");
      const auto f = json_io::count(pr[0], path + "[0]");
      const auto c = json_io::count(pr[1], path + "[1]");
      if (f >= cells.size() || c >= cells.size()) throw ParseError(path, "cell index out of range");
      faces.emplace_back(f, c);
    }
  }

  PolyhedralComplex complex(n, std::move(cells), std::move(dims), std::move(faces));
  const bool continuous = j.value("continuous", false);
  if (any_affine || continuous) return PwlSpec{std::move(complex), std::move(pieces), continuous};
  return PwcSpec{std::move(complex), std::move(values)};
}

FunctionSpec parse_spec_text(const std::string& text, const std::string& source) {
  return parse_spec(json_io::parse(text, source));
}

json spec_to_json(const PwcSpec& spec) {
  json j;
  j["dim"] = spec.complex.ambient_dim();
  j["cells"] = complex_cells(spec.complex);
  for (std::size_t i = 0; i < spec.values.size(); ++i) j["cells"][i]["value"] = json_io::to_json(spec.values[i]);
  j["faces"] = faces_json(spec.complex);
  return j;
}

json spec_to_json(const PwlSpec& spec) {
  json j;
  j["dim"] = spec.complex.ambient_dim();
  j["continuous"] = spec.continuous;
  j["cells"] = complex_cells(spec.complex);
  for (std::size_t i = 0; i < spec.pieces.size(); ++i) {
    j["cells"][i]["affine"] = {{"a", json_io::to_json(spec.pieces[i].a)}, {"c", json_io::to_json(spec.pieces[i].c)}};
  }
  j["faces"] = faces_json(spec.complex);
  return j;
}

}  // namespace ltnn
