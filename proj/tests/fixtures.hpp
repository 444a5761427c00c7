#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ltnn/polyhedra.hpp"
#include "ltnn/random.hpp"

namespace fixtures {

using ltnn::LinearRow;
using ltnn::Polyhedron;
using ltnn::Rational;
using ltnn::Vec;

inline Vec vec(std::initializer_list<Rational> xs) { return Vec(xs); }

inline LinearRow row(std::initializer_list<Rational> a, Rational b) { return LinearRow{Vec(a), b}; }

inline Polyhedron poly(std::size_t n, std::vector<LinearRow> leq, std::vector<LinearRow> eq = {}) {
  return Polyhedron(n, std::move(leq), std::move(eq));
}

// (−∞,0], {0}, [0,1], {1}, [1,∞) with values 1, 2, 2, 2, 3.
inline ltnn::PwcSpec step_function() {
  std::vector<Polyhedron> cells = {
      poly(1, {row({1}, 0)}),
      poly(1, {}, {row({1}, 0)}),
      poly(1, {row({-1}, 0), row({1}, 1)}),
      poly(1, {}, {row({1}, 1)}),
      poly(1, {row({-1}, -1)}),
  };
  return {ltnn::PolyhedralComplex(1, std::move(cells)), {1, 2, 2, 2, 3}};
}

// Closed unit-square indicator on the arrangement of x=0, x=1, y=0, y=1.
inline ltnn::PwcSpec square_grid() {
  // Each axis: (−∞,0], {0}, [0,1], {1}, [1,∞).
  struct Part {
    std::vector<std::pair<Rational, Rational>> leq;  // coefficient, rhs
    std::vector<Rational> eq;
    bool inside;
  };
  const std::vector<Part> parts = {
      {{{1, 0}}, {}, false},
      {{}, {0}, true},
      {{{-1, 0}, {1, 1}}, {}, true},
      {{}, {1}, true},
      {{{-1, -1}}, {}, false},
  };
  std::vector<Polyhedron> cells;
  Vec values;
  for (const auto& px : parts) {
    for (const auto& py : parts) {
      std::vector<LinearRow> leq, eq;
      for (auto [c, b] : px.leq) leq.push_back(row({c, 0}, b));
      for (auto [c, b] : py.leq) leq.push_back(row({0, c}, b));
      for (auto b : px.eq) eq.push_back(row({1, 0}, b));
      for (auto b : py.eq) eq.push_back(row({0, 1}, b));
      cells.push_back(poly(2, leq, eq));
      values.push_back(px.inside && py.inside ? 1 : 0);
    }
  }
  return {ltnn::PolyhedralComplex(2, std::move(cells)), values};
}

// Unit square plus four outer regions bounded by the diagonals through its corners.
inline ltnn::PwcSpec diagonal_square() {
  std::vector<Polyhedron> cells = {
      poly(2, {row({-1, 0}, 0), row({1, 0}, 1), row({0, -1}, 0), row({0, 1}, 1)}),
      poly(2, {row({-1, 0}, -1), row({-1, 1}, 0), row({-1, -1}, -1)}),  // east
      poly(2, {row({0, -1}, -1), row({1, -1}, 0), row({-1, -1}, -1)}),  // north
      poly(2, {row({1, 0}, 0), row({1, 1}, 1), row({1, -1}, 0)}),       // west
      poly(2, {row({0, 1}, 0), row({-1, 1}, 0), row({1, 1}, 1)}),       // south
      // square edges
      poly(2, {row({-1, 0}, 0), row({1, 0}, 1)}, {row({0, 1}, 0)}),
      poly(2, {row({0, -1}, 0), row({0, 1}, 1)}, {row({1, 0}, 1)}),
      poly(2, {row({-1, 0}, 0), row({1, 0}, 1)}, {row({0, 1}, 1)}),
      poly(2, {row({0, -1}, 0), row({0, 1}, 1)}, {row({1, 0}, 0)}),
      // diagonal rays from the corners
      poly(2, {row({-1, 0}, -1)}, {row({1, 1}, 1)}),
      poly(2, {row({-1, 0}, -1)}, {row({1, -1}, 0)}),
      poly(2, {row({1, 0}, 0)}, {row({1, 1}, 1)}),
      poly(2, {row({1, 0}, 0)}, {row({1, -1}, 0)}),
      // corners
      poly(2, {}, {row({1, 0}, 0), row({0, 1}, 0)}),
      poly(2, {}, {row({1, 0}, 1), row({0, 1}, 0)}),
      poly(2, {}, {row({1, 0}, 1), row({0, 1}, 1)}),
      poly(2, {}, {row({1, 0}, 0), row({0, 1}, 1)}),
  };
  Vec values = {1, 0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1};
  return {ltnn::PolyhedralComplex(2, std::move(cells)), values};
}

inline long cross(const std::pair<long, long>& u, const std::pair<long, long>& v) {
  return u.first * v.second - u.second * v.first;
}

// Fan of 3..6 sectors around a random integer centre with random cell values.
inline ltnn::PwcSpec random_fan(std::uint64_t seed) {
  ltnn::Rng rng(seed);
  using Dir = std::pair<long, long>;
  std::vector<Dir> rays;
  for (;;) {
    const std::size_t k = 3 + rng.below(4);
    rays.clear();
    while (rays.size() < k) {
      Dir d{rng.between(-5, 5), rng.between(-5, 5)};
      if (d.first == 0 && d.second == 0) continue;
      const bool dup = std::any_of(rays.begin(), rays.end(), [&](const Dir& r) {
        return cross(r, d) == 0 && r.first * d.first + r.second * d.second > 0;
      });
      if (!dup) rays.push_back(d);
    }
    auto half = [](const Dir& d) { return d.second > 0 || (d.second == 0 && d.first > 0) ? 0 : 1; };
    std::sort(rays.begin(), rays.end(), [&](const Dir& a, const Dir& b) {
      if (half(a) != half(b)) return half(a) < half(b);
      return cross(a, b) > 0;
    });
    bool ok = true;
    for (std::size_t i = 0; i < k; ++i) ok = ok && cross(rays[i], rays[(i + 1) % k]) > 0;
    if (ok) break;
  }
  const long cx = rng.between(-3, 3), cy = rng.between(-3, 3);
  const std::size_t k = rays.size();
  // cross(r, x − c) ≥ 0  ⇔  r₂x₁ − r₁x₂ ≤ r₂c₁ − r₁c₂.
  auto left_of = [&](const Dir& r) { return row({r.second, -r.first}, r.second * cx - r.first * cy); };
  auto right_of = [&](const Dir& r) { return row({-r.second, r.first}, -r.second * cx + r.first * cy); };
  std::vector<Polyhedron> cells;
  for (std::size_t i = 0; i < k; ++i) cells.push_back(poly(2, {left_of(rays[i]), right_of(rays[(i + 1) % k])}));
  for (const auto& r : rays) {
    cells.push_back(poly(2, {row({-r.first, -r.second}, -(r.first * cx + r.second * cy))},
                         {row({r.second, -r.first}, r.second * cx - r.first * cy)}));
  }
  cells.push_back(poly(2, {}, {row({1, 0}, cx), row({0, 1}, cy)}));
  Vec values;
  for (std::size_t i = 0; i < cells.size(); ++i) values.push_back(rng.rational(5, 7));
  return {ltnn::PolyhedralComplex(2, std::move(cells)), values};
}

// 𝟙{x₁ ≥ 0} in ℝ².
inline ltnn::PwcSpec halfplane_indicator() {
  std::vector<Polyhedron> cells = {
      poly(2, {row({1, 0}, 0)}),
      poly(2, {row({-1, 0}, 0)}),
      poly(2, {}, {row({1, 0}, 0)}),
  };
  return {ltnn::PolyhedralComplex(2, std::move(cells)), {0, 1, 1}};
}

inline ltnn::PwcSpec constant(std::size_t n, Rational v) {
  return {ltnn::PolyhedralComplex(n, {Polyhedron::whole_space(n)}), {v}};
}

inline ltnn::PwlSpec abs_spec() {
  std::vector<Polyhedron> cells = {
      poly(1, {row({1}, 0)}),
      poly(1, {}, {row({1}, 0)}),
      poly(1, {row({-1}, 0)}),
  };
  return {ltnn::PolyhedralComplex(1, std::move(cells)), {{{-1}, 0}, {{0}, 0}, {{1}, 0}}, true};
}

// 0 for x < 0, x + 1 for x ≥ 0.
inline ltnn::PwlSpec jump_spec() {
  std::vector<Polyhedron> cells = {
      poly(1, {row({1}, 0)}),
      poly(1, {}, {row({1}, 0)}),
      poly(1, {row({-1}, 0)}),
  };
  return {ltnn::PolyhedralComplex(1, std::move(cells)), {{{0}, 0}, {{1}, 1}, {{1}, 1}}, false};
}

inline ltnn::PwlSpec max_spec() {
  std::vector<Polyhedron> cells = {
      poly(2, {row({-1, 1}, 0)}),
      poly(2, {row({1, -1}, 0)}),
      poly(2, {}, {row({1, -1}, 0)}),
  };
  return {ltnn::PolyhedralComplex(2, std::move(cells)), {{{1, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}}, true};
}

inline ltnn::PwlSpec identity_spec() {
  return {ltnn::PolyhedralComplex(1, {Polyhedron::whole_space(1)}), {{{1}, 0}}, true};
}

}  // namespace fixtures
