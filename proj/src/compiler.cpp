#include "ltnn/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "ltnn/errors.hpp"
#include "ltnn/separability.hpp"

namespace ltnn {

namespace {

// 𝟙{⟨a, x⟩ − c > 0}, stored as the coprime integer vector (a…, c).
using Halfspace = Vec;

Halfspace make_halfspace(const Vec& a, const Rational& c) {
  Vec v = a;
  v.push_back(c);
  return primitive_integer(v);
}

Halfspace negated(const Halfspace& h) {
  Halfspace out = h;
  for (auto& q : out) q = -q;
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

// Halfspaces whose common complement is exactly the cell. Lower-dimensional
// cells reuse the facet hyperplanes of a full cell they are a face of.
std::vector<Halfspace> cell_halfspaces(const PolyhedralComplex& complex, std::size_t index) {
  const std::size_t n = complex.ambient_dim();
  const Polyhedron& c = complex.cell(index);
  std::vector<Halfspace> out;
  auto facets_of = [&](const Polyhedron& p, const Vec* tight_at) {
    for (std::size_t r : p.facet_rows()) {
      const auto& row = p.inequalities()[r];
      out.push_back(make_halfspace(row.a, row.b));
      if (tight_at && dot(row.a, *tight_at) == row.b) out.push_back(negated(out.back()));
    }
  };
  if (c.dim() == n) {
    facets_of(c, nullptr);
    return out;
  }
  std::optional<std::size_t> parent;
  for (const auto& [face, cell] : complex.face_of()) {
    if (face == index && complex.cell(cell).dim() == n) {
      parent = cell;
      break;
    }
  }
  if (parent) {
    facets_of(complex.cell(*parent), &c.relative_interior_point());
    return out;
  }
  for (const auto& row : c.equalities()) {
    if (is_zero(row.a)) continue;
    out.push_back(make_halfspace(row.a, row.b));
    out.push_back(negated(out.back()));
  }
  for (std::size_t r = 0; r < c.inequalities().size(); ++r) {
    if (!c.is_implicit(r)) continue;
    const auto& row = c.inequalities()[r];
    if (is_zero(row.a)) continue;
    out.push_back(make_halfspace(row.a, row.b));
    out.push_back(negated(out.back()));
  }
  for (std::size_t r : c.facet_rows()) {
    const auto& row = c.inequalities()[r];
    out.push_back(make_halfspace(row.a, row.b));
  }
  return out;
}

struct ExactLayers {
  Layer first;
  Layer second;
};

// First layer: the union of halfspaces of the emitted cells, deduplicated.
// Second layer: 𝟙{1 − Σ_{h ∈ cell} z_h > 0} per emitted cell.
ExactLayers assemble_exact(const PolyhedralComplex& complex, const std::vector<std::size_t>& emitted) {
  const std::size_t n = complex.ambient_dim();
  std::map<Halfspace, std::size_t> index;
  ExactLayers out;
  std::vector<std::vector<std::size_t>> uses;
  for (std::size_t c : emitted) {
    std::vector<std::size_t> u;
    for (const auto& h : cell_halfspaces(complex, c)) {
      auto [it, inserted] = index.emplace(h, out.first.width());
      if (inserted) {
        out.first.weights.emplace_back(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(n));
        out.first.bias.push_back(-h[n]);
      }
      u.push_back(it->second);
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    uses.push_back(std::move(u));
  }
  for (const auto& u : uses) {
    Vec w(out.first.width(), Rational(0));
    for (std::size_t i : u) w[i] = -1;
    out.second.weights.push_back(std::move(w));
    out.second.bias.push_back(1);
  }
  return out;
}

void validate_or_throw(const PolyhedralComplex& complex, const CompileOptions& options) {
  if (!options.validate) return;
  const auto report = validate_complex(complex, ValidationMode::Full, options.validation_samples, options.seed);
  if (report.ok()) return;
  std::string msg = "invalid polyhedral complex";
  for (std::size_t i = 0; i < report.violations.size() && i < 5; ++i) msg += "; " + report.violations[i].message;
  throw InputError(msg);
}

// Total coefficient per cell of Σ_P weight(P) · 𝟙_{relint P}.
std::map<std::size_t, Rational> combine_terms(const PolyhedralComplex& complex,
                                              const std::function<Rational(std::size_t)>& weight) {
  std::map<std::size_t, Rational> total;
  for (std::size_t p = 0; p < complex.size(); ++p) {
    const Rational w = weight(p);
    if (w == 0) continue;
    for (const auto& t : relint_terms(complex, p)) total[t.cell] += w * t.coefficient;
  }
  return total;
}

double volume_bound(std::size_t pieces, std::size_t n) {
  const double base = std::exp(1.0) * static_cast<double>(pieces) / static_cast<double>(n + 1);
  return 3.0 * std::pow(base, static_cast<double>(n + 1));
}

struct Cascade {
  Layer first;
  Layer second;
  std::vector<std::size_t> cells;  // full cell per second-layer neuron
};

// Facet hyperplanes oriented against a generic direction d, plus the
// constant neuron. Second-layer neuron i selects the half-open version of
// full cell i, so the selected cells partition ℝⁿ.
Cascade facet_cascade(const PolyhedralComplex& complex) {
  const std::size_t n = complex.ambient_dim();
  Cascade out;
  out.cells = complex.full_cells();
  std::map<Hyperplane, std::size_t> index;
  std::vector<Hyperplane> planes;
  for (std::size_t c : out.cells) {
    const auto& p = complex.cell(c);
    for (std::size_t r : p.facet_rows()) {
      const auto& row = p.inequalities()[r];
      auto h = Hyperplane::canonical(row.a, row.b);
      if (index.emplace(h, planes.size()).second) planes.push_back(h);
    }
  }
  Vec d(n);
  for (long t = 1;; ++t) {
    Rational power = 1;
    for (std::size_t i = 0; i < n; ++i, power *= t) d[i] = power;
    if (std::none_of(planes.begin(), planes.end(), [&](const Hyperplane& h) { return dot(h.a, d) == 0; })) break;
  }
  for (const auto& h : planes) {
    const bool flip = dot(h.a, d) > 0;
    Vec w = h.a;
    Rational c = h.b;
    if (flip) {
      for (auto& q : w) q = -q;
      c = -c;
    }
    out.first.weights.push_back(std::move(w));
    out.first.bias.push_back(-c);
  }
  const std::size_t constant = out.first.width();
  out.first.weights.emplace_back(n, Rational(0));
  out.first.bias.push_back(1);
  for (std::size_t c : out.cells) {
    const auto& p = complex.cell(c);
    Vec w(out.first.width(), Rational(0));
    long pos = 0, neg = 0;
    for (std::size_t r : p.facet_rows()) {
      const auto& row = p.inequalities()[r];
      const std::size_t k = index.at(Hyperplane::canonical(row.a, row.b));
      // The cell lies on the side where the neuron is off iff its row points the same way.
      if (dot(out.first.weights[k], row.a) > 0) {
        w[k] = -1;
        ++neg;
      } else {
        w[k] = 1;
        ++pos;
      }
    }
    w[constant] = neg;
    out.second.weights.push_back(std::move(w));
    out.second.bias.push_back(Rational(1, 2) - (pos + neg));
  }
  return out;
}

std::size_t full_cell_count(const PolyhedralComplex& complex) { return complex.full_cells().size(); }

}  // namespace

std::string to_string(CompileMode mode) {
  switch (mode) {
    case CompileMode::Exact: return "exact";
    case CompileMode::AlmostEverywhere: return "ae";
    case CompileMode::SltExact: return "slt";
    case CompileMode::SltCpwl: return "slt-cpwl";
    case CompileMode::Parity: return "parity";
    case CompileMode::Braid: return "braid";
  }
  return "?";
}

CompileMode parse_compile_mode(const std::string& text) {
  for (auto m : {CompileMode::Exact, CompileMode::AlmostEverywhere, CompileMode::SltExact, CompileMode::SltCpwl,
                 CompileMode::Parity, CompileMode::Braid}) {
    if (to_string(m) == text) return m;
  }
  throw InputError("unknown compile mode \"" + text + "\" (expected exact, ae, slt or slt-cpwl)");
}

LtNetwork compile_polyhedron_indicator(const Polyhedron& p) {
  const std::size_t n = p.ambient_dim();
  Layer first;
  for (const auto& row : p.inequalities()) {
    first.weights.push_back(row.a);
    first.bias.push_back(-row.b);
  }
  for (const auto& row : p.equalities()) {
    first.weights.push_back(row.a);
    first.bias.push_back(-row.b);
    Vec neg = row.a;
    for (auto& q : neg) q = -q;
    first.weights.push_back(std::move(neg));
    first.bias.push_back(row.b);
  }
  Layer second{{Vec(first.width(), Rational(-1))}, {Rational(1)}};
  return LtNetwork{n, {std::move(first), std::move(second)}, {{Rational(1)}, Rational(0)}};
}

std::vector<FaceTerm> relint_terms(const PolyhedralComplex& complex, std::size_t index) {
  const Polyhedron& p = complex.cell(index);
  const auto& facets = p.facet_rows();
  std::map<std::size_t, Rational> total;
  total[index] += 1;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    for (std::size_t j = start; j < facets.size(); ++j) {
      chosen.push_back(facets[j]);
      if (auto face = p.tighten(chosen)) {
        auto k = complex.find_cell(*face);
        if (!k) {
          throw InputError("face " + face->describe() + " of cell " + std::to_string(index) +
                           " is not a cell of the complex");
        }
        total[*k] += (chosen.size() % 2 == 0) ? 1 : -1;
        extend(j + 1);
      }
      chosen.pop_back();
    }
  };
  extend(0);
  std::vector<FaceTerm> out;
  for (auto& [cell, coef] : total) {
    if (coef != 0) out.push_back({cell, coef});
  }
  return out;
}

Rational eval_terms(const PolyhedralComplex& complex, const std::vector<FaceTerm>& terms, const Vec& x) {
  Rational s = 0;
  for (const auto& t : terms) {
    if (complex.cell(t.cell).contains(x)) s += t.coefficient;
  }
  return s;
}

CompileReport compile_pwc_exact(const PwcSpec& spec, const CompileOptions& options) {
  const auto& complex = spec.complex;
  if (spec.values.size() != complex.size()) throw InputError("one value per cell is required");
  validate_or_throw(complex, options);
  const auto total = combine_terms(complex, [&](std::size_t p) { return spec.values[p]; });
  std::vector<std::size_t> emitted;
  Vec out_weights;
  for (const auto& [cell, coef] : total) {
    if (coef == 0) continue;
    emitted.push_back(cell);
    out_weights.push_back(coef);
  }
  auto layers = assemble_exact(complex, emitted);
  LtNetwork net{complex.ambient_dim(), {std::move(layers.first), std::move(layers.second)},
                {std::move(out_weights), Rational(0)}};
  CompileReport r{net, net.size(), 3 * complex.size(), CompileMode::Exact};
  r.pieces = full_cell_count(complex);
  r.cells = complex.size();
  r.volume_bound = volume_bound(r.pieces, complex.ambient_dim());
  return r;
}

CompileReport compile_pwc_ae(const PwcSpec& spec, const CompileOptions& options) {
  const auto& complex = spec.complex;
  if (spec.values.size() != complex.size()) throw InputError("one value per cell is required");
  const std::size_t p = full_cell_count(complex);
  if (p < 2) {
    throw RefusalError("a.e. compilation needs at least 2 full-dimensional cells, found " + std::to_string(p) +
                       "; use exact mode");
  }
  validate_or_throw(complex, options);
  auto cascade = facet_cascade(complex);
  Vec out_weights;
  for (std::size_t c : cascade.cells) out_weights.push_back(spec.values[c]);
  LtNetwork net{complex.ambient_dim(), {std::move(cascade.first), std::move(cascade.second)},
                {std::move(out_weights), Rational(0)}};
  CompileReport r{net, net.size(), p * (p + 1) / 2 + 1, CompileMode::AlmostEverywhere};
  r.pieces = p;
  r.cells = complex.size();
  return r;
}

CompileReport compile_pwl_slt(const PwlSpec& spec, const CompileOptions& options) {
  const auto& complex = spec.complex;
  const std::size_t n = complex.ambient_dim();
  if (spec.pieces.size() != complex.size()) throw InputError("one affine piece per cell is required");
  validate_or_throw(complex, options);
  std::map<std::size_t, std::pair<Vec, Rational>> columns;
  for (std::size_t p = 0; p < complex.size(); ++p) {
    const auto& piece = spec.pieces[p];
    if (is_zero(piece.a) && piece.c == 0) continue;
    for (const auto& t : relint_terms(complex, p)) {
      auto& [col, b] = columns.try_emplace(t.cell, Vec(n, Rational(0)), Rational(0)).first->second;
      for (std::size_t i = 0; i < n; ++i) col[i] += t.coefficient * piece.a[i];
      b += t.coefficient * piece.c;
    }
  }
  std::vector<std::size_t> emitted;
  std::vector<std::pair<Vec, Rational>> kept;
  for (auto& [cell, cb] : columns) {
    if (is_zero(cb.first) && cb.second == 0) continue;
    emitted.push_back(cell);
    kept.push_back(std::move(cb));
  }
  auto layers = assemble_exact(complex, emitted);
  SltNetwork net{n, {std::move(layers.first), std::move(layers.second)}, Mat(n, Vec(kept.size())), Vec(kept.size())};
  for (std::size_t j = 0; j < kept.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) net.shortcut_a[i][j] = kept[j].first[i];
    net.shortcut_b[j] = kept[j].second;
  }
  CompileReport r{net, net.size(), 3 * complex.size(), CompileMode::SltExact};
  r.pieces = full_cell_count(complex);
  r.cells = complex.size();
  return r;
}

CompileReport compile_cpwl_slt(const PwlSpec& spec, const CompileOptions& options) {
  const auto& complex = spec.complex;
  const std::size_t n = complex.ambient_dim();
  if (!spec.continuous) throw RefusalError("spec is not flagged continuous; use slt mode");
  if (spec.pieces.size() != complex.size()) throw InputError("one affine piece per cell is required");
  validate_or_throw(complex, options);
  const auto continuity = check_continuity(spec);
  if (!continuity.ok()) throw InputError("spec is flagged continuous but " + continuity.violations.front().message);
  auto cascade = facet_cascade(complex);
  const std::size_t p = cascade.cells.size();
  SltNetwork net{n, {}, Mat(n, Vec(p)), Vec(p)};
  for (std::size_t j = 0; j < p; ++j) {
    const auto& piece = spec.pieces[cascade.cells[j]];
    for (std::size_t i = 0; i < n; ++i) net.shortcut_a[i][j] = piece.a[i];
    net.shortcut_b[j] = piece.c;
  }
  net.hidden = {std::move(cascade.first), std::move(cascade.second)};
  CompileReport r{net, net.size(), p * p + 1, CompileMode::SltCpwl};
  r.pieces = p;
  r.cells = complex.size();
  return r;
}

namespace {

// Layers 2 and 3 of the parity cascade over m input bits: u_i = 𝟙{Σz > i−1},
// then a test of Σz ≡ m (mod 2).
void append_parity_cascade(std::vector<Layer>& hidden, std::size_t m) {
  Layer count;
  for (std::size_t i = 1; i <= m; ++i) {
    count.weights.emplace_back(m, Rational(1));
    count.bias.push_back(-static_cast<long>(i - 1));
  }
  const bool odd = m % 2 == 1;
  Vec w(m);
  for (std::size_t i = 1; i <= m; ++i) w[i - 1] = ((i % 2 == 1) == odd) ? 1 : -1;
  Layer test{{std::move(w)}, {odd ? Rational(0) : Rational(1)}};
  hidden.push_back(std::move(count));
  hidden.push_back(std::move(test));
}

}  // namespace

LtNetwork generate_parity(std::size_t n) {
  if (n == 0) throw InputError("parity needs n >= 1");
  Layer signs;
  for (std::size_t i = 0; i < n; ++i) {
    Vec w(n, Rational(0));
    w[i] = 1;
    signs.weights.push_back(std::move(w));
    signs.bias.push_back(0);
  }
  LtNetwork net{n, {std::move(signs)}, {{Rational(1)}, Rational(0)}};
  append_parity_cascade(net.hidden, n);
  return net;
}

LtNetwork generate_braid(std::size_t n) {
  if (n < 2) throw InputError("braid needs n >= 2");
  Layer diffs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec w(n, Rational(0));
      w[j] = 1;
      w[i] = -1;
      diffs.weights.push_back(std::move(w));
      diffs.bias.push_back(0);
    }
  }
  const std::size_t m = diffs.width();
  LtNetwork net{n, {std::move(diffs)}, {{Rational(1)}, Rational(0)}};
  append_parity_cascade(net.hidden, m);
  return net;
}

CompileReport report_parity(std::size_t n) {
  auto net = generate_parity(n);
  return CompileReport{net, net.size(), 2 * n + 1, CompileMode::Parity};
}

CompileReport report_braid(std::size_t n) {
  auto net = generate_braid(n);
  const std::size_t m = n * (n - 1) / 2;
  return CompileReport{net, net.size(), 2 * m + 1, CompileMode::Braid};
}

}  // namespace ltnn
