#include "ltnn/polyhedra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ltnn/errors.hpp"
#include "ltnn/linalg.hpp"
#include "ltnn/random.hpp"

namespace ltnn {

Hyperplane Hyperplane::canonical(const Vec& a, const Rational& b) {
  Vec v = a;
  v.push_back(b);
  v = primitive_integer(v);
  auto lead = std::find_if(v.begin(), v.end() - 1, [](const Rational& q) { return q != 0; });
  if (lead != v.end() - 1 && *lead < 0) {
    for (auto& q : v) q = -q;
  }
  Hyperplane h;
  h.b = v.back();
  v.pop_back();
  h.a = std::move(v);
  return h;
}

namespace {

void check_rows(std::size_t n, const std::vector<LinearRow>& rows, const char* what) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].a.size() != n) {
      throw InputError(std::string(what) + " row " + std::to_string(i) + " has " + std::to_string(rows[i].a.size()) +
                       " coefficients, expected " + std::to_string(n));
    }
  }
}

std::vector<Constraint> to_constraints(const std::vector<LinearRow>& leq, const std::vector<LinearRow>& eq) {
  std::vector<Constraint> cs;
  cs.reserve(leq.size() + eq.size());
  for (const auto& r : leq) cs.push_back({r.a, Relation::Leq, r.b});
  for (const auto& r : eq) cs.push_back({r.a, Relation::Eq, r.b});
  return cs;
}

std::optional<Rational> maximize_over(std::size_t n, std::vector<Constraint> cs, const Vec& c, Vec* argmax = nullptr) {
  LinearProgram lp;
  lp.num_vars = n;
  lp.objective = c;
  lp.constraints = std::move(cs);
  auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  if (argmax) *argmax = std::move(r.witness);
  return r.optimum;
}

Vec negated(const Vec& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(-q);
  return out;
}

std::string format_row(const Vec& a, const Rational& b, const char* rel) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] == 0) continue;
    Rational c = a[j];
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    } else if (c < 0) {
      os << "-";
      c = -c;
    }
    if (c != 1) os << to_string(c) << "*";
    os << "x" << (j + 1);
    first = false;
  }
  if (first) os << "0";
  os << ' ' << rel << ' ' << to_string(b);
  return os.str();
}

}  // namespace

Polyhedron::Polyhedron(std::size_t ambient_dim, std::vector<LinearRow> inequalities, std::vector<LinearRow> equalities)
    : n_(ambient_dim), leq_(std::move(inequalities)), eq_(std::move(equalities)) {
  check_rows(n_, leq_, "inequality");
  check_rows(n_, eq_, "equality");
  auto p = feasible_point(n_, to_constraints(leq_, eq_));
  if (!p) throw InputError("polyhedron " + describe() + " is empty");
  analyse(std::move(*p));
}

Polyhedron::Polyhedron(Unchecked, std::size_t n, std::vector<LinearRow> leq, std::vector<LinearRow> eq, Vec feasible)
    : n_(n), leq_(std::move(leq)), eq_(std::move(eq)) {
  analyse(std::move(feasible));
}

std::optional<Polyhedron> Polyhedron::try_make(std::size_t ambient_dim, std::vector<LinearRow> inequalities,
                                               std::vector<LinearRow> equalities) {
  check_rows(ambient_dim, inequalities, "inequality");
  check_rows(ambient_dim, equalities, "equality");
  auto p = feasible_point(ambient_dim, to_constraints(inequalities, equalities));
  if (!p) return std::nullopt;
  return Polyhedron(Unchecked{}, ambient_dim, std::move(inequalities), std::move(equalities), std::move(*p));
}

void Polyhedron::analyse(Vec feasible) {
  const std::size_t m = leq_.size();
  const auto cs = to_constraints(leq_, eq_);

  // A row is implicit iff min over P of ⟨a, x⟩ equals b. Any point with
  // positive slack proves a row non-implicit without an LP.
  std::vector<bool> slack_seen(m, false);
  auto note_slacks = [&](const Vec& x) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!slack_seen[i] && dot(leq_[i].a, x) < leq_[i].b) slack_seen[i] = true;
    }
  };
  note_slacks(feasible);
  implicit_.assign(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (slack_seen[i]) continue;
    Vec argmax;
    auto best = maximize_over(n_, cs, negated(leq_[i].a), &argmax);
    if (best) {
      if (-*best == leq_[i].b) {
        implicit_[i] = true;
      } else {
        note_slacks(argmax);
      }
    }
  }

  Mat hull;
  std::vector<Constraint> hull_cs;
  for (const auto& r : eq_) {
    hull.push_back(r.a);
    hull_cs.push_back({r.a, Relation::Eq, r.b});
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!implicit_[i]) continue;
    hull.push_back(leq_[i].a);
    hull_cs.push_back({leq_[i].a, Relation::Eq, leq_[i].b});
  }
  dim_ = n_ - linalg::rank(hull, n_);
  directions_ = linalg::nullspace(hull, n_);

  // Relative facets: drop redundant non-implicit rows one at a time.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m; ++i) {
    if (!implicit_[i]) kept.push_back(i);
  }
  for (std::size_t idx = 0; idx < kept.size();) {
    const std::size_t row = kept[idx];
    std::vector<Constraint> others = hull_cs;
    for (auto k : kept) {
      if (k != row) others.push_back({leq_[k].a, Relation::Leq, leq_[k].b});
    }
    auto best = maximize_over(n_, std::move(others), leq_[row].a);
    if (best && *best <= leq_[row].b) {
      kept.erase(kept.begin() + static_cast<long>(idx));
    } else {
      ++idx;
    }
  }
  facet_rows_ = kept;

  // Relative-interior point: maximise a common slack t ≤ 1 on non-implicit rows.
  if (kept.empty() && std::none_of(implicit_.begin(), implicit_.end(), [](bool b) { return !b; })) {
    relint_point_ = std::move(feasible);
  } else {
    LinearProgram lp;
    lp.num_vars = n_ + 1;
    lp.objective.assign(n_ + 1, Rational(0));
    lp.objective[n_] = 1;
    for (const auto& c : hull_cs) {
      Vec row = c.coefficients;
      row.emplace_back(0);
      lp.add(std::move(row), Relation::Eq, c.rhs);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (implicit_[i]) continue;
      Vec row = leq_[i].a;
      row.emplace_back(1);
      lp.add(std::move(row), Relation::Leq, leq_[i].b);
    }
    Vec cap(n_ + 1, Rational(0));
    cap[n_] = 1;
    lp.add(std::move(cap), Relation::Leq, 1);
    auto r = solve_lp(lp);
    relint_point_.assign(r.witness.begin(), r.witness.begin() + static_cast<long>(n_));
  }
}

bool Polyhedron::contains(const Vec& x) const {
  if (x.size() != n_) throw InputError("point dimension " + std::to_string(x.size()) + " != " + std::to_string(n_));
  for (const auto& r : eq_) {
    if (dot(r.a, x) != r.b) return false;
  }
  for (const auto& r : leq_) {
    if (dot(r.a, x) > r.b) return false;
  }
  return true;
}

bool Polyhedron::in_relative_interior(const Vec& x) const {
  if (x.size() != n_) throw InputError("point dimension " + std::to_string(x.size()) + " != " + std::to_string(n_));
  for (const auto& r : eq_) {
    if (dot(r.a, x) != r.b) return false;
  }
  for (std::size_t i = 0; i < leq_.size(); ++i) {
    const Rational lhs = dot(leq_[i].a, x);
    if (implicit_[i] ? lhs != leq_[i].b : lhs >= leq_[i].b) return false;
  }
  return true;
}

std::vector<Constraint> Polyhedron::constraints() const { return to_constraints(leq_, eq_); }

std::optional<Polyhedron> Polyhedron::tighten(const std::vector<std::size_t>& rows) const {
  std::vector<LinearRow> leq, eq = eq_;
  for (std::size_t i = 0; i < leq_.size(); ++i) {
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) {
      eq.push_back(leq_[i]);
    } else {
      leq.push_back(leq_[i]);
    }
  }
  return try_make(n_, std::move(leq), std::move(eq));
}

std::optional<Polyhedron> Polyhedron::intersect(const Polyhedron& other) const {
  if (other.n_ != n_) throw InputError("intersecting polyhedra of different ambient dimension");
  auto leq = leq_;
  leq.insert(leq.end(), other.leq_.begin(), other.leq_.end());
  auto eq = eq_;
  eq.insert(eq.end(), other.eq_.begin(), other.eq_.end());
  return try_make(n_, std::move(leq), std::move(eq));
}

std::optional<Rational> Polyhedron::maximize(const Vec& c) const { return maximize_over(n_, constraints(), c); }

bool Polyhedron::subset_of(const Polyhedron& other) const {
  if (other.n_ != n_) return false;
  if (!other.contains(relint_point_)) return false;
  for (const auto& r : other.leq_) {
    auto best = maximize(r.a);
    if (!best || *best > r.b) return false;
  }
  for (const auto& r : other.eq_) {
    auto hi = maximize(r.a);
    auto lo = maximize(negated(r.a));
    if (!hi || !lo || *hi != r.b || -*lo != r.b) return false;
  }
  return true;
}

bool Polyhedron::is_face_of(const Polyhedron& other) const {
  if (!subset_of(other)) return false;
  // Smallest face of `other` containing this set: tighten every row of
  // `other` that is tight on all of it.
  std::vector<std::size_t> tight;
  for (std::size_t i = 0; i < other.leq_.size(); ++i) {
    auto best = maximize(negated(other.leq_[i].a));
    if (best && -*best == other.leq_[i].b) tight.push_back(i);
  }
  auto face = other.tighten(tight);
  return face && face->dim() == dim_ && face->subset_of(*this);
}

std::string Polyhedron::describe() const {
  std::string s = "{";
  bool first = true;
  for (const auto& r : eq_) {
    s += (first ? "" : ", ") + format_row(r.a, r.b, "=");
    first = false;
  }
  for (const auto& r : leq_) {
    s += (first ? "" : ", ") + format_row(r.a, r.b, "<=");
    first = false;
  }
  if (first) s += "R^" + std::to_string(n_);
  return s + "}";
}

PolyhedralComplex::PolyhedralComplex(std::size_t ambient_dim, std::vector<Polyhedron> cells, std::vector<std::size_t> dims,
                                     std::vector<std::pair<std::size_t, std::size_t>> face_of)
    : n_(ambient_dim), cells_(std::move(cells)), dims_(std::move(dims)), face_of_(std::move(face_of)) {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].ambient_dim() != n_) {
      throw InputError("cell " + std::to_string(i) + " lives in R^" + std::to_string(cells_[i].ambient_dim()) +
                       ", expected R^" + std::to_string(n_));
    }
  }
  if (dims_.empty()) {
    for (const auto& c : cells_) dims_.push_back(c.dim());
  } else if (dims_.size() != cells_.size()) {
    throw InputError("declared dimensions do not match the number of cells");
  }
  for (const auto& [f, c] : face_of_) {
    if (f >= cells_.size() || c >= cells_.size()) throw InputError("face relation refers to a missing cell");
  }
  if (face_of_.empty()) {
    for (std::size_t f = 0; f < cells_.size(); ++f) {
      for (std::size_t c = 0; c < cells_.size(); ++c) {
        if (f == c || cells_[f].dim() >= cells_[c].dim()) continue;
        if (!cells_[c].contains(cells_[f].relative_interior_point())) continue;
        if (cells_[f].is_face_of(cells_[c])) face_of_.emplace_back(f, c);
      }
    }
  }
}

std::vector<std::size_t> PolyhedralComplex::full_cells() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim() == n_) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> PolyhedralComplex::find_cell(const Polyhedron& p) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim() != p.dim()) continue;
    if (!cells_[i].in_relative_interior(p.relative_interior_point())) continue;
    if (cells_[i].same_set(p)) return i;
  }
  return std::nullopt;
}

bool in_relative_interior(const Polyhedron& p, const Vec& x) { return p.in_relative_interior(x); }

std::size_t locate(const PolyhedralComplex& complex, const Vec& x) {
  if (x.size() != complex.ambient_dim()) {
    throw InputError("point dimension " + std::to_string(x.size()) + " != " + std::to_string(complex.ambient_dim()));
  }
  for (std::size_t i = 0; i < complex.size(); ++i) {
    if (complex.cell(i).in_relative_interior(x)) return i;
  }
  throw CoverageError("point " + to_string(x) + " lies in no cell; the complex does not cover R^" +
                      std::to_string(complex.ambient_dim()));
}

Rational eval_spec(const PwcSpec& spec, const Vec& x) { return spec.values[locate(spec.complex, x)]; }

Rational eval_spec(const PwlSpec& spec, const Vec& x) { return spec.pieces[locate(spec.complex, x)](x); }

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DimensionMismatch: return "dimension_mismatch";
    case ViolationKind::Coverage: return "coverage";
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::IntersectionNotFace: return "intersection_not_common_face";
    case ViolationKind::MissingFace: return "missing_face";
    case ViolationKind::BadFaceListing: return "bad_face_listing";
    case ViolationKind::Discontinuity: return "discontinuity";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind k) const {
  return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

std::int64_t sampling_radius(const PolyhedralComplex& complex) {
  Rational r = 0;
  for (const auto& c : complex.cells()) {
    for (const auto& q : c.relative_interior_point()) r = std::max(r, Rational(abs(q)));
  }
  Integer ceil_r = r.get_num() / r.get_den() + 1;
  return ceil_r.get_si() + 2;
}

ValidationReport validate_complex(const PolyhedralComplex& complex, ValidationMode mode, std::size_t samples,
                                  std::uint64_t seed) {
  ValidationReport report;
  const std::size_t n = complex.ambient_dim();
  for (std::size_t i = 0; i < complex.size(); ++i) {
    if (complex.declared_dims()[i] != complex.cell(i).dim()) {
      report.violations.push_back({ViolationKind::DimensionMismatch,
                                   {i},
                                   "cell " + std::to_string(i) + " declared dimension " +
                                       std::to_string(complex.declared_dims()[i]) + " but has dimension " +
                                       std::to_string(complex.cell(i).dim())});
    }
  }

  Rng rng(seed);
  const auto radius = sampling_radius(complex);
  std::size_t coverage_reported = 0, overlap_reported = 0;
  constexpr std::size_t kMaxReported = 10;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec x = rng.point(n, radius);
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < complex.size(); ++i) {
      if (complex.cell(i).in_relative_interior(x)) hits.push_back(i);
    }
    if (hits.empty() && coverage_reported++ < kMaxReported) {
      report.violations.push_back({ViolationKind::Coverage, {}, "sample " + to_string(x) + " lies in no cell"});
    } else if (hits.size() > 1 && overlap_reported++ < kMaxReported) {
      report.violations.push_back(
          {ViolationKind::Overlap, hits, "sample " + to_string(x) + " lies in several relative interiors"});
    }
  }
  report.samples = samples;
  if (mode == ValidationMode::Cheap) return report;

  for (std::size_t i = 0; i < complex.size(); ++i) {
    const auto& cell = complex.cell(i);
    for (auto row : cell.facet_rows()) {
      auto facet = cell.tighten({row});
      if (facet && !complex.find_cell(*facet)) {
        report.violations.push_back({ViolationKind::MissingFace,
                                     {i},
                                     "face " + facet->describe() + " of cell " + std::to_string(i) +
                                         " is not a cell of the complex"});
      }
    }
  }
  for (std::size_t i = 0; i < complex.size(); ++i) {
    for (std::size_t j = i + 1; j < complex.size(); ++j) {
      auto meet = complex.cell(i).intersect(complex.cell(j));
      if (!meet) continue;
      auto k = complex.find_cell(*meet);
      if (!k || !complex.cell(*k).is_face_of(complex.cell(i)) || !complex.cell(*k).is_face_of(complex.cell(j))) {
        report.violations.push_back({ViolationKind::IntersectionNotFace,
                                     {i, j},
                                     "cells " + std::to_string(i) + " and " + std::to_string(j) + " meet in " +
                                         meet->describe() + ", which is not a common face in the complex"});
      }
    }
  }
  for (const auto& [f, c] : complex.face_of()) {
    if (!complex.cell(f).is_face_of(complex.cell(c))) {
      report.violations.push_back({ViolationKind::BadFaceListing,
                                   {f, c},
                                   "cell " + std::to_string(f) + " is listed as a face of cell " + std::to_string(c) +
                                       " but is not one"});
    }
  }
  return report;
}

ValidationReport check_continuity(const PwlSpec& spec) {
  ValidationReport report;
  const auto& cx = spec.complex;
  for (const auto& [f, c] : cx.face_of()) {
    const auto& pf = spec.pieces[f];
    const auto& pc = spec.pieces[c];
    Vec diff(cx.ambient_dim());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = pf.a[j] - pc.a[j];
    const Rational dc = pf.c - pc.c;
    auto hi = cx.cell(f).maximize(diff);
    auto lo = cx.cell(f).maximize(negated(diff));
    if (!hi || !lo || *hi + dc != 0 || *lo - dc != 0) {
      report.violations.push_back({ViolationKind::Discontinuity,
                                   {f, c},
                                   "affine pieces of cell " + std::to_string(f) + " and cell " + std::to_string(c) +
                                       " disagree on cell " + std::to_string(f)});
    }
  }
  return report;
}

std::vector<Hyperplane> facet_hyperplanes(const PolyhedralComplex& complex) {
  const std::size_t n = complex.ambient_dim();
  std::set<Hyperplane> seen;
  std::vector<Hyperplane> out;
  for (const auto& c : complex.cells()) {
    if (c.dim() + 1 != n) continue;
    std::optional<Hyperplane> h;
    for (const auto& r : c.equalities()) {
      if (std::any_of(r.a.begin(), r.a.end(), [](const Rational& q) { return q != 0; })) {
        h = Hyperplane::canonical(r.a, r.b);
        break;
      }
    }
    for (std::size_t i = 0; !h && i < c.inequalities().size(); ++i) {
      const auto& r = c.inequalities()[i];
      if (c.is_implicit(i) && std::any_of(r.a.begin(), r.a.end(), [](const Rational& q) { return q != 0; })) {
        h = Hyperplane::canonical(r.a, r.b);
      }
    }
    if (h && seen.insert(*h).second) out.push_back(*h);
  }
  return out;
}

}  // namespace ltnn
