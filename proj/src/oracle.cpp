#include "ltnn/oracle.hpp"

#include <algorithm>

#include "ltnn/errors.hpp"
#include "ltnn/lp.hpp"
#include "ltnn/random.hpp"

namespace ltnn::oracle {

DichotomyTable brute_dichotomies(const std::vector<Vec>& points) {
  if (points.size() > 20) throw InputError("brute_dichotomies is limited to 20 points");
  DichotomyTable table;
  table.points = points;
  const Mask end = Mask{1} << points.size();
  for (Mask s = 0; s < end; ++s) {
    if (auto w = separate_subset(points, s)) table.entries.push_back({s, *w});
  }
  return table;
}

namespace {

using PointSet = std::vector<bool>;

// Collections of subsets of {0..m−1} with a strictly positive optimum of
//   max t  s.t.  Σ_{s∈A} α_s + β ≥ t (A in the collection), ≤ 0 (A not in it), t ≤ 1.
std::vector<std::vector<bool>> separable_collections(std::size_t m) {
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<std::vector<bool>> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << subsets); ++c) {
    LinearProgram lp;
    lp.num_vars = m + 2;
    lp.objective.assign(m + 2, Rational(0));
    lp.objective[m + 1] = 1;
    std::vector<bool> members(subsets);
    for (std::size_t a = 0; a < subsets; ++a) {
      members[a] = ((c >> a) & 1U) != 0;
      Vec row(m + 2, Rational(0));
      for (std::size_t s = 0; s < m; ++s) {
        if ((a >> s) & 1U) row[s] = 1;
      }
      row[m] = 1;
      if (members[a]) {
        row[m + 1] = -1;
        lp.add(row, Relation::Geq, 0);
      } else {
        lp.add(row, Relation::Leq, 0);
      }
    }
    Vec cap(m + 2, Rational(0));
    cap[m + 1] = 1;
    lp.add(cap, Relation::Leq, 1);
    const auto res = solve_lp(lp);
    if (res.status == LpStatus::Optimal && res.optimum > 0) out.push_back(members);
  }
  return out;
}

PointSet complement(const PointSet& s) {
  PointSet out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = !s[i];
  return out;
}

PointSet meet(const PointSet& a, const PointSet& b) {
  PointSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

PointSet join(const PointSet& a, const PointSet& b) {
  PointSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

// ⋃_{A ∈ 𝒜} [ ⋂_{s∈A} Y_s ∩ ⋂_{s∉A} Y_sᶜ ].
PointSet compose(const std::vector<PointSet>& prev, const std::vector<bool>& collection, std::size_t d) {
  PointSet out(d, false);
  for (std::size_t a = 0; a < collection.size(); ++a) {
    if (!collection[a]) continue;
    PointSet cell(d, true);
    for (std::size_t s = 0; s < prev.size(); ++s) cell = meet(cell, ((a >> s) & 1U) ? prev[s] : complement(prev[s]));
    out = join(out, cell);
  }
  return out;
}

Rational abs_fit(const Mat& cols, const Vec& y) {
  const std::size_t d = y.size();
  const std::size_t c = cols.size();
  LinearProgram lp;
  lp.num_vars = c + d;
  lp.objective.assign(c + d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    lp.objective[c + i] = -1;
    Vec row(c + d, Rational(0));
    for (std::size_t j = 0; j < c; ++j) row[j] = cols[j][i];
    row[c + i] = 1;
    lp.add(row, Relation::Geq, y[i]);
    for (std::size_t j = 0; j < c; ++j) row[j] = -cols[j][i];
    lp.add(row, Relation::Geq, -y[i]);
  }
  const auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) throw std::logic_error("oracle fit LP failed");
  return -res.optimum;
}

// ‖y‖² − ‖proj_span(cols) y‖² by Gram–Schmidt.
Rational square_fit(const Mat& cols, const Vec& y) {
  std::vector<Vec> basis;
  for (const auto& c : cols) {
    Vec v = c;
    for (const auto& b : basis) {
      const Rational f = dot(v, b) / dot(b, b);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * b[i];
    }
    if (dot(v, v) != 0) basis.push_back(std::move(v));
  }
  Rational value = dot(y, y);
  for (const auto& b : basis) {
    const Rational p = dot(y, b);
    value -= p * p / dot(b, b);
  }
  return value;
}

}  // namespace

Rational brute_erm(const Dataset& data, const Architecture& arch, Loss loss, bool output_bias) {
  data.check();
  const std::size_t d = data.size();
  const std::size_t n = data.dim();
  const std::size_t k = arch.widths.size();
  if (d > 8 || k == 0 || k > 2) throw InputError("brute_erm needs D <= 8 and 1 or 2 hidden layers");
  for (auto w : arch.widths) {
    if (w == 0 || w > 2) throw InputError("brute_erm needs widths in {1, 2}");
  }

  std::vector<PointSet> halfspaces;
  for (const auto& e : brute_dichotomies(data.points).entries) {
    PointSet s(d);
    for (std::size_t i = 0; i < d; ++i) s[i] = test_bit(e.subset, i);
    halfspaces.push_back(std::move(s));
  }
  const auto collections = k == 2 ? separable_collections(arch.widths[0]) : std::vector<std::vector<bool>>{};

  std::optional<Rational> best;
  auto evaluate = [&](const std::vector<PointSet>& last) {
    Mat cols;
    if (output_bias) cols.emplace_back(d, Rational(1));
    for (const auto& s : last) {
      if (arch.shortcut) {
        for (std::size_t i = 0; i < n; ++i) {
          Vec c(d);
          for (std::size_t p = 0; p < d; ++p) c[p] = s[p] ? data.points[p][i] : Rational(0);
          cols.push_back(std::move(c));
        }
      }
      Vec c(d);
      for (std::size_t p = 0; p < d; ++p) c[p] = s[p] ? 1 : 0;
      cols.push_back(std::move(c));
    }
    const Rational v = loss == Loss::Abs ? abs_fit(cols, data.labels) : square_fit(cols, data.labels);
    if (!best || v < *best) best = v;
  };

  const std::size_t h = halfspaces.size();
  const std::size_t w1 = arch.widths[0];
  std::vector<std::size_t> pick(w1, 0);
  for (;;) {
    std::vector<PointSet> first;
    for (auto t : pick) first.push_back(halfspaces[t]);
    if (k == 1) {
      evaluate(first);
    } else {
      const std::size_t w2 = arch.widths[1];
      std::vector<std::size_t> choice(w2, 0);
      for (;;) {
        std::vector<PointSet> second;
        for (auto c : choice) second.push_back(compose(first, collections[c], d));
        evaluate(second);
        std::size_t i = 0;
        while (i < w2 && ++choice[i] == collections.size()) choice[i++] = 0;
        if (i == w2) break;
      }
    }
    std::size_t i = 0;
    while (i < w1 && ++pick[i] == h) pick[i++] = 0;
    if (i == w1) break;
  }
  return *best / static_cast<long>(d);
}

std::vector<Vec> sample_cell(const Polyhedron& cell, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const Vec& r = cell.relative_interior_point();
  const Mat& dirs = cell.hull_directions();
  std::vector<Vec> out;
  if (dirs.empty()) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(r);
    return out;
  }
  Rational scale = 4;
  std::size_t failures = 0;
  while (out.size() < count && failures < 64 * count + 64) {
    Vec x = r;
    for (const auto& dir : dirs) {
      const Rational t = rng.rational(1, 1000) * scale;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * dir[i];
    }
    if (cell.in_relative_interior(x)) {
      out.push_back(std::move(x));
    } else {
      ++failures;
      scale /= 2;
    }
  }
  return out;
}

MismatchReport compare_on_points(const Network& net, const std::vector<Vec>& points,
                                 const std::function<Rational(const Vec&)>& expected, std::uint64_t seed) {
  MismatchReport r;
  r.seed = seed;
  for (const auto& x : points) {
    ++r.total_samples;
    const Rational want = expected(x);
    const Rational got = forward(net, x);
    if (want != got) r.mismatches.push_back({x, want, got});
  }
  return r;
}

MismatchReport sample_equivalence(const Network& net, const FunctionSpec& spec, std::size_t samples,
                                  std::uint64_t seed, SampleMode mode, std::size_t per_cell) {
  const PolyhedralComplex& complex =
      std::visit([](const auto& s) -> const PolyhedralComplex& { return s.complex; }, spec);
  const std::size_t n = complex.ambient_dim();
  if (input_dim(net) != n) {
    throw InputError("network input dimension " + std::to_string(input_dim(net)) + " != spec dimension " +
                     std::to_string(n));
  }
  auto eval = [&](const Vec& x) { return std::visit([&](const auto& s) { return eval_spec(s, x); }, spec); };
  Rng rng(seed);
  const std::int64_t radius = sampling_radius(complex);
  std::vector<Vec> points;
  if (mode == SampleMode::OpenCells) {
    for (std::size_t attempts = 0; points.size() < samples && attempts < 20 * samples + 100; ++attempts) {
      Vec x = rng.point(n, radius);
      if (complex.cell(locate(complex, x)).dim() == n) points.push_back(std::move(x));
    }
  } else {
    for (std::size_t i = 0; i < samples; ++i) points.push_back(rng.point(n, radius));
    for (std::size_t c = 0; c < complex.size(); ++c) {
      const auto& cell = complex.cell(c);
      points.push_back(cell.relative_interior_point());
      if (cell.dim() < n && per_cell > 0) {
        for (auto& x : sample_cell(cell, per_cell, seed ^ (0x9e3779b97f4a7c15ULL * (c + 1)))) points.push_back(x);
      }
    }
  }
  return compare_on_points(net, points, eval, seed);
}

int product_sign(const Vec& x) {
  std::size_t negatives = 0;
  for (const auto& v : x) {
    if (v == 0) return 0;
    if (v < 0) ++negatives;
  }
  return negatives % 2 == 0 ? 1 : 0;
}

int braid_sign(const Vec& x) {
  std::size_t negatives = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[j] == x[i]) return 0;
      if (x[j] < x[i]) ++negatives;
    }
  }
  return negatives % 2 == 0 ? 1 : 0;
}

}  // namespace ltnn::oracle
