#include "ltnn/lp.hpp"

#include <string>
#include <utility>

#include "ltnn/errors.hpp"

namespace ltnn {

LinearProgram& LinearProgram::add(Vec coefficients, Relation rel, Rational rhs) {
  constraints.push_back({std::move(coefficients), rel, std::move(rhs)});
  return *this;
}

namespace {

// Dense tableau for: maximize cᵀx s.t. Ax ≤ b, x ≥ 0.
// Rows 0..m-1 are constraints, row m the objective, row m+1 the phase-one
// objective. Column n is the single artificial variable, column n+1 the rhs.
// Variable labels: 0..n-1 structural, n..n+m-1 slacks, -1 artificial.
class Tableau {
 public:
  Tableau(const Mat& a, const Vec& b, const Vec& c)
      : m_(b.size()), n_(c.size()), nonbasic_(n_ + 1), basic_(m_), d_(m_ + 2, Vec(n_ + 2, Rational(0))) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  LpStatus solve(Vec& x, Rational& value) {
    if (m_ > 0) {
      std::size_t r = 0;
      for (std::size_t i = 1; i < m_; ++i) {
        if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
      }
      if (d_[r][n_ + 1] < 0) {
        pivot(r, n_);
        if (!simplex(2) || d_[m_ + 1][n_ + 1] < 0) return LpStatus::Infeasible;
        // Drive the artificial variable out of the basis when it sits at zero.
        for (std::size_t i = 0; i < m_; ++i) {
          if (basic_[i] != -1) continue;
          std::optional<std::size_t> s;
          for (std::size_t j = 0; j <= n_; ++j) {
            if (d_[i][j] != 0 && (!s || nonbasic_[j] < nonbasic_[*s])) s = j;
          }
          if (s) pivot(i, *s);
        }
      }
    }
    if (!simplex(1)) return LpStatus::Unbounded;
    x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && static_cast<std::size_t>(basic_[i]) < n_) x[static_cast<std::size_t>(basic_[i])] = d_[i][n_ + 1];
    }
    value = d_[m_][n_ + 1];
    return LpStatus::Optimal;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    const Rational inv = 1 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0) continue;
      const Rational f = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j == s || d_[r][j] == 0) continue;
        d_[i][j] -= d_[r][j] * f;
      }
      d_[i][s] = -f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland's rule: entering variable is the lowest label with negative reduced
  // cost; leaving row is the minimum ratio, ties broken by lowest basic label.
  bool simplex(int phase) {
    const std::size_t obj = m_ + static_cast<std::size_t>(phase) - 1;
    for (;;) {
      std::optional<std::size_t> s;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (phase == 1 && nonbasic_[j] == -1) continue;
        if (d_[obj][j] < 0 && (!s || nonbasic_[j] < nonbasic_[*s])) s = j;
      }
      if (!s) return true;
      std::optional<std::size_t> r;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][*s] <= 0) continue;
        Rational ratio = d_[i][n_ + 1] / d_[i][*s];
        if (!r || ratio < best || (ratio == best && basic_[i] < basic_[*r])) {
          r = i;
          best = std::move(ratio);
        }
      }
      if (!r) return false;
      pivot(*r, *s);
    }
  }

  std::size_t m_, n_;
  std::vector<long> nonbasic_, basic_;
  Mat d_;
  std::size_t pivots_ = 0;
};

void check_dims(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) {
    throw InputError("objective has " + std::to_string(lp.objective.size()) + " entries, expected " +
                     std::to_string(lp.num_vars));
  }
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (lp.constraints[i].coefficients.size() != lp.num_vars) {
      throw InputError("constraint " + std::to_string(i) + " has " +
                       std::to_string(lp.constraints[i].coefficients.size()) + " coefficients, expected " +
                       std::to_string(lp.num_vars));
    }
  }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  check_dims(lp);
  const std::size_t n = lp.num_vars;
  // Free variables are split as x = x⁺ − x⁻; = becomes two ≤, ≥ is negated.
  Mat a;
  Vec b;
  auto push = [&](const Vec& coef, const Rational& rhs, bool negate) {
    Vec row(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = negate ? Rational(-coef[j]) : coef[j];
      row[n + j] = -row[j];
    }
    a.push_back(std::move(row));
    b.push_back(negate ? Rational(-rhs) : rhs);
  };
  for (const auto& c : lp.constraints) {
    switch (c.relation) {
      case Relation::Leq: push(c.coefficients, c.rhs, false); break;
      case Relation::Geq: push(c.coefficients, c.rhs, true); break;
      case Relation::Eq:
        push(c.coefficients, c.rhs, false);
        push(c.coefficients, c.rhs, true);
        break;
    }
  }
  Vec c(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = lp.objective[j];
    c[n + j] = -lp.objective[j];
  }

  Tableau t(a, b, c);
  Vec split;
  LpResult result;
  result.status = t.solve(split, result.optimum);
  result.pivots = t.pivots();
  if (result.status == LpStatus::Optimal) {
    result.witness.resize(n);
    for (std::size_t j = 0; j < n; ++j) result.witness[j] = split[j] - split[n + j];
  }
  return result;
}

std::optional<Vec> feasible_point(std::size_t num_vars, const std::vector<Constraint>& constraints) {
  LinearProgram lp;
  lp.num_vars = num_vars;
  lp.objective.assign(num_vars, Rational(0));
  lp.constraints = constraints;
  auto r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return std::move(r.witness);
}

bool satisfies(const Constraint& c, const Vec& x) {
  const Rational lhs = dot(c.coefficients, x);
  switch (c.relation) {
    case Relation::Leq: return lhs <= c.rhs;
    case Relation::Geq: return lhs >= c.rhs;
    case Relation::Eq: return lhs == c.rhs;
  }
  return false;
}

bool satisfies_all(const LinearProgram& lp, const Vec& x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& c : lp.constraints) {
    if (!satisfies(c, x)) return false;
  }
  return true;
}

}  // namespace ltnn
