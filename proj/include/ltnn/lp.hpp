#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ltnn/rational.hpp"

namespace ltnn {

enum class Relation { Leq, Geq, Eq };

struct Constraint {
  Vec coefficients;
  Relation relation = Relation::Leq;
  Rational rhs;
};

/// maximize ⟨objective, x⟩ subject to constraints; variables are free (unbounded sign).
struct LinearProgram {
  std::size_t num_vars = 0;
  Vec objective;
  std::vector<Constraint> constraints;

  LinearProgram& add(Vec coefficients, Relation rel, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum;  // valid when Optimal
  Vec witness;       // valid when Optimal
  std::size_t pivots = 0;
};

/// Two-phase simplex over exact rationals with Bland's rule. Throws InputError
/// on malformed dimensions.
LpResult solve_lp(const LinearProgram& lp);

/// A point satisfying every constraint, or nullopt when the system is infeasible.
std::optional<Vec> feasible_point(std::size_t num_vars, const std::vector<Constraint>& constraints);

/// Exact substitution check of one constraint.
bool satisfies(const Constraint& c, const Vec& x);
bool satisfies_all(const LinearProgram& lp, const Vec& x);

}  // namespace ltnn
