#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltnn/lp.hpp"
#include "ltnn/rational.hpp"

namespace ltnn {

/// ⟨a, x⟩ ≤ b (as an inequality) or ⟨a, x⟩ = b (as an equality).
struct LinearRow {
  Vec a;
  Rational b;
  friend bool operator==(const LinearRow&, const LinearRow&) = default;
};

/// Hyperplane ⟨a, x⟩ = b normalised to coprime integers with the first
/// nonzero entry of `a` positive.
struct Hyperplane {
  Vec a;
  Rational b;

  static Hyperplane canonical(const Vec& a, const Rational& b);
  bool contains(const Vec& x) const { return dot(a, x) == b; }
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend bool operator<(const Hyperplane& l, const Hyperplane& r) {
    return l.a != r.a ? l.a < r.a : l.b < r.b;
  }
};

/// Nonempty polyhedron {x : A x ≤ b, E x = d} in ℝⁿ. Implicit equalities,
/// intrinsic dimension, relative facets and a relative-interior point are all
/// computed (by LP) at construction; the object is immutable afterwards.
class Polyhedron {
 public:
  /// Throws InputError on dimension mismatch or an empty polyhedron.
  Polyhedron(std::size_t ambient_dim, std::vector<LinearRow> inequalities, std::vector<LinearRow> equalities = {});

  /// nullopt when the system is infeasible.
  static std::optional<Polyhedron> try_make(std::size_t ambient_dim, std::vector<LinearRow> inequalities,
                                            std::vector<LinearRow> equalities = {});

  static Polyhedron whole_space(std::size_t n) { return Polyhedron(n, {}, {}); }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return dim_; }
  const std::vector<LinearRow>& inequalities() const { return leq_; }
  const std::vector<LinearRow>& equalities() const { return eq_; }
  bool is_implicit(std::size_t row) const { return implicit_[row]; }
  /// Inequality rows whose tightening yields a relative facet (irredundant, non-implicit).
  const std::vector<std::size_t>& facet_rows() const { return facet_rows_; }
  const Vec& relative_interior_point() const { return relint_point_; }
  /// Basis of the linear space parallel to the affine hull.
  const Mat& hull_directions() const { return directions_; }

  bool contains(const Vec& x) const;
  bool in_relative_interior(const Vec& x) const;

  /// Constraints of this polyhedron in LP form (for use inside larger LPs).
  std::vector<Constraint> constraints() const;

  /// This polyhedron with the given inequality rows turned into equalities.
  std::optional<Polyhedron> tighten(const std::vector<std::size_t>& rows) const;
  std::optional<Polyhedron> intersect(const Polyhedron& other) const;

  /// max ⟨c, x⟩ over the polyhedron, nullopt if unbounded.
  std::optional<Rational> maximize(const Vec& c) const;

  bool subset_of(const Polyhedron& other) const;
  bool same_set(const Polyhedron& other) const { return subset_of(other) && other.subset_of(*this); }
  /// True iff this polyhedron is a face of `other` (possibly equal to it).
  bool is_face_of(const Polyhedron& other) const;

  std::string describe() const;

 private:
  struct Unchecked {};
  Polyhedron(Unchecked, std::size_t n, std::vector<LinearRow> leq, std::vector<LinearRow> eq, Vec feasible);
  void analyse(Vec feasible);

  std::size_t n_ = 0;
  std::vector<LinearRow> leq_, eq_;
  std::vector<bool> implicit_;
  std::vector<std::size_t> facet_rows_;
  std::size_t dim_ = 0;
  Vec relint_point_;
  Mat directions_;
};

/// Polyhedral complex: cells, their declared dimensions, and the face
/// relation as (face index, cell index) pairs.
class PolyhedralComplex {
 public:
  /// When `face_of` is empty the face relation is computed from the cells.
  PolyhedralComplex(std::size_t ambient_dim, std::vector<Polyhedron> cells, std::vector<std::size_t> dims = {},
                    std::vector<std::pair<std::size_t, std::size_t>> face_of = {});

  std::size_t ambient_dim() const { return n_; }
  std::size_t size() const { return cells_.size(); }
  const Polyhedron& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  const std::vector<std::size_t>& declared_dims() const { return dims_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& face_of() const { return face_of_; }
  std::vector<std::size_t> full_cells() const;

  /// Index of a cell equal (as a set) to `p`.
  std::optional<std::size_t> find_cell(const Polyhedron& p) const;

 private:
  std::size_t n_;
  std::vector<Polyhedron> cells_;
  std::vector<std::size_t> dims_;
  std::vector<std::pair<std::size_t, std::size_t>> face_of_;
};

struct AffinePiece {
  Vec a;
  Rational c;
  Rational operator()(const Vec& x) const { return dot(a, x) + c; }
};

struct PwcSpec {
  PolyhedralComplex complex;
  Vec values;
};

struct PwlSpec {
  PolyhedralComplex complex;
  std::vector<AffinePiece> pieces;
  bool continuous = false;
};

bool in_relative_interior(const Polyhedron& p, const Vec& x);

/// Cell whose relative interior contains x. Throws CoverageError if none,
/// InputError on dimension mismatch.
std::size_t locate(const PolyhedralComplex& complex, const Vec& x);
inline std::size_t locate(const PwcSpec& spec, const Vec& x) { return locate(spec.complex, x); }
inline std::size_t locate(const PwlSpec& spec, const Vec& x) { return locate(spec.complex, x); }

Rational eval_spec(const PwcSpec& spec, const Vec& x);
Rational eval_spec(const PwlSpec& spec, const Vec& x);

enum class ValidationMode { Cheap, Full };

enum class ViolationKind {
  DimensionMismatch,
  Coverage,            // sample in no cell
  Overlap,             // sample in several relative interiors
  IntersectionNotFace,
  MissingFace,         // facet of a cell not listed
  BadFaceListing,
  Discontinuity,
};

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> cells;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t samples = 0;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const;
};

/// Radius of a box around every cell's relative-interior point, padded by 2.
std::int64_t sampling_radius(const PolyhedralComplex& complex);

ValidationReport validate_complex(const PolyhedralComplex& complex, ValidationMode mode, std::size_t samples = 1000,
                                  std::uint64_t seed = 0);

/// Affine pieces agree on every listed (face, cell) pair.
ValidationReport check_continuity(const PwlSpec& spec);

/// Hyperplanes spanned by the (n−1)-dimensional cells, deduplicated.
std::vector<Hyperplane> facet_hyperplanes(const PolyhedralComplex& complex);

}  // namespace ltnn
