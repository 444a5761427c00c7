#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ltnn/erm.hpp"
#include "ltnn/network.hpp"
#include "ltnn/polyhedra.hpp"
#include "ltnn/separability.hpp"
#include "ltnn/spec_io.hpp"

// Brute-force references used only to check the main implementations.
namespace ltnn::oracle {

/// Every subset of at most 20 points, tested one LP at a time.
DichotomyTable brute_dichotomies(const std::vector<Vec>& points);

/// Exhaustive layer-by-layer search over ordered tuples with an independent collection
/// enumeration. Returns the mean loss. Limited to D ≤ 8, widths ≤ 2, k ≤ 2.
Rational brute_erm(const Dataset& data, const Architecture& arch, Loss loss, bool output_bias = false);

struct Mismatch {
  Vec point;
  Rational expected;
  Rational got;
};

struct MismatchReport {
  std::size_t total_samples = 0;
  std::vector<Mismatch> mismatches;
  std::uint64_t seed = 0;

  bool ok() const { return mismatches.empty(); }
};

enum class SampleMode {
  OpenCells,  // random points in the interiors of full-dimensional cells
  AllCells,   // random points, plus relative-interior points of every cell
};

/// Compares the network with the spec on seeded rational samples.
MismatchReport sample_equivalence(const Network& net, const FunctionSpec& spec, std::size_t samples,
                                  std::uint64_t seed, SampleMode mode = SampleMode::AllCells,
                                  std::size_t per_cell = 4);

/// Random points in the relative interior of one cell.
std::vector<Vec> sample_cell(const Polyhedron& cell, std::size_t count, std::uint64_t seed);

MismatchReport compare_on_points(const Network& net, const std::vector<Vec>& points,
                                 const std::function<Rational(const Vec&)>& expected, std::uint64_t seed = 0);

/// σ(∏ x_i).
int product_sign(const Vec& x);
/// σ(∏_{i<j} (x_j − x_i)).
int braid_sign(const Vec& x);

}  // namespace ltnn::oracle
