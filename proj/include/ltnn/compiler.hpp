#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ltnn/network.hpp"
#include "ltnn/polyhedra.hpp"

namespace ltnn {

enum class CompileMode { Exact, AlmostEverywhere, SltExact, SltCpwl, Parity, Braid };

std::string to_string(CompileMode mode);
/// Accepts the CLI spellings: exact, ae, slt, slt-cpwl, parity, braid.
CompileMode parse_compile_mode(const std::string& text);

struct CompileReport {
  Network network;
  std::size_t size = 0;
  std::size_t bound = 0;
  CompileMode mode = CompileMode::Exact;
  std::size_t pieces = 0;  // full-dimensional cells, 0 for generators
  std::size_t cells = 0;
  /// 3(e·p/(n+1))^(n+1) for exact mode, otherwise 0. Informational only.
  double volume_bound = 0;

  bool within_bound() const { return size <= bound; }
};

struct CompileOptions {
  /// Run full complex validation before compiling.
  bool validate = true;
  std::size_t validation_samples = 200;
  std::uint64_t seed = 0;
};

/// Widths (m, 1): first layer 𝟙{⟨a_i,x⟩ > b_i} per row (both directions for
/// equalities), second layer 𝟙{Σφ_i < 1}, output weight 1.
LtNetwork compile_polyhedron_indicator(const Polyhedron& p);

struct FaceTerm {
  std::size_t cell;
  Rational coefficient;
};

/// Signed combination of closed-cell indicators equal to the indicator of the
/// relative interior of cell `index`. Intersections of relative facets are
/// matched to listed cells and equal faces are merged. Throws InputError
/// naming any face that is not a cell of the complex.
std::vector<FaceTerm> relint_terms(const PolyhedralComplex& complex, std::size_t index);

/// Evaluates Σ coefficient·𝟙_cell(x) with closed cells.
Rational eval_terms(const PolyhedralComplex& complex, const std::vector<FaceTerm>& terms, const Vec& x);

CompileReport compile_pwc_exact(const PwcSpec& spec, const CompileOptions& options = {});
/// Throws RefusalError when the spec has fewer than two full-dimensional cells.
CompileReport compile_pwc_ae(const PwcSpec& spec, const CompileOptions& options = {});
CompileReport compile_pwl_slt(const PwlSpec& spec, const CompileOptions& options = {});
/// Throws RefusalError unless the spec is flagged continuous, InputError when
/// the pieces disagree on a shared face.
CompileReport compile_cpwl_slt(const PwlSpec& spec, const CompileOptions& options = {});

/// σ(∏ x_i) for inputs with no zero coordinate. Widths (n, n, 1).
LtNetwork generate_parity(std::size_t n);
/// σ(∏_{i<j} (x_j − x_i)) for inputs with distinct coordinates. Widths (m, m, 1), m = C(n,2).
LtNetwork generate_braid(std::size_t n);

CompileReport report_parity(std::size_t n);
CompileReport report_braid(std::size_t n);

}  // namespace ltnn
