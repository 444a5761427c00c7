#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ltnn/network.hpp"
#include "ltnn/separability.hpp"

namespace ltnn {

struct Dataset {
  std::vector<Vec> points;
  Vec labels;

  std::size_t size() const { return points.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
  /// Throws InputError on empty data, ragged points, label count mismatch or
  /// duplicate points (naming both indices).
  void check() const;
};

struct Architecture {
  std::size_t input_dim = 0;
  std::vector<std::size_t> widths;
  bool shortcut = false;
};

enum class Loss { Abs, Square };

std::string to_string(Loss loss);
Loss parse_loss(const std::string& text);

struct TrainOptions {
  Loss loss = Loss::Abs;
  /// First-layer tuples as multisets instead of ordered tuples.
  bool symmetry_reduction = true;
  /// Fit an output bias alongside γ (LT networks only).
  bool output_bias = false;
  /// Largest width allowed for a layer that feeds another hidden layer.
  std::size_t collection_cap = 4;
  std::size_t threads = 1;
  /// Shared collection tables; a private cache is used when null.
  CollectionCache* cache = nullptr;
};

/// The chosen candidate: first-layer dichotomies (masks over the data points)
/// and, for each later layer, the collection mask of every neuron.
struct Certificate {
  std::vector<Mask> dichotomies;
  std::vector<std::vector<Mask>> collections;
};

struct TrainResult {
  Network network;
  /// (1/D)·Σ loss.
  Rational optimum;
  Rational total_loss;
  std::size_t candidates_examined = 0;
  std::size_t distinct_fits = 0;
  Certificate certificate;
};

struct OutputFit {
  Vec weights;
  /// Σ loss at the optimum (not divided by D).
  Rational value;
};

/// min_γ Σ ℓ(⟨γ, row_i⟩, y_i) over an arbitrary rational design matrix (D rows).
/// Abs loss: epigraph LP. Square loss: minimum-norm normal-equations solution.
OutputFit fit_design(const Mat& design, const Vec& y, Loss loss);

/// Step 15 of the algorithm: γ for a D×w bit matrix.
OutputFit solve_output_weights(const std::vector<Bits>& delta, const Vec& y, Loss loss);

/// 𝓛_m with witnesses. Throws RefusalError when m exceeds the cap.
const CollectionTable& layer_candidates(CollectionCache& cache, std::size_t m);

/// Certified global minimum over LT networks with the given widths.
/// Throws RefusalError when a width exceeds the cap, InputError on bad data.
TrainResult train_lt(const Dataset& data, const Architecture& arch, const TrainOptions& options = {});
/// Same enumeration with the shortcut output fit over (a_j, γ_j).
TrainResult train_slt(const Dataset& data, const Architecture& arch, const TrainOptions& options = {});
/// Dispatches on arch.shortcut.
TrainResult train(const Dataset& data, const Architecture& arch, const TrainOptions& options = {});

/// (1/D)·Σ loss of the network on the data, by forward evaluation.
Rational empirical_risk(const Network& net, const Dataset& data, Loss loss);

}  // namespace ltnn
