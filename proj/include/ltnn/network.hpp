#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ltnn/rational.hpp"

namespace ltnn {

/// One hidden layer: neuron i fires iff ⟨weights[i], input⟩ + bias[i] > 0.
struct Layer {
  Mat weights;  // width × previous width
  Vec bias;

  std::size_t width() const { return bias.size(); }
};

using Bits = std::vector<std::uint8_t>;

struct OutputLayer {
  Vec weights;
  Rational bias;
};

/// Linear threshold network: hidden threshold layers and an affine output.
struct LtNetwork {
  std::size_t input_dim = 0;
  std::vector<Layer> hidden;
  OutputLayer output;

  std::vector<std::size_t> widths() const;
  /// w₁ + ⋯ + w_k.
  std::size_t size() const;
  /// Throws InputError when the chained dimensions are inconsistent.
  void check() const;
};

/// Shortcut linear threshold network: output ⟨Aᵀx + b, x⁽ᵏ⁾⟩ where x⁽ᵏ⁾ is
/// the last hidden layer's bit vector.
struct SltNetwork {
  std::size_t input_dim = 0;
  std::vector<Layer> hidden;
  Mat shortcut_a;  // input_dim × w_k
  Vec shortcut_b;  // w_k

  std::vector<std::size_t> widths() const;
  std::size_t size() const;
  void check() const;
};

using Network = std::variant<LtNetwork, SltNetwork>;

struct ForwardResult {
  Rational output;
  std::vector<Bits> activations;
};

/// Bits of every hidden layer for input x.
std::vector<Bits> hidden_activations(const std::vector<Layer>& hidden, std::size_t input_dim, const Vec& x);

ForwardResult forward_lt(const LtNetwork& net, const Vec& x);
Rational forward_slt(const SltNetwork& net, const Vec& x);
Rational forward(const Network& net, const Vec& x);

/// The LT network an SLT network reduces to when its shortcut matrix is zero.
LtNetwork induced_lt(const SltNetwork& net);

std::size_t size(const Network& net);
std::size_t input_dim(const Network& net);

std::string serialize(const LtNetwork& net);
std::string serialize(const SltNetwork& net);
std::string serialize(const Network& net);
/// Throws ParseError naming the JSON path of the first inconsistency.
Network deserialize_network(const std::string& text);

}  // namespace ltnn
