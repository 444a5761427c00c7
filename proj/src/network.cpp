#include "ltnn/network.hpp"

#include <cassert>

#include "ltnn/errors.hpp"
#include "ltnn/json_io.hpp"

namespace ltnn {

namespace {

using json_io::json;

std::vector<std::size_t> layer_widths(const std::vector<Layer>& hidden) {
  std::vector<std::size_t> w;
  w.reserve(hidden.size());
  for (const auto& l : hidden) w.push_back(l.width());
  return w;
}

std::size_t layer_size(const std::vector<Layer>& hidden) {
  std::size_t s = 0;
  for (const auto& l : hidden) s += l.width();
  return s;
}

// Returns the width of the last hidden layer.
std::size_t check_layers(const std::vector<Layer>& hidden, std::size_t input_dim) {
  if (hidden.empty()) throw InputError("network needs at least one hidden layer");
  std::size_t prev = input_dim;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    const auto& l = hidden[i];
    if (l.weights.size() != l.bias.size()) {
      throw InputError("hidden layer " + std::to_string(i) + ": " + std::to_string(l.weights.size()) +
                       " weight rows but " + std::to_string(l.bias.size()) + " biases");
    }
    for (std::size_t r = 0; r < l.weights.size(); ++r) {
      if (l.weights[r].size() != prev) {
        throw InputError("hidden layer " + std::to_string(i) + " neuron " + std::to_string(r) + " has " +
                         std::to_string(l.weights[r].size()) + " weights, expected " + std::to_string(prev));
      }
    }
    prev = l.width();
  }
  return prev;
}

void check_input(std::size_t expected, const Vec& x) {
  if (x.size() != expected) {
    throw InputError("input has dimension " + std::to_string(x.size()) + ", network expects " + std::to_string(expected));
  }
}

json layers_json(const std::vector<Layer>& hidden) {
  json a = json::array();
  for (const auto& l : hidden) a.push_back({{"weights", json_io::to_json(l.weights)}, {"bias", json_io::to_json(l.bias)}});
  return a;
}

std::vector<Layer> parse_layers(const json& j, std::size_t input_dim) {
  const json& hidden = json_io::field(j, "hidden", "$");
  if (!hidden.is_array()) throw ParseError("$.hidden", "expected an array of layers");
  std::vector<Layer> layers;
  std::size_t prev = input_dim;
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    const std::string path = "$.hidden[" + std::to_string(i) + "]";
    Layer l;
    l.weights = json_io::matrix(json_io::field(hidden[i], "weights", path), path + ".weights");
    l.bias = json_io::vector(json_io::field(hidden[i], "bias", path), path + ".bias");
    if (l.weights.size() != l.bias.size()) {
      throw ParseError(path, std::to_string(l.weights.size()) + " weight rows but " + std::to_string(l.bias.size()) +
                                 " biases");
    }
    for (std::size_t r = 0; r < l.weights.size(); ++r) {
      if (l.weights[r].size() != prev) {
        throw ParseError(path + ".weights[" + std::to_string(r) + "]",
                         "expected " + std::to_string(prev) + " weights, got " + std::to_string(l.weights[r].size()));
      }
    }
    prev = l.width();
    layers.push_back(std::move(l));
  }
  if (layers.empty()) throw ParseError("$.hidden", "network needs at least one hidden layer");
  if (auto it = j.find("widths"); it != j.end()) {
    if (!it->is_array() || it->size() != layers.size()) throw ParseError("$.widths", "does not match the hidden layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
      if (json_io::count((*it)[i], "$.widths[" + std::to_string(i) + "]") != layers[i].width()) {
        throw ParseError("$.widths[" + std::to_string(i) + "]", "does not match hidden layer " + std::to_string(i));
      }
    }
  }
  return layers;
}

}  // namespace

std::vector<std::size_t> LtNetwork::widths() const { return layer_widths(hidden); }
std::size_t LtNetwork::size() const { return layer_size(hidden); }
void LtNetwork::check() const {
  const std::size_t last = check_layers(hidden, input_dim);
  if (output.weights.size() != last) {
    throw InputError("output layer has " + std::to_string(output.weights.size()) + " weights, expected " +
                     std::to_string(last));
  }
}

std::vector<std::size_t> SltNetwork::widths() const { return layer_widths(hidden); }
std::size_t SltNetwork::size() const { return layer_size(hidden); }
void SltNetwork::check() const {
  const std::size_t last = check_layers(hidden, input_dim);
  if (shortcut_a.size() != input_dim) {
    throw InputError("shortcut matrix has " + std::to_string(shortcut_a.size()) + " rows, expected " +
                     std::to_string(input_dim));
  }
  for (const auto& row : shortcut_a) {
    if (row.size() != last) throw InputError("shortcut matrix rows must have " + std::to_string(last) + " columns");
  }
  if (shortcut_b.size() != last) throw InputError("shortcut offset must have " + std::to_string(last) + " entries");
}

std::vector<Bits> hidden_activations(const std::vector<Layer>& hidden, std::size_t input_dim, const Vec& x) {
  check_input(input_dim, x);
  std::vector<Bits> acts;
  acts.reserve(hidden.size());
  Vec input = x;
  for (const auto& layer : hidden) {
    Bits bits(layer.width());
    Vec next(layer.width());
    for (std::size_t i = 0; i < layer.width(); ++i) {
      Rational s = layer.bias[i];
      for (std::size_t j = 0; j < input.size(); ++j) {
        if (layer.weights[i][j] != 0 && input[j] != 0) s += layer.weights[i][j] * input[j];
      }
      bits[i] = s > 0 ? 1 : 0;
      next[i] = bits[i];
    }
    input = std::move(next);
    acts.push_back(std::move(bits));
  }
#ifndef NDEBUG
  for (const auto& layer : acts) {
    for (auto b : layer) assert(b == 0 || b == 1);
  }
#endif
  return acts;
}

ForwardResult forward_lt(const LtNetwork& net, const Vec& x) {
  ForwardResult r;
  r.activations = hidden_activations(net.hidden, net.input_dim, x);
  r.output = net.output.bias;
  const auto& last = r.activations.back();
  for (std::size_t j = 0; j < last.size(); ++j) {
    if (last[j]) r.output += net.output.weights[j];
  }
  return r;
}

Rational forward_slt(const SltNetwork& net, const Vec& x) {
  const auto acts = hidden_activations(net.hidden, net.input_dim, x);
  const auto& last = acts.back();
  Rational out = 0;
  for (std::size_t j = 0; j < last.size(); ++j) {
    if (!last[j]) continue;
    out += net.shortcut_b[j];
    for (std::size_t i = 0; i < net.input_dim; ++i) out += net.shortcut_a[i][j] * x[i];
  }
  return out;
}

Rational forward(const Network& net, const Vec& x) {
  return std::visit(
      [&](const auto& n) -> Rational {
        if constexpr (std::is_same_v<std::decay_t<decltype(n)>, LtNetwork>) {
          return forward_lt(n, x).output;
        } else {
          return forward_slt(n, x);
        }
      },
      net);
}

LtNetwork induced_lt(const SltNetwork& net) {
  return LtNetwork{net.input_dim, net.hidden, OutputLayer{net.shortcut_b, Rational(0)}};
}

std::size_t size(const Network& net) {
  return std::visit([](const auto& n) { return n.size(); }, net);
}

std::size_t input_dim(const Network& net) {
  return std::visit([](const auto& n) { return n.input_dim; }, net);
}

std::string serialize(const LtNetwork& net) {
  net.check();
  json j;
  j["type"] = "lt";
  j["input_dim"] = net.input_dim;
  j["widths"] = net.widths();
  j["hidden"] = layers_json(net.hidden);
  j["output"] = {{"weights", json_io::to_json(net.output.weights)}, {"bias", json_io::to_json(net.output.bias)}};
  return j.dump(2) + "\n";
}

std::string serialize(const SltNetwork& net) {
  net.check();
  json j;
  j["type"] = "slt";
  j["input_dim"] = net.input_dim;
  j["widths"] = net.widths();
  j["hidden"] = layers_json(net.hidden);
  j["shortcut"] = {{"A", json_io::to_json(net.shortcut_a)}, {"b", json_io::to_json(net.shortcut_b)}};
  return j.dump(2) + "\n";
}

std::string serialize(const Network& net) {
  return std::visit([](const auto& n) { return serialize(n); }, net);
}

Network deserialize_network(const std::string& text) {
  const json j = json_io::parse(text, "network");
  const json& type = json_io::field(j, "type", "$");
  if (!type.is_string()) throw ParseError("$.type", "expected \"lt\" or \"slt\"");
  const std::size_t n = json_io::count(json_io::field(j, "input_dim", "$"), "$.input_dim");
  auto hidden = parse_layers(j, n);
  const std::size_t last = hidden.back().width();
  if (type == "lt") {
    const json& out = json_io::field(j, "output", "$");
    LtNetwork net{n, std::move(hidden),
                  {json_io::vector(json_io::field(out, "weights", "$.output"), "$.output.weights"),
                   json_io::rational(json_io::field(out, "bias", "$.output"), "$.output.bias")}};
    if (net.output.weights.size() != last) {
      throw ParseError("$.output.weights", "expected " + std::to_string(last) + " weights");
    }
    return net;
  }
  if (type == "slt") {
    const json& sc = json_io::field(j, "shortcut", "$");
    SltNetwork net{n, std::move(hidden), json_io::matrix(json_io::field(sc, "A", "$.shortcut"), "$.shortcut.A"),
                   json_io::vector(json_io::field(sc, "b", "$.shortcut"), "$.shortcut.b")};
    if (net.shortcut_a.size() != n) throw ParseError("$.shortcut.A", "expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (net.shortcut_a[i].size() != last) {
        throw ParseError("$.shortcut.A[" + std::to_string(i) + "]", "expected " + std::to_string(last) + " columns");
      }
    }
    if (net.shortcut_b.size() != last) throw ParseError("$.shortcut.b", "expected " + std::to_string(last) + " entries");
    return net;
  }
  throw ParseError("$.type", "unknown network type \"" + type.get<std::string>() + "\"");
}

}  // namespace ltnn
