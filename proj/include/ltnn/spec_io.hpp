#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "ltnn/polyhedra.hpp"

namespace ltnn {

using FunctionSpec = std::variant<PwcSpec, PwlSpec>;

/// Function-spec file:
///   { "dim": n, "continuous": bool?,
///     "cells": [ { "dim": k, "leq": [[a..., b]...], "eq": [[a..., b]...],
///                  "value": "p/q"  |  "affine": {"a": [...], "c": "p/q"} } ],
///     "faces": [[face, cell]...]? }
/// A spec whose cells all carry "value" is piecewise constant; any "affine"
/// cell makes it piecewise linear. Throws ParseError naming the JSON path.
FunctionSpec parse_spec(const nlohmann::json& j);
FunctionSpec parse_spec_text(const std::string& text, const std::string& source = "spec");

nlohmann::json spec_to_json(const PwcSpec& spec);
nlohmann::json spec_to_json(const PwlSpec& spec);

}  // namespace ltnn
