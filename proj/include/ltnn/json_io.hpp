#pragma once

#include <string>

#include <json.hpp>

#include "ltnn/rational.hpp"

namespace ltnn::json_io {

using nlohmann::json;

/// Rationals on disk are strings ("p/q" or decimal). Integer JSON numbers are
/// accepted on input; floating-point numbers are rejected.
Rational rational(const json& j, const std::string& path);
Vec vector(const json& j, const std::string& path);
Mat matrix(const json& j, const std::string& path);
std::size_t count(const json& j, const std::string& path);
const json& field(const json& j, const char* key, const std::string& path);

json to_json(const Rational& q);
json to_json(const Vec& v);
json to_json(const Mat& m);

/// Parses text as JSON, converting syntax errors into ParseError with byte offset.
json parse(const std::string& text, const std::string& source);

}  // namespace ltnn::json_io
