#include "ltnn/json_io.hpp"

#include "ltnn/errors.hpp"

namespace ltnn::json_io {

Rational rational(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path, e.what());
    }
  }
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? parse_rational(std::to_string(j.get<std::uint64_t>()))
                                  : parse_rational(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_number_float()) throw ParseError(path, "floating-point numbers are not exact; write the value as a string");
  throw ParseError(path, "expected a rational (string)");
}

Vec vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  Vec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

Mat matrix(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of rows");
  Mat m;
  for (std::size_t i = 0; i < j.size(); ++i) m.push_back(vector(j[i], path + "[" + std::to_string(i) + "]"));
  return m;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw ParseError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing field \"") + key + "\"");
  return *it;
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

json to_json(const Mat& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(to_json(row));
  return a;
}

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + " (byte " + std::to_string(e.byte) + ")", "invalid JSON");
  }
}

}  // namespace ltnn::json_io
