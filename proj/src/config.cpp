#include "ltnn/config.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include "ltnn/errors.hpp"
#include "ltnn/json_io.hpp"

namespace ltnn {

std::size_t Config::threads() const {
  if (parallelism != 0) return parallelism;
  return std::max(1U, std::thread::hardware_concurrency());
}

Config parse_config(const std::string& text, const std::string& source) {
  const auto j = json_io::parse(text, source);
  if (!j.is_object()) throw ParseError(source, "config must be a JSON object");
  Config c;
  for (const auto& [key, value] : j.items()) {
    const std::string path = source + ": $." + key;
    if (key == "collection_cap") {
      c.collection_cap = json_io::count(value, path);
    } else if (key == "sample_count") {
      c.sample_count = json_io::count(value, path);
    } else if (key == "seed") {
      c.seed = json_io::count(value, path);
    } else if (key == "parallelism") {
      c.parallelism = value.is_string() && value == "auto" ? 0 : json_io::count(value, path);
      if (value.is_number() && c.parallelism == 0) throw ParseError(path, "must be positive or \"auto\"");
    } else if (key == "cache_dir") {
      if (!value.is_string()) throw ParseError(path, "expected a string");
      c.cache_dir = value.get<std::string>();
    } else {
      throw ParseError(path, "unknown config key");
    }
  }
  if (c.collection_cap == 0) throw ParseError(source + ": $.collection_cap", "must be positive");
  if (c.sample_count == 0) throw ParseError(source + ": $.sample_count", "must be positive");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace ltnn
