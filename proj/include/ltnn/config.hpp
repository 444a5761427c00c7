#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace ltnn {

struct Config {
  std::size_t collection_cap = 4;
  std::size_t sample_count = 10000;
  std::uint64_t seed = 0;
  /// 0 means one thread per hardware core.
  std::size_t parallelism = 1;
  std::string cache_dir;

  std::size_t threads() const;
};

/// JSON object with any of the fields above; "parallelism" may be "auto".
/// Unknown keys and non-positive caps are rejected with ParseError.
Config parse_config(const std::string& text, const std::string& source);
Config load_config(const std::string& path);

}  // namespace ltnn
