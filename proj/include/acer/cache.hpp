#pragma once

// Versioned preprocess cache: file contents plus all preprocess products,
// serialized to JSON so preprocessing and generation can run as separate
// invocations with byte-identical results.

#include "acer/java/preprocess.hpp"
#include "acer/syntax.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace acer::java {

inline constexpr std::string_view kCacheSchemaVersion = "acer-cache/1";

class CacheError : public std::runtime_error {
 public:
  CacheError(std::string message, bool version_mismatch)
      : std::runtime_error(std::move(message)), version_mismatch_(version_mismatch) {}
  bool version_mismatch() const { return version_mismatch_; }

 private:
  bool version_mismatch_;
};

std::string save_cache(const Forest& forest, const JavaPreprocessor& pre);

struct LoadedCache {
  Forest forest;
  JavaPreprocessor pre;
};

// Re-parses the embedded sources and re-binds the cached products to the
// fresh trees. Throws CacheError (version_mismatch() true) when the schema
// version differs, CacheError otherwise on malformed input.
LoadedCache load_cache(std::string_view json_text, unsigned threads = 0);

}  // namespace acer::java
