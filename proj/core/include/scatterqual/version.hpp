#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace scatterqual {

inline constexpr std::string_view kVersion = "scatterqual 0.1.0";

/// FNV-1a, used to stamp output files with a hash of the effective config.
inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace scatterqual
