#pragma once

#include <cstdint>
#include <cstring>
#include <string>

namespace radiopt {

inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t hash = 0xcbf29ce484222325ULL) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline std::uint64_t fnv1a64(const std::string& text,
                             std::uint64_t hash = 0xcbf29ce484222325ULL) {
  return fnv1a64(text.data(), text.size(), hash);
}

std::string to_hex(std::uint64_t value);

}  // namespace radiopt
