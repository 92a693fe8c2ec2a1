#ifndef NIELSEN_HASHING_HPP
#define NIELSEN_HASHING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace nielsen {

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

template <typename Int>
std::size_t hash_range(const std::vector<Int>& values) {
  std::size_t h = values.size();
  for (const Int& v : values) {
    h = hash_combine(h, std::hash<Int>{}(v));
  }
  return h;
}

}  // namespace nielsen

#endif  // NIELSEN_HASHING_HPP
