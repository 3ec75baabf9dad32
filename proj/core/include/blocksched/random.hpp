#ifndef BLOCKSCHED_RANDOM_HPP
#define BLOCKSCHED_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace blocksched {

// Counter-based draws: every variate is a hash of its coordinates, so the
// value never depends on how many other draws happened first.
std::uint64_t tag_of(std::string_view purpose);
std::uint64_t hash_coords(std::uint64_t seed, std::initializer_list<std::uint64_t> coords);

// Uniform in the open interval (0, 1).
double uniform_open(std::uint64_t h);
// Box-Muller over two hashed uniforms derived from `h`.
double standard_normal(std::uint64_t h);

}  // namespace blocksched

#endif
