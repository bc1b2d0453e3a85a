#include "hyperchord/point_set.hpp"

#include <cmath>

namespace hyperchord {

namespace {

// splitmix64 finalizer; good avalanche, cheap.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomSeed RandomSeed::derive(std::uint64_t salt) const {
  return {seed, mix64(stream_id ^ mix64(salt + 0x632be59bd9b4e019ULL))};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace hyperchord
