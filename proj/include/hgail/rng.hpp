#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hgail {

// Seeded random stream with fully specified draw semantics so that a run is
// bit-reproducible from its seed alone. Uniforms are built from raw mt19937_64
// output and normals use Box-Muller (two uniforms per draw); none of the
// distribution adapters from <random> are used because their output sequences
// are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform over {lo, ..., hi} inclusive
  int uniform_int(int lo, int hi) {
    const auto n = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(static_cast<double>(n) * uniform());
  }

  double normal() {
    // plain Box-Muller; consumes exactly two uniforms per draw
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * kPi * u2);
  }

  // derive an independent child stream; consumes one draw from this stream
  Rng split() { return Rng(mix(next_u64())); }

  // splitmix64 finalizer, used to decorrelate derived seeds
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 gen_;
};

}  // namespace hgail
