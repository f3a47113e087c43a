#ifndef ADAPROX_RNG_HPP
#define ADAPROX_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace adaprox {

// Seedable generator with hand-rolled uniform/normal draws. The standard
// library's distributions are implementation-defined, so traces produced
// through them would not be byte-identical across toolchains; the raw
// mt19937_64 stream plus Box-Muller is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform on [0, 1), 53-bit resolution
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal via Box-Muller; draws come in pairs
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// splitmix64 finalizer, used to derive independent stream seeds
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, used to give each problem instance a stable stream id
inline std::uint64_t hash_name(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace adaprox

#endif
