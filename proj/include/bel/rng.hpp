#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace bel {

// Seedable generator used by all samplers: mt19937_64 with hand-rolled
// variate transforms. std::normal_distribution and generate_canonical are
// implementation-defined, so uniforms and normals are produced explicitly to
// keep sample streams bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform on (0,1): top 53 bits, zero mapped away from the boundary
  double uniform01() {
    const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  // standard normal via Box-Muller, one spare cached
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bel
