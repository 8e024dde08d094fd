#pragma once

#include "mapcone/types.hpp"

#include <cstdint>
#include <random>

namespace mapcone {

/// Seedable, portable random source. mt19937_64 output is fixed by the
/// standard and the derived samplers below avoid library distributions,
/// so identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix(seed)) {}

  /// Independent substream for restart r of a multi-start procedure.
  Rng(std::uint64_t seed, std::uint64_t stream) : gen_(mix(mix(seed) + stream)) {}

  /// Uniform in (0, 1].
  double uniform() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (one value per two draws; stateless).
  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im) * M_SQRT1_2;
  }

  Vector3c unit_vector3() {
    Vector3c v;
    for (int i = 0; i < 3; ++i) v(i) = cgaussian();
    return v / v.norm();
  }

  Matrix3c ginibre3() {
    Matrix3c m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = cgaussian();
    return m;
  }

  Matrix9c ginibre9() {
    Matrix9c m;
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) m(i, j) = cgaussian();
    return m;
  }

  Matrix3c hermitian3() {
    const Matrix3c g = ginibre3();
    return 0.5 * (g + g.adjoint());
  }

  Matrix9c hermitian9() {
    const Matrix9c g = ginibre9();
    return 0.5 * (g + g.adjoint());
  }

  std::uint64_t raw() { return gen_(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 gen_;
};

}  // namespace mapcone
