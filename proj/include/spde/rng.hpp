// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spde {

// Finalizer stage of splitmix64; bijective mixer on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic child seed for a (purpose tag, stream index) pair.
// Every sampler in the library draws from a stream derived this way, so a
// run is reproducible from one master seed and per-sample streams do not
// overlap by construction of the mixer chain.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index) noexcept {
  std::uint64_t z = mix64(master ^ 0x6a09e667f3bcc909ull);
  z = mix64(z + tag * 0x9e3779b97f4a7c15ull);
  z = mix64(z + index * 0xc2b2ae3d27d4eb4full);
  return z;
}

namespace stream_tag {
inline constexpr std::uint64_t wiener = 0x57;
inline constexpr std::uint64_t poisson = 0x50;
inline constexpr std::uint64_t gauss_norm = 0x47;
inline constexpr std::uint64_t perturb = 0x44;
}  // namespace stream_tag

// Random stream: std::mt19937_64 plus hand-rolled transforms.
// The engine's output sequence is fixed by the standard, and the transforms
// below touch only its raw 64-bit words, so draws are identical across
// platforms and compilers.  std::normal_distribution would not give that.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t raw() { return eng_(); }

  // Uniform on the open interval (0,1); never 0, safe under log().
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }

  // Standard normal via Box-Muller.  No cached spare: one value per pair of
  // uniforms keeps the draw count a pure function of the call count.
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace spde
