#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ldpgraph {

/// Root seed for a whole simulation run. Every random decision in the library
/// is a pure function of (root, stream tag, indices), so results are
/// independent of evaluation order and thread count.
struct Seed {
  std::uint64_t root = 0;
};

/// Purpose tags for derived sub-streams. Distinct tags guarantee that e.g.
/// the pair-perturbation trials never collide with degree-noise draws.
enum class Stream : std::uint64_t {
  kPairTrial = 1,     // one keep/flip trial per unordered pair
  kDirectedTrial,     // per directed bit, dual-report mode
  kDegreeNoise,       // Laplace noise per node
  kTargetSample,      // target-set sampling
  kFakeInit,          // compromised fakes' pre-existing edges
  kAttackRow,         // per-fake-node crafted row bit trials
  kAttackChoice,      // per-fake-node sampling decisions
  kAttackDegree,      // per-fake-node crafted degree report
  kTrialDerive,       // per-trial root derivation in the harness
  kSyntheticGraph,    // seeded synthetic graph generation
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-style hash of (root, tag, a, b) to 64 uniform bits.
inline std::uint64_t stream_hash(Seed seed, Stream tag, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(seed.root);
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

/// Uniform double in [0, 1) from the (root, tag, a, b) sub-stream.
inline double uniform01(Seed seed, Stream tag, std::uint64_t a,
                        std::uint64_t b = 0) {
  return static_cast<double>(stream_hash(seed, tag, a, b) >> 11) * 0x1.0p-53;
}

/// Sequential generator over one sub-stream, for sampling procedures that
/// need a variable number of draws (shuffles, rejection sampling).
class SubRng {
 public:
  SubRng(Seed seed, Stream tag, std::uint64_t a, std::uint64_t b = 0)
      : state_(stream_hash(seed, tag, a, b)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform draw from [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SubRng::below: n must be positive");
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::uint64_t state_;
};

/// Zero-centered Laplace sample with the given scale, by inverse CDF.
inline double laplace_from_unit(double u, double scale) {
  // u in [0,1); shift to (-0.5, 0.5].
  const double v = 0.5 - u;
  const double a = 1.0 - 2.0 * std::abs(v);
  const double mag = -scale * std::log(a <= 0.0 ? 5e-324 : a);
  return v >= 0.0 ? mag : -mag;
}

}  // namespace ldpgraph
