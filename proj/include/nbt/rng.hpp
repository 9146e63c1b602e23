#pragma once

#include <cstdint>
#include <vector>

namespace nbt {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator with explicit stream splitting: the draw sequence
/// for a given (seed, a, b) is independent of any other stream, so per-edge
/// and per-sample randomness is reproducible under any execution order.
class CounterRng {
 public:
  static CounterRng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
    k = mix64(k ^ mix64(a + 0x517cc1b727220a95ULL));
    k = mix64(k ^ mix64(b + 0x2545f4914f6cdd1dULL));
    CounterRng r;
    r.key_ = k;
    return r;
  }

  std::uint64_t next() { return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Exact-uniform residue by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return x % n;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// Uniform permutation of [0,n) by Fisher-Yates.
inline std::vector<int> random_permutation(int n, CounterRng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(i + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

// Uniform single n-cycle by Sattolo's algorithm.
inline std::vector<int> random_n_cycle(int n, CounterRng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(i));
    std::swap(p[i], p[j]);
  }
  return p;
}

// Uniform involution: a perfect matching for even n, exactly one fixed point
// for odd n (pair off a uniformly shuffled list, leaving the last element
// fixed when n is odd).
inline std::vector<int> random_matching(int n, CounterRng& rng) {
  std::vector<int> shuffled = random_permutation(n, rng);
  std::vector<int> m(n);
  for (int i = 0; i + 1 < n; i += 2) {
    m[shuffled[i]] = shuffled[i + 1];
    m[shuffled[i + 1]] = shuffled[i];
  }
  if (n % 2 == 1) m[shuffled[n - 1]] = shuffled[n - 1];
  return m;
}

}  // namespace nbt
