#pragma once

#include <cstdint>
#include <vector>
#include <algorithm>

namespace prismatica {

// splitmix64: 64-bit state z; each draw does
//   z += 0x9e3779b97f4a7c15
//   x = z; x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9
//   x = (x ^ (x >> 27)) * 0x94d049bb133111eb
//   return x ^ (x >> 31)
// Documented so alternate implementations can reproduce sample schedules.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed = 0) : state_(seed) {}

    uint64_t next()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return (double)(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) { return n ? next() % n : 0; }

    // Uniform point on the standard n-simplex (n+1 barycentric coordinates),
    // via sorted-uniform spacings.
    std::vector<double> next_barycentric(int n)
    {
        std::vector<double> cuts(n);
        for (int i = 0; i < n; ++i) cuts[i] = next_double();
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> t(n + 1);
        double prev = 0.0;
        for (int i = 0; i < n; ++i) {
            t[i] = cuts[i] - prev;
            prev = cuts[i];
        }
        t[n] = 1.0 - prev;
        return t;
    }

  private:
    uint64_t state_;
};

} // namespace prismatica
