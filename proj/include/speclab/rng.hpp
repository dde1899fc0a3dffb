#pragma once

#include <cmath>
#include <cstdint>

namespace speclab {

// Counter-based generator: output i of stream s under master seed m is
// mix64(key(m, s) + i * golden). Streams are cheap to derive, so parallel
// Monte Carlo replays deterministically regardless of worker count.
class CounterRng {
  public:
    CounterRng() : CounterRng(0, 0) {}
    CounterRng(std::uint64_t master_seed, std::uint64_t stream) {
        key_ = mix64(master_seed ^ mix64(stream + 0x1bd11bdaa9fc1a22ull));
        counter_ = 0;
    }

    static CounterRng for_sample(std::uint64_t master_seed,
                                 std::uint64_t sample_index) {
        return CounterRng(master_seed, sample_index);
    }

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

    // uniform in [0, n), exact via rejection (the reject branch is ~never hit)
    std::uint32_t next_below(std::uint32_t n) {
        for (;;) {
            std::uint64_t x = next_u64();
            __uint128_t m = (__uint128_t)x * n;
            std::uint64_t lo = (std::uint64_t)m;
            if (lo < n) {
                std::uint64_t floor = (0 - (std::uint64_t)n) % n;
                if (lo < floor) continue;
            }
            return (std::uint32_t)(m >> 64);
        }
    }

    double next_double() {  // [0, 1)
        return (next_u64() >> 11) * 0x1.0p-53;
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace speclab
