#pragma once

#include <cstdint>
#include <random>

namespace qam {

// splitmix64: used to derive independent per-trial seeds from one master
// seed, so trial i is reproducible regardless of trial count or ordering.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Trial-local stream: mt19937_64 seeded via splitmix64(master ^ trial).
// Doubles are produced by an explicit 53-bit mapping rather than
// std::uniform_real_distribution, which is not bit-stable across
// standard library implementations.
class TrialRng {
public:
    TrialRng(std::uint64_t master_seed, std::uint64_t trial_index)
        : engine_(splitmix64(master_seed ^ (0xa0761d6478bd642fULL + trial_index))) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace qam
