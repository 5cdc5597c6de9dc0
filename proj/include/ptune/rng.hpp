#pragma once

#include <cmath>
#include <cstdint>

namespace ptune {

// splitmix64 counter stream. Sample s of a run with master seed m uses the
// stream keyed by m ^ s, so draws reproduce independently of evaluation order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t key) : state_(key) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; both variates are used in turn.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline SplitMix64 sample_stream(std::uint64_t master_seed, std::uint64_t sample_index) {
    return SplitMix64(master_seed ^ sample_index);
}

} // namespace ptune
