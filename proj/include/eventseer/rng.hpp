#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace eventseer {

// Deterministic random stream. All draws are derived from raw mt19937_64
// output with fixed arithmetic; std::*_distribution is avoided because its
// results are implementation-defined and the pipeline promises byte-identical
// reruns for a given seed.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform index in [0, n); n must be > 0.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(bits()) * n) >> 64);
    }

    // Standard normal via Box-Muller (one value per call, no caching, so the
    // stream position is a pure function of the number of calls).
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace eventseer
