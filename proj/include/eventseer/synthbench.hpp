#pragma once

#include <cstdint>

#include "eventseer/core_types.hpp"

namespace eventseer {

struct SynthConfig {
    std::size_t n_samples = 20000;
    std::size_t n_features = 4;
    std::size_t n_events = 40;
    double event_width = 8.0;     // seconds
    double bump_amplitude = 3.0;  // in units of noise_std
    double noise_std = 1.0;
    double min_event_gap = 50.0;  // seconds between event edges
    std::uint64_t seed = 42;
    double period = 1.0;          // seconds per sample
};

struct SynthResult {
    TimeSeries series;
    EventSet events;
};

// Gaussian-noise baseline plus one raised-cosine bump per event, added to a
// seeded random subset of ceil(f/2) features. Event placements respect
// min_event_gap. Identical configs generate identical bytes. Throws
// ConfigError when the feasibility bound
// n_events * (event_width + min_event_gap) <= n_samples * period is violated.
SynthResult generate(const SynthConfig& config);

}  // namespace eventseer
