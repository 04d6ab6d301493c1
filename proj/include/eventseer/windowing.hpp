#pragma once

#include <cstddef>
#include <vector>

#include "eventseer/core_types.hpp"

namespace eventseer {

struct WindowSpec {
    int width = 2;              // samples per window
    int step = 1;               // samples between window starts
    double width_events = 1.0;  // seconds; common duration of normalized events
};

// A window owns one full sampling period per sample, so its time span is
// [t_first, t_first + width * period). Features are flattened sample-major:
// features[s * f + j] = values[first_sample + s][j].
struct Window {
    std::size_t index = 0;
    std::size_t first_sample = 0;
    Interval span;
    Timestamp mid_time = 0.0;
    std::vector<double> features;
};

// Per-window overlap scores (true labels or predictions), aligned to window
// mid-times. Values live in [0, 1].
struct OpSignal {
    std::vector<Timestamp> mid_times;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

// Windows at sample offsets 0, step, 2*step, ... with offset + width <= n.
// Throws DataError when the series is shorter than one window.
std::vector<Window> slide(const TimeSeries& series, const WindowSpec& spec);

// Intersection-over-union of durations, in [0, 1]. A zero-duration union
// (two identical points) yields 1 when the points coincide, 0 otherwise.
double interval_overlap(const Interval& a, const Interval& b);

// value[i] = max over events of interval_overlap(window[i].span, event);
// zeros when events is empty. Events must be sorted by start (they are after
// to_fixed_width_events). Interval sweep, parallelized over windows; results
// are identical to the brute-force double loop for any input.
OpSignal label_windows(const std::vector<Window>& windows, const EventSet& events);

}  // namespace eventseer
