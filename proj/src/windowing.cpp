#include "eventseer/windowing.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eventseer/errors.hpp"

namespace eventseer {

std::vector<Window> slide(const TimeSeries& series, const WindowSpec& spec) {
    if (spec.width < 1 || spec.step < 1) throw ConfigError("window width and step must be >= 1");
    const std::size_t n = series.size();
    const std::size_t width = static_cast<std::size_t>(spec.width);
    const std::size_t step = static_cast<std::size_t>(spec.step);
    if (n < width) throw DataError("no complete window: series has " + std::to_string(n) +
                                   " samples, window width is " + std::to_string(spec.width));

    const double period = sampling_period(series).period;
    const std::size_t f = series.feature_count();
    const std::size_t count = (n - width) / step + 1;

    std::vector<Window> windows(count);
    for (std::size_t i = 0; i < count; ++i) {
        Window& w = windows[i];
        w.index = i;
        w.first_sample = i * step;
        w.span.start = series.timestamps[w.first_sample];
        w.span.end = w.span.start + static_cast<double>(spec.width) * period;
        w.mid_time = 0.5 * (w.span.start + w.span.end);
        w.features.resize(width * f);
        for (std::size_t s = 0; s < width; ++s) {
            const double* row = series.row(w.first_sample + s);
            for (std::size_t j = 0; j < f; ++j) w.features[s * f + j] = row[j];
        }
    }
    return windows;
}

double interval_overlap(const Interval& a, const Interval& b) {
    const double inter = std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
    const double uni = a.duration() + b.duration() - inter;
    if (uni <= 0.0) return a.start == b.start ? 1.0 : 0.0;  // both are points
    return inter / uni;
}

namespace {

// Serial sweep over a contiguous window range. Events are sorted by start;
// an event whose end precedes the current window start can never overlap a
// later window, so the front pointer only advances. With equal-width events
// (the normalized case) the cost is O(windows + matches).
void label_range(const std::vector<Window>& windows, const EventSet& events,
                 std::size_t begin, std::size_t end, double* out) {
    std::size_t lo = 0;
    for (std::size_t i = begin; i < end; ++i) {
        const Interval& span = windows[i].span;
        while (lo < events.size() && events[lo].end <= span.start) ++lo;
        double best = 0.0;
        for (std::size_t j = lo; j < events.size() && events[j].start < span.end; ++j) {
            best = std::max(best, interval_overlap(span, events[j]));
        }
        out[i] = best;
    }
}

}  // namespace

OpSignal label_windows(const std::vector<Window>& windows, const EventSet& events) {
    OpSignal signal;
    signal.mid_times.reserve(windows.size());
    for (const Window& w : windows) signal.mid_times.push_back(w.mid_time);
    signal.values.assign(windows.size(), 0.0);
    if (windows.empty() || events.empty()) return signal;

    const std::size_t n = windows.size();
#ifdef _OPENMP
#pragma omp parallel
    {
        const std::size_t nthreads = static_cast<std::size_t>(omp_get_num_threads());
        const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
        const std::size_t chunk = (n + nthreads - 1) / nthreads;
        const std::size_t begin = std::min(n, tid * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        label_range(windows, events, begin, end, signal.values.data());
    }
#else
    label_range(windows, events, 0, n, signal.values.data());
#endif
    return signal;
}

}  // namespace eventseer
