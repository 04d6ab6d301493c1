#pragma once

#include <string>
#include <vector>

namespace eventseer {

// All times are seconds as doubles on a common axis: epoch seconds for
// wall-clock data, sample index x period for synthetic data.
using Timestamp = double;

struct Interval {
    Timestamp start = 0.0;
    Timestamp end = 0.0;

    double duration() const { return end - start; }
    double mid() const { return 0.5 * (start + end); }
};

struct TimeSeries {
    std::vector<Timestamp> timestamps;             // strictly increasing
    std::vector<double> values;                    // row-major, n x f
    std::vector<std::string> feature_names;

    std::size_t size() const { return timestamps.size(); }
    std::size_t feature_count() const { return feature_names.size(); }
    const double* row(std::size_t i) const { return values.data() + i * feature_names.size(); }
};

// Ordered by start, ties broken by end. Point events (start == end) are
// allowed until width normalization.
using EventSet = std::vector<Interval>;

struct PeriodReport {
    double period = 0.0;            // median of consecutive timestamp gaps
    double max_rel_deviation = 0.0; // worst gap deviation relative to the median
    bool regular = true;            // false when any gap deviates by > 1%
};

// Throws DataError on fewer than 2 samples or non-increasing timestamps.
PeriodReport sampling_period(const TimeSeries& series);

// Replaces each event with [mid - w/2, mid + w/2]; the input width is
// discarded. Output is re-sorted. Idempotent. Throws ConfigError on
// width_events <= 0.
EventSet to_fixed_width_events(const EventSet& raw, double width_events);

void sort_events(EventSet& events);

}  // namespace eventseer
