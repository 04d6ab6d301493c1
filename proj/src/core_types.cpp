#include "eventseer/core_types.hpp"

#include <algorithm>
#include <cmath>

#include "eventseer/errors.hpp"

namespace eventseer {

PeriodReport sampling_period(const TimeSeries& series) {
    const std::size_t n = series.timestamps.size();
    if (n < 2) throw DataError("series too short: need at least 2 samples to estimate a period");

    std::vector<double> gaps(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double gap = series.timestamps[i + 1] - series.timestamps[i];
        if (!(gap > 0.0)) {
            throw DataError("timestamps must be strictly increasing (violation after sample " +
                            std::to_string(i) + ")");
        }
        gaps[i] = gap;
    }

    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    const double median = (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    PeriodReport report;
    report.period = median;
    for (const double gap : gaps) {
        report.max_rel_deviation = std::max(report.max_rel_deviation, std::abs(gap - median) / median);
    }
    report.regular = report.max_rel_deviation <= 0.01;
    return report;
}

void sort_events(EventSet& events) {
    std::sort(events.begin(), events.end(), [](const Interval& a, const Interval& b) {
        if (a.start != b.start) return a.start < b.start;
        return a.end < b.end;
    });
}

EventSet to_fixed_width_events(const EventSet& raw, double width_events) {
    if (!(width_events > 0.0)) throw ConfigError("width_events must be > 0");
    EventSet out;
    out.reserve(raw.size());
    const double half = 0.5 * width_events;
    for (const Interval& e : raw) {
        const double mid = e.mid();
        out.push_back({mid - half, mid + half});
    }
    sort_events(out);
    return out;
}

}  // namespace eventseer
