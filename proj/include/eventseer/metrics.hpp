#pragma once

#include <cstddef>
#include <vector>

#include "eventseer/core_types.hpp"

namespace eventseer {

struct MatchPair {
    Interval predicted;
    Interval truth;
    double delta_t = 0.0;  // predicted mid - true mid, seconds
};

struct MatchResult {
    std::vector<MatchPair> pairs;  // one-to-one
    std::size_t unmatched_predicted = 0;
    std::size_t unmatched_truth = 0;
    double tolerance = 0.0;
};

struct ScoreReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;
    double tolerance = 0.0;
    double delta_t_mean = 0.0;
    double delta_t_std = 0.0;
};

// Greedy one-to-one matching on mid-time distance: candidate pairs with
// |mid(p) - mid(t)| <= tolerance are sorted by (|delta_t|, p.start, t.start)
// and accepted when both endpoints are still free. Throws ConfigError on
// tolerance <= 0.
MatchResult match_events(const EventSet& predicted, const EventSet& truth, double tolerance);

// Precision/recall/F1 with the 0/0 -> 0 convention.
ScoreReport score(const MatchResult& match);

struct HistogramBin {
    double lower_edge = 0.0;
    std::size_t count = 0;
};

// Signed time-shift histogram with bins centered so that zero is a bin
// center; only non-empty bins are emitted, sorted by edge.
std::vector<HistogramBin> delta_t_histogram(const MatchResult& match, double bin_width);

}  // namespace eventseer
