#pragma once

#include <cstddef>
#include <vector>

#include "eventseer/core_types.hpp"
#include "eventseer/metrics.hpp"
#include "eventseer/windowing.hpp"

namespace eventseer {

struct ExtractionParams {
    int kernel_size = 3;         // taps, odd
    double sigma = 1.0;          // in units of window steps
    double peak_threshold = 0.5; // minimum smoothed op for a peak
};

struct ExtractionGrids {
    std::vector<int> kernel_sizes;
    std::vector<double> sigmas;
    std::vector<double> thresholds;

    // kernel_size {1,3,5,7,9}, sigma {0.5,1,2,3,4,5}, threshold 0.05..0.95
    // step 0.05 (570 triples).
    static ExtractionGrids defaults();
};

// Entries proportional to exp(-k^2 / (2 sigma^2)), renormalized to unit sum
// after truncation. Throws ConfigError on even/non-positive size or
// non-positive sigma.
std::vector<double> gaussian_kernel(int size, double sigma);

// Same-length convolution with reflect padding. Constant signals are exact
// fixed points and the output never leaves [min(signal), max(signal)];
// mid_times pass through unchanged.
OpSignal smooth(const OpSignal& signal, const std::vector<double>& kernel);

// Index i is a peak iff value[i] >= threshold, value[i] > value[i-1] and
// value[i] >= value[i+1]; boundary samples use one-sided comparisons. The
// asymmetry makes the first index of a maximal plateau the reported peak.
std::vector<std::size_t> find_peaks(const OpSignal& signal, double threshold);

// One event [mid - w/2, mid + w/2] per peak; overlapping outputs are kept.
EventSet reconstruct_events(const std::vector<std::size_t>& peaks, const OpSignal& signal,
                            double width_events);

struct OptimizationResult {
    ExtractionParams params;
    double best_f1 = 0.0;
    ScoreReport report;  // re-evaluated at the winning triple
};

// Exhaustive grid search maximizing F1 of smooth -> find_peaks ->
// reconstruct_events against the width-normalized truth. Ties break toward
// higher F1, then smaller sigma, smaller kernel_size, lower threshold.
// Triples are evaluated in parallel; the reduction is deterministic.
// Throws DataError when truth is empty.
OptimizationResult optimize_extraction(const OpSignal& val_predictions, const EventSet& truth,
                                       const WindowSpec& spec, const ExtractionGrids& grids,
                                       double tolerance);

}  // namespace eventseer
