#include "eventseer/extraction.hpp"

#include <algorithm>
#include <cmath>

#include "eventseer/errors.hpp"

namespace eventseer {

ExtractionGrids ExtractionGrids::defaults() {
    ExtractionGrids grids;
    grids.kernel_sizes = {1, 3, 5, 7, 9};
    grids.sigmas = {0.5, 1.0, 2.0, 3.0, 4.0, 5.0};
    for (int i = 1; i <= 19; ++i) grids.thresholds.push_back(0.05 * i);
    return grids;
}

std::vector<double> gaussian_kernel(int size, double sigma) {
    if (size < 1 || size % 2 == 0) throw ConfigError("gaussian kernel size must be odd and >= 1");
    if (!(sigma > 0.0)) throw ConfigError("gaussian sigma must be > 0");
    const int half = size / 2;
    std::vector<double> kernel(size);
    double sum = 0.0;
    for (int k = -half; k <= half; ++k) {
        const double v = std::exp(-0.5 * static_cast<double>(k) * static_cast<double>(k) /
                                  (sigma * sigma));
        kernel[k + half] = v;
        sum += v;
    }
    for (double& v : kernel) v /= sum;
    return kernel;
}

namespace {

// Reflect fold with edge repetition: ... x1 x0 | x0 x1 ... xn-1 | xn-1 xn-2 ...
std::size_t reflect_index(long long j, long long n) {
    if (n == 1) return 0;
    const long long m = 2 * n;
    long long r = j % m;
    if (r < 0) r += m;
    if (r >= n) r = m - 1 - r;
    return static_cast<std::size_t>(r);
}

}  // namespace

OpSignal smooth(const OpSignal& signal, const std::vector<double>& kernel) {
    if (signal.values.empty()) throw DataError("cannot smooth an empty signal");
    if (kernel.empty() || kernel.size() % 2 == 0) {
        throw ConfigError("smoothing kernel must have odd positive length");
    }

    const long long n = static_cast<long long>(signal.values.size());
    const long long half = static_cast<long long>(kernel.size()) / 2;
    const double* x = signal.values.data();

    double lo = x[0], hi = x[0];
    for (long long i = 1; i < n; ++i) {
        lo = std::min(lo, x[i]);
        hi = std::max(hi, x[i]);
    }

    OpSignal out;
    out.mid_times = signal.mid_times;
    out.values.resize(signal.values.size());
    double* y = out.values.data();

    // Difference form x[i] + sum_k w_k (x[i+k] - x[i]): constant inputs are
    // exact fixed points because every term is exactly zero. The clamp keeps
    // rounding from ever leaving the signal's range.
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const double xi = x[i];
        double acc = 0.0;
        for (long long k = -half; k <= half; ++k) {
            acc += kernel[static_cast<std::size_t>(k + half)] * (x[reflect_index(i + k, n)] - xi);
        }
        y[i] = std::clamp(xi + acc, lo, hi);
    }
    return out;
}

std::vector<std::size_t> find_peaks(const OpSignal& signal, double threshold) {
    const std::vector<double>& v = signal.values;
    const std::size_t n = v.size();
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < threshold) continue;
        const bool rises = (i == 0) || v[i] > v[i - 1];
        const bool holds = (i + 1 == n) || v[i] >= v[i + 1];
        if (rises && holds) peaks.push_back(i);
    }
    return peaks;
}

EventSet reconstruct_events(const std::vector<std::size_t>& peaks, const OpSignal& signal,
                            double width_events) {
    if (!(width_events > 0.0)) throw ConfigError("width_events must be > 0");
    EventSet events;
    events.reserve(peaks.size());
    const double half = 0.5 * width_events;
    for (const std::size_t p : peaks) {
        const double mid = signal.mid_times.at(p);
        events.push_back({mid - half, mid + half});
    }
    sort_events(events);
    return events;
}

OptimizationResult optimize_extraction(const OpSignal& val_predictions, const EventSet& truth,
                                       const WindowSpec& spec, const ExtractionGrids& grids,
                                       double tolerance) {
    if (truth.empty()) throw DataError("cannot optimize against zero reference events");
    if (grids.kernel_sizes.empty() || grids.sigmas.empty() || grids.thresholds.empty()) {
        throw ConfigError("extraction grids must be non-empty");
    }
    if (val_predictions.values.empty()) throw DataError("cannot optimize on an empty signal");

    const std::size_t n_combo = grids.kernel_sizes.size() * grids.sigmas.size();
    const std::size_t n_thr = grids.thresholds.size();
    std::vector<double> f1s(n_combo * n_thr, 0.0);

    const auto evaluate = [&](const OpSignal& smoothed, double threshold) {
        const std::vector<std::size_t> peaks = find_peaks(smoothed, threshold);
        const EventSet predicted = reconstruct_events(peaks, smoothed, spec.width_events);
        return score(match_events(predicted, truth, tolerance));
    };

    // Each (kernel_size, sigma) pair smooths once and shares it across the
    // thresholds; pairs are independent, results land in fixed slots.
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < static_cast<long long>(n_combo); ++c) {
        const int size = grids.kernel_sizes[static_cast<std::size_t>(c) / grids.sigmas.size()];
        const double sigma = grids.sigmas[static_cast<std::size_t>(c) % grids.sigmas.size()];
        const OpSignal smoothed = smooth(val_predictions, gaussian_kernel(size, sigma));
        for (std::size_t t = 0; t < n_thr; ++t) {
            f1s[static_cast<std::size_t>(c) * n_thr + t] =
                evaluate(smoothed, grids.thresholds[t]).f1;
        }
    }

    // Deterministic reduction: best F1, ties toward smaller sigma, then
    // smaller kernel, then lower threshold (by value, not grid position).
    OptimizationResult best;
    bool have = false;
    for (std::size_t c = 0; c < n_combo; ++c) {
        const int size = grids.kernel_sizes[c / grids.sigmas.size()];
        const double sigma = grids.sigmas[c % grids.sigmas.size()];
        for (std::size_t t = 0; t < n_thr; ++t) {
            const double f1 = f1s[c * n_thr + t];
            const double thr = grids.thresholds[t];
            bool take = !have;
            if (have) {
                if (f1 != best.best_f1) {
                    take = f1 > best.best_f1;
                } else if (sigma != best.params.sigma) {
                    take = sigma < best.params.sigma;
                } else if (size != best.params.kernel_size) {
                    take = size < best.params.kernel_size;
                } else {
                    take = thr < best.params.peak_threshold;
                }
            }
            if (take) {
                best.best_f1 = f1;
                best.params = {size, sigma, thr};
                have = true;
            }
        }
    }

    const OpSignal smoothed =
        smooth(val_predictions, gaussian_kernel(best.params.kernel_size, best.params.sigma));
    best.report = evaluate(smoothed, best.params.peak_threshold);
    return best;
}

}  // namespace eventseer
