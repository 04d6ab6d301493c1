#include "eventseer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "eventseer/errors.hpp"

namespace eventseer {

MatchResult match_events(const EventSet& predicted, const EventSet& truth, double tolerance) {
    if (!(tolerance > 0.0)) throw ConfigError("matching tolerance must be > 0");

    struct Candidate {
        double abs_dt;
        double p_start;
        double t_start;
        std::size_t p;
        std::size_t t;
        double dt;
    };
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < predicted.size(); ++p) {
        const double pmid = predicted[p].mid();
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const double dt = pmid - truth[t].mid();
            if (std::abs(dt) <= tolerance) {
                candidates.push_back(
                    {std::abs(dt), predicted[p].start, truth[t].start, p, t, dt});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.abs_dt, a.p_start, a.t_start, a.p, a.t) <
               std::tie(b.abs_dt, b.p_start, b.t_start, b.p, b.t);
    });

    std::vector<bool> p_used(predicted.size(), false), t_used(truth.size(), false);
    MatchResult result;
    result.tolerance = tolerance;
    for (const Candidate& c : candidates) {
        if (p_used[c.p] || t_used[c.t]) continue;
        p_used[c.p] = true;
        t_used[c.t] = true;
        result.pairs.push_back({predicted[c.p], truth[c.t], c.dt});
    }
    result.unmatched_predicted = predicted.size() - result.pairs.size();
    result.unmatched_truth = truth.size() - result.pairs.size();
    return result;
}

ScoreReport score(const MatchResult& match) {
    ScoreReport report;
    report.true_positive = match.pairs.size();
    report.false_positive = match.unmatched_predicted;
    report.false_negative = match.unmatched_truth;
    report.tolerance = match.tolerance;

    const double tp = static_cast<double>(report.true_positive);
    const double fp = static_cast<double>(report.false_positive);
    const double fn = static_cast<double>(report.false_negative);
    report.precision = (tp + fp > 0.0) ? tp / (tp + fp) : 0.0;
    report.recall = (tp + fn > 0.0) ? tp / (tp + fn) : 0.0;
    const double pr = report.precision + report.recall;
    report.f1 = (pr > 0.0) ? 2.0 * report.precision * report.recall / pr : 0.0;

    if (!match.pairs.empty()) {
        double sum = 0.0;
        for (const MatchPair& pair : match.pairs) sum += pair.delta_t;
        report.delta_t_mean = sum / static_cast<double>(match.pairs.size());
        double sq = 0.0;
        for (const MatchPair& pair : match.pairs) {
            const double d = pair.delta_t - report.delta_t_mean;
            sq += d * d;
        }
        report.delta_t_std = std::sqrt(sq / static_cast<double>(match.pairs.size()));
    }
    return report;
}

std::vector<HistogramBin> delta_t_histogram(const MatchResult& match, double bin_width) {
    if (!(bin_width > 0.0)) throw ConfigError("histogram bin_width must be > 0");
    std::map<long long, std::size_t> bins;
    for (const MatchPair& pair : match.pairs) {
        const long long k =
            static_cast<long long>(std::floor((pair.delta_t + 0.5 * bin_width) / bin_width));
        ++bins[k];
    }
    std::vector<HistogramBin> out;
    out.reserve(bins.size());
    for (const auto& [k, count] : bins) {
        out.push_back({static_cast<double>(k) * bin_width - 0.5 * bin_width, count});
    }
    return out;
}

}  // namespace eventseer
