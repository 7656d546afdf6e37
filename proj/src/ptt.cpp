#include "pttbp/ptt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pttbp/errors.hpp"

namespace pttbp {

namespace {

constexpr double kMadScale = 1.4826;  // MAD -> sigma for Gaussian data

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

std::string to_string(PttKind kind) {
    switch (kind) {
        case PttKind::foot: return "foot";
        case PttKind::dslope: return "dslope";
        case PttKind::peak: return "peak";
    }
    return "peak";
}

PttKind ptt_kind_from_string(const std::string& name) {
    if (name == "foot") return PttKind::foot;
    if (name == "dslope") return PttKind::dslope;
    if (name == "peak") return PttKind::peak;
    throw std::invalid_argument("unknown PTT kind '" + name +
                                "' (expected foot, dslope or peak)");
}

std::vector<PttSample> compute_ptt(const std::vector<BeatPair>& pairs,
                                   PttKind kind, const PttOptions& opt) {
    std::vector<PttSample> out;
    out.reserve(pairs.size());
    for (const BeatPair& pair : pairs) {
        double distal = 0.0;
        switch (kind) {
            case PttKind::foot: distal = pair.ppg.foot_s; break;
            case PttKind::dslope: distal = pair.ppg.maxslope_s; break;
            case PttKind::peak: distal = pair.ppg.peak_s; break;
        }
        const double ptt = distal - pair.s1.time_s;
        if (ptt < opt.min_ptt_s || ptt > opt.max_ptt_s) continue;
        out.push_back({pair.s1.time_s, ptt, kind});
    }
    return out;
}

std::vector<PttSample> reject_outliers(std::vector<PttSample> samples) {
    if (samples.size() < 2) return samples;

    for (;;) {
        std::vector<double> values;
        values.reserve(samples.size());
        for (const auto& s : samples) values.push_back(s.ptt_s);
        const double med = median_of(values);

        std::vector<double> devs;
        devs.reserve(values.size());
        for (double v : values) devs.push_back(std::abs(v - med));
        double scale = kMadScale * median_of(devs);
        if (scale == 0.0) {
            // MAD collapsed; fall back to the mean absolute deviation.
            double sum = 0.0;
            for (double d : devs) sum += d;
            scale = kMadScale * sum / static_cast<double>(devs.size());
        }

        const double cutoff = 3.0 * scale;
        std::vector<PttSample> kept;
        kept.reserve(samples.size());
        for (const auto& s : samples)
            if (std::abs(s.ptt_s - med) <= cutoff) kept.push_back(s);

        if (kept.size() == samples.size() || kept.empty()) return samples;
        samples.swap(kept);
    }
}

PttAggregate aggregate_interval(const std::vector<PttSample>& samples,
                                const MeasurementInterval& interval,
                                int interval_index, PttKind kind,
                                const PttOptions& opt) {
    if (static_cast<int>(samples.size()) < opt.min_beats)
        throw sparse_interval_error(
            "aggregate_interval: interval " + std::to_string(interval_index) +
            " has " + std::to_string(samples.size()) + " beats, needs " +
            std::to_string(opt.min_beats));
    if (!(opt.aggregation_sigma_s > 0.0))
        throw std::invalid_argument("aggregate_interval: sigma must be positive");

    const double t3 = interval.moments.t3_s;
    const double inv_two_sigma_sq =
        1.0 / (2.0 * opt.aggregation_sigma_s * opt.aggregation_sigma_s);

    double wsum = 0.0;
    double acc = 0.0;
    for (const auto& s : samples) {
        const double d = s.time_s - t3;
        const double w = std::exp(-d * d * inv_two_sigma_sq);
        wsum += w;
        acc += w * s.ptt_s;
    }

    PttAggregate agg;
    agg.interval_index = interval_index;
    agg.kind = kind;
    agg.ptt_s = acc / wsum;
    agg.n_beats = static_cast<int>(samples.size());
    agg.ref_sbp_mmhg = interval.ref_sbp_mmhg;
    agg.ref_dbp_mmhg = interval.ref_dbp_mmhg;
    return agg;
}

}  // namespace pttbp
