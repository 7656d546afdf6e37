#include "pttbp/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pttbp/errors.hpp"

namespace pttbp {

namespace {

// Strict local maxima; plateaus report their earliest sample.
std::vector<std::size_t> local_maxima(const std::vector<double>& x) {
    std::vector<std::size_t> peaks;
    const std::size_t n = x.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (x[i] > x[i - 1]) {
            std::size_t j = i;
            while (j + 1 < n && x[j + 1] == x[i]) ++j;
            if (j + 1 < n && x[j + 1] < x[i]) {
                peaks.push_back(i);
                i = j + 1;
                continue;
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    return peaks;
}

double percentile(std::vector<double> v, double pct) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const double pos = pct / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

// Time of the crossing between samples i and i+1, linearly interpolated.
double interpolate_crossing(const TimeSeries& x, std::size_t i, double level) {
    const double a = x.samples[i];
    const double b = x.samples[i + 1];
    const double frac = (b == a) ? 0.0 : (level - a) / (b - a);
    return x.time_at(i) + frac / x.sample_rate_hz;
}

}  // namespace

std::vector<KeyMoments> detect_key_moments(const TimeSeries& fsr,
                                           const SegmentationOptions& opt) {
    validate(fsr, "detect_key_moments");
    const auto& x = fsr.samples;
    const std::size_t n = x.size();
    if (n < 3) return {};

    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    const double global_range = *max_it - *min_it;
    if (global_range == 0.0) return {};

    // Candidate episode peaks: tallest first, enforcing the minimum gap.
    std::vector<std::size_t> candidates = local_maxima(x);
    std::sort(candidates.begin(), candidates.end(),
              [&x](std::size_t a, std::size_t b) {
                  return x[a] != x[b] ? x[a] > x[b] : a < b;
              });
    const auto min_gap_samples =
        static_cast<std::size_t>(std::llround(opt.min_gap_s * fsr.sample_rate_hz));
    std::vector<std::size_t> peaks;
    for (std::size_t c : candidates) {
        const bool clear = std::none_of(peaks.begin(), peaks.end(), [&](std::size_t p) {
            return (c > p ? c - p : p - c) < min_gap_samples;
        });
        if (clear) peaks.push_back(c);
    }
    std::sort(peaks.begin(), peaks.end());

    std::vector<KeyMoments> out;
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        const std::size_t p = peaks[k];

        // Robust local baseline from the surrounding window.
        const auto half_win = static_cast<std::size_t>(
            std::llround(0.5 * opt.baseline_window_s * fsr.sample_rate_hz));
        const std::size_t wlo = p >= half_win ? p - half_win : 0;
        const std::size_t whi = std::min(n, p + half_win + 1);
        const double baseline = percentile(
            std::vector<double>(x.begin() + wlo, x.begin() + whi),
            opt.baseline_percentile);

        const double amplitude = x[p] - baseline;
        if (amplitude < opt.min_amplitude_frac * global_range) continue;
        const double level = baseline + opt.threshold_frac * amplitude;

        // Searches stay between neighboring episode peaks.
        const std::size_t left_bound = k > 0 ? peaks[k - 1] : 0;
        const std::size_t right_bound = k + 1 < peaks.size() ? peaks[k + 1] : n - 1;

        KeyMoments m;
        m.t2_s = fsr.time_at(p);

        bool found_up = false;
        for (std::size_t i = p; i > left_bound; --i) {
            if (x[i - 1] < level && x[i] >= level) {
                m.t1_s = interpolate_crossing(fsr, i - 1, level);
                found_up = true;
                break;
            }
        }
        bool found_down = false;
        for (std::size_t i = p; i + 1 <= right_bound; ++i) {
            if (x[i] >= level && x[i + 1] < level) {
                m.t3_s = interpolate_crossing(fsr, i, level);
                found_down = true;
                break;
            }
        }
        if (found_up && found_down && m.t1_s < m.t2_s && m.t2_s < m.t3_s)
            out.push_back(m);
    }
    return out;
}

std::vector<MeasurementInterval> partition_intervals(
    const std::vector<KeyMoments>& moments,
    std::pair<double, double> recording_span,
    const std::vector<std::pair<double, double>>& refs) {
    if (moments.empty())
        throw std::invalid_argument("partition_intervals: no key moments");
    if (moments.size() != refs.size())
        throw manifest_mismatch_error(
            "partition_intervals: " + std::to_string(moments.size()) +
            " detected cuff episodes vs " + std::to_string(refs.size()) +
            " manifest readings");

    const auto [span_begin, span_end] = recording_span;
    std::vector<MeasurementInterval> out;
    out.reserve(moments.size());
    for (std::size_t k = 0; k < moments.size(); ++k) {
        MeasurementInterval iv;
        iv.moments = moments[k];
        iv.begin_s = k == 0 ? span_begin
                            : 0.5 * (moments[k - 1].t3_s + moments[k].t3_s);
        iv.end_s = k + 1 == moments.size()
                       ? span_end
                       : 0.5 * (moments[k].t3_s + moments[k + 1].t3_s);
        iv.ref_sbp_mmhg = refs[k].first;
        iv.ref_dbp_mmhg = refs[k].second;
        if (!(iv.ref_sbp_mmhg > iv.ref_dbp_mmhg) || !(iv.ref_dbp_mmhg > 0.0))
            throw std::invalid_argument(
                "partition_intervals: reference readings must satisfy sbp > dbp > 0");
        out.push_back(iv);
    }
    return out;
}

}  // namespace pttbp
