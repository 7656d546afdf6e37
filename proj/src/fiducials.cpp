#include "pttbp/fiducials.hpp"

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

// Topographic prominence: height above the higher of the two base minima,
// where each base spans to the nearest strictly higher sample (or the end).
double prominence(const std::vector<double>& x, std::size_t peak) {
    const double h = x[peak];
    double left_min = h;
    for (std::size_t i = peak; i-- > 0;) {
        if (x[i] > h) break;
        left_min = std::min(left_min, x[i]);
    }
    double right_min = h;
    for (std::size_t i = peak + 1; i < x.size(); ++i) {
        if (x[i] > h) break;
        right_min = std::min(right_min, x[i]);
    }
    return h - std::max(left_min, right_min);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

TimeSeries pcg_envelope(const TimeSeries& pcg, const FiducialOptions& opt) {
    validate(pcg, "pcg_envelope");
    const auto& x = pcg.samples;
    const std::size_t n = x.size();
    const auto half = static_cast<std::size_t>(
        std::llround(0.5 * opt.envelope_window_s * pcg.sample_rate_hz));

    // Prefix sums of the squared signal give each truncated-window mean.
    std::vector<double> csum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) csum[i + 1] = csum[i] + x[i] * x[i];

    TimeSeries out = pcg;
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        out.samples[i] = (csum[hi + 1] - csum[lo]) / static_cast<double>(hi - lo + 1);
        peak = std::max(peak, out.samples[i]);
    }
    if (peak == 0.0)
        throw degenerate_signal_error("pcg_envelope: all-zero signal");
    for (double& v : out.samples) v /= peak;
    return out;
}

std::vector<PpgBeat> detect_ppg_beats(const TimeSeries& ppg,
                                      const FiducialOptions& opt) {
    validate(ppg, "detect_ppg_beats");
    const auto& x = ppg.samples;
    const double fs = ppg.sample_rate_hz;

    // Candidate peaks: tallest-first selection under the refractory distance.
    std::vector<std::size_t> candidates = local_maxima(x);
    std::sort(candidates.begin(), candidates.end(),
              [&x](std::size_t a, std::size_t b) {
                  return x[a] != x[b] ? x[a] > x[b] : a < b;
              });
    const auto min_sep = static_cast<std::size_t>(
        std::llround(opt.min_peak_separation_s * fs));
    std::vector<std::size_t> kept;
    for (std::size_t c : candidates) {
        const bool clear = std::none_of(kept.begin(), kept.end(), [&](std::size_t p) {
            return (c > p ? c - p : p - c) < min_sep;
        });
        if (clear) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());

    if (kept.size() >= 2) {
        // Reject dicrotic bumps: keep peaks of at least half the median prominence.
        std::vector<double> proms;
        proms.reserve(kept.size());
        for (std::size_t p : kept) proms.push_back(prominence(x, p));
        const double gate = opt.prominence_frac * median_of(proms);
        std::vector<std::size_t> gated;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (proms[i] >= gate) gated.push_back(kept[i]);
        kept.swap(gated);
    }

    if (kept.size() < 2)
        throw insufficient_beats_error("detect_ppg_beats: fewer than 2 beats found");

    const auto slope_win = static_cast<std::size_t>(std::llround(opt.slope_window_s * fs));
    const std::size_t n = x.size();
    const auto fit_half = static_cast<std::size_t>(
        std::llround(0.5 * opt.slope_fit_window_s * fs));
    // Local slope: least-squares line over the samples around i. Sjj is
    // constant for interior windows; truncated windows recenter on their own
    // mean index so the estimate stays a proper regression slope.
    auto slope_at = [&](std::size_t i) {
        const std::size_t lo = i >= fit_half ? i - fit_half : 0;
        const std::size_t hi = std::min(n - 1, i + fit_half);
        const double center = 0.5 * (static_cast<double>(lo) + static_cast<double>(hi));
        double sjx = 0.0, sjj = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            const double d = static_cast<double>(j) - center;
            sjx += d * x[j];
            sjj += d * d;
        }
        return sjx / sjj;
    };

    std::vector<PpgBeat> beats;
    beats.reserve(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
        const std::size_t p = kept[k];

        // Steepest rise before the peak; ties break to the earliest sample.
        const std::size_t slope_lo = p >= slope_win ? p - slope_win : 0;
        std::size_t best = slope_lo;
        double best_slope = slope_at(slope_lo);
        for (std::size_t i = slope_lo + 1; i < p; ++i) {
            const double s = slope_at(i);
            if (s > best_slope) {
                best_slope = s;
                best = i;
            }
        }
        const std::size_t maxslope = best;

        // Foot: minimum between the previous peak (or window start) and the
        // maxslope point; earliest sample wins ties.
        std::size_t search_lo = k > 0 ? kept[k - 1] : slope_lo;
        search_lo = std::max(search_lo, slope_lo);
        std::size_t foot = search_lo;
        for (std::size_t i = search_lo; i <= maxslope; ++i)
            if (x[i] < x[foot]) foot = i;

        PpgBeat beat;
        beat.foot_s = ppg.time_at(foot);
        beat.maxslope_s = ppg.time_at(maxslope);
        beat.peak_s = ppg.time_at(p);
        const bool ordered =
            beat.foot_s <= beat.maxslope_s && beat.maxslope_s <= beat.peak_s;
        if (ordered && beat.peak_s - beat.foot_s < opt.max_upstroke_s)
            beats.push_back(beat);
    }

    if (beats.size() < 2)
        throw insufficient_beats_error("detect_ppg_beats: fewer than 2 valid beats");
    return beats;
}

std::vector<BeatPair> detect_s1(const TimeSeries& envelope,
                                const std::vector<PpgBeat>& beats,
                                const FiducialOptions& opt) {
    validate(envelope, "detect_s1");
    if (beats.empty())
        throw std::invalid_argument("detect_s1: no PPG beats supplied");

    const auto& env = envelope.samples;
    const std::vector<std::size_t> env_peaks = local_maxima(env);
    const double global_max = *std::max_element(env.begin(), env.end());
    const double floor = opt.s1_floor_frac * global_max;

    std::vector<BeatPair> pairs;
    pairs.reserve(beats.size());
    for (const PpgBeat& beat : beats) {
        const double win_lo = beat.foot_s - opt.s1_search_earliest_s;
        const double win_hi = beat.foot_s - opt.s1_search_latest_s;

        // Largest envelope local maximum in the search window; earliest wins
        // ties so a flat-topped burst stays put.
        double best_amp = -1.0;
        std::size_t best_idx = 0;
        for (std::size_t p : env_peaks) {
            const double t = envelope.time_at(p);
            if (t < win_lo || t > win_hi) continue;
            if (env[p] < floor) continue;
            if (env[p] > best_amp) {
                best_amp = env[p];
                best_idx = p;
            }
        }
        if (best_amp < 0.0) continue;  // silent PCG in this beat's window

        BeatPair pair;
        pair.s1.time_s = envelope.time_at(best_idx);
        pair.s1.envelope_amplitude = best_amp;
        pair.ppg = beat;

        if (!pairs.empty() &&
            pair.s1.time_s - pairs.back().s1.time_s < opt.s1_refractory_s)
            continue;  // same sound claimed twice; keep the earlier pairing
        pairs.push_back(pair);
    }
    return pairs;
}

}  // namespace pttbp
