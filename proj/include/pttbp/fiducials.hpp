#pragma once

#include <vector>

#include "pttbp/time_series.hpp"

namespace pttbp {

/// Per-beat PPG fiducial triple: upstroke onset, steepest-rise point, peak.
struct PpgBeat {
    double foot_s = 0.0;
    double maxslope_s = 0.0;
    double peak_s = 0.0;
};

/// One first heart sound, localized on the PCG energy envelope.
struct S1Event {
    double time_s = 0.0;
    double envelope_amplitude = 0.0;
};

/// Proximal (S1) and distal (PPG) references of the same cardiac cycle.
struct BeatPair {
    S1Event s1;
    PpgBeat ppg;
};

struct FiducialOptions {
    double envelope_window_s = 0.020;     // squared-signal moving average
    double min_peak_separation_s = 0.3;   // PPG peak refractory (HR <= 200 bpm)
    double prominence_frac = 0.5;         // gate vs median peak prominence
    double slope_window_s = 0.4;          // max-slope search window before a peak
    double slope_fit_window_s = 0.020;    // local slope-fit support (see below)
    double max_upstroke_s = 0.6;          // systolic upstroke bound (peak - foot)
    double s1_search_earliest_s = 0.6;    // backward search window from PPG foot
    double s1_search_latest_s = 0.05;
    double s1_floor_frac = 0.1;           // envelope peak floor vs global maximum
    double s1_refractory_s = 0.3;
};

/// Energy envelope: moving average of the squared signal over
/// envelope_window_s, renormalized to unit maximum. Throws
/// degenerate_signal_error for all-zero input.
TimeSeries pcg_envelope(const TimeSeries& pcg, const FiducialOptions& opt = {});

/// Detect PPG beats on a band-passed channel. Peaks are local maxima with the
/// configured separation and prominence gate; maxslope is the steepest-rise
/// point in the window before each peak, where the slope at each sample is the
/// least-squares slope over slope_fit_window_s around it (a first difference
/// widened just enough to survive in-band noise); foot is the minimum between
/// the previous peak (or window start) and the maxslope point. Ties break to
/// the earliest sample everywhere. Throws insufficient_beats_error below 2
/// beats.
std::vector<PpgBeat> detect_ppg_beats(const TimeSeries& ppg,
                                      const FiducialOptions& opt = {});

/// For each PPG beat, pick the largest envelope local maximum in the window
/// [foot - s1_search_earliest_s, foot - s1_search_latest_s] as its S1. Beats
/// with no candidate above s1_floor_frac of the global envelope maximum are
/// dropped, as are beats whose S1 would violate the refractory bound against
/// the previous pair.
std::vector<BeatPair> detect_s1(const TimeSeries& envelope,
                                const std::vector<PpgBeat>& beats,
                                const FiducialOptions& opt = {});

}  // namespace pttbp
