#pragma once

#include <utility>
#include <vector>

#include "pttbp/time_series.hpp"

namespace pttbp {

/// The three key moments of one cuff measurement: inflation start, deflation
/// start (episode maximum), deflation end (when the monitor shows its reading).
struct KeyMoments {
    double t1_s = 0.0;
    double t2_s = 0.0;
    double t3_s = 0.0;
};

/// Time window holding exactly one cuff measurement, with its reference
/// readings attached. Windows are half-open [begin_s, end_s).
struct MeasurementInterval {
    double begin_s = 0.0;
    double end_s = 0.0;
    KeyMoments moments;
    double ref_sbp_mmhg = 0.0;
    double ref_dbp_mmhg = 0.0;
};

struct SegmentationOptions {
    double min_gap_s = 10.0;           // cuff measurements cannot repeat faster
    double threshold_frac = 0.10;      // crossing level above baseline, per episode
    double baseline_window_s = 60.0;   // window around each episode for its baseline
    double baseline_percentile = 5.0;  // robust baseline within that window
    double min_amplitude_frac = 0.25;  // episode amplitude gate vs global range
};

/// Detect inflation/deflation episodes on a low-passed FSR channel.
/// Per episode: t2 is the maximum, t1 the last upward crossing of
/// baseline + threshold_frac * amplitude before t2, t3 the first downward
/// crossing after t2 (both linearly interpolated between samples).
/// Flat signals yield an empty sequence.
std::vector<KeyMoments> detect_key_moments(const TimeSeries& fsr,
                                           const SegmentationOptions& opt = {});

/// Split the recording at midpoints of consecutive t3 moments and attach the
/// reference readings positionally. refs holds (sbp, dbp) in chronological
/// order; a count mismatch against the detected moments throws
/// manifest_mismatch_error.
std::vector<MeasurementInterval> partition_intervals(
    const std::vector<KeyMoments>& moments,
    std::pair<double, double> recording_span,
    const std::vector<std::pair<double, double>>& refs);

}  // namespace pttbp
