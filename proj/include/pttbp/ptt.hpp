#pragma once

#include <string>
#include <vector>

#include "pttbp/fiducials.hpp"
#include "pttbp/segmentation.hpp"

namespace pttbp {

/// Which PPG fiducial serves as the distal timing reference.
enum class PttKind { foot, dslope, peak };

std::string to_string(PttKind kind);
PttKind ptt_kind_from_string(const std::string& name);

/// One beat's transit time, stamped with the beat's S1 time.
struct PttSample {
    double time_s = 0.0;
    double ptt_s = 0.0;
    PttKind kind = PttKind::peak;
};

/// One measurement interval reduced to a single weighted-mean PTT.
struct PttAggregate {
    int interval_index = 0;
    PttKind kind = PttKind::peak;
    double ptt_s = 0.0;
    int n_beats = 0;
    double ref_sbp_mmhg = 0.0;
    double ref_dbp_mmhg = 0.0;
};

struct PttOptions {
    double min_ptt_s = 0.05;  // physiological transit bounds; also guards 1/PTT
    double max_ptt_s = 0.6;
    double aggregation_sigma_s = 15.0;  // Gaussian emphasis width around t3
    int min_beats = 3;
};

/// Per-beat PTT of the requested kind; samples outside [min, max] are dropped.
std::vector<PttSample> compute_ptt(const std::vector<BeatPair>& pairs,
                                   PttKind kind, const PttOptions& opt = {});

/// Robust rejection: drop samples with |ptt - median| > 3 * 1.4826 * MAD,
/// repeated until stable. When MAD collapses to zero (over half the samples
/// identical) the mean absolute deviation takes its place as the scale, so a
/// lone far outlier among near-constant samples is still removed while an
/// all-equal set passes through unchanged. Idempotent by construction.
std::vector<PttSample> reject_outliers(std::vector<PttSample> samples);

/// Gaussian-weighted mean emphasizing samples near the interval's t3 moment:
/// w_i = exp(-(time_i - t3)^2 / (2 sigma^2)), normalized to sum 1.
/// Throws sparse_interval_error below opt.min_beats samples.
PttAggregate aggregate_interval(const std::vector<PttSample>& samples,
                                const MeasurementInterval& interval,
                                int interval_index, PttKind kind,
                                const PttOptions& opt = {});

}  // namespace pttbp
