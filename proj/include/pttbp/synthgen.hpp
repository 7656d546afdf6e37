#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pttbp/calibration.hpp"
#include "pttbp/segmentation.hpp"
#include "pttbp/time_series.hpp"

namespace pttbp {

/// Recipe for one synthetic subject. Heart rate and SBP decay linearly over
/// the recording; per-beat transit time comes from inverting the SBP model,
/// ptt = b1_sbp / (SBP - b0_sbp). The DBP trajectory is also linear, which
/// makes DBP an exact affine function of 1/ptt as well; b0_dbp/b1_dbp hold the
/// implied coefficients (see consistent_profile).
struct SubjectProfile {
    std::string subject_id;
    double b0_sbp = 50.0;
    double b1_sbp = 20.0;
    double b0_dbp = 0.0;
    double b1_dbp = 0.0;
    double hr_start_bpm = 95.0;
    double hr_end_bpm = 75.0;
    double sbp_start_mmhg = 160.0;
    double sbp_end_mmhg = 125.0;
    double dbp_start_mmhg = 92.0;
    double dbp_end_mmhg = 74.0;
    int n_measurements = 8;
    double duration_s = 272.0;
    double noise_snr_db = 30.0;  // infinity disables noise
    std::uint64_t rng_seed = 0;
};

/// Everything the generator knows about the emitted recording.
struct TruthBeat {
    double s1_s = 0.0;
    double foot_s = 0.0;
    double maxslope_s = 0.0;
    double peak_s = 0.0;
    double ptt_f_s = 0.0;
    double ptt_d_s = 0.0;
    double ptt_p_s = 0.0;
    double sbp_mmhg = 0.0;
    double dbp_mmhg = 0.0;
};

struct GroundTruth {
    std::vector<TruthBeat> beats;
    std::vector<KeyMoments> cuff_moments;              // analytic threshold crossings
    std::vector<std::pair<double, double>> readings;   // trajectory at each t3
    CalibrationModel sbp_model;                        // the injected coefficients
    CalibrationModel dbp_model;                        // implied by the trajectories
};

struct SyntheticSubject {
    Recording recording;
    GroundTruth truth;
};

/// Fills b0_dbp/b1_dbp with the coefficients implied by the SBP model and the
/// two linear trajectories, so the profile's stated DBP model is exact.
SubjectProfile consistent_profile(SubjectProfile profile);

/// Deterministic per rng_seed; the seed only drives the additive noise, so two
/// seeds share identical ground-truth event times. Throws profile_error when
/// the implied transit times leave [0.05, 0.6] s or the layout does not fit.
SyntheticSubject generate(const SubjectProfile& profile);

/// Cohort construction: profile parameters varied deterministically from
/// (seed, index), all consistent by construction.
SubjectProfile cohort_profile(int index, std::uint64_t seed, int n_measurements,
                              double noise_snr_db);

}  // namespace pttbp
