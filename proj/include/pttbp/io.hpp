#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pttbp/calibration.hpp"
#include "pttbp/evaluation.hpp"
#include "pttbp/synthgen.hpp"
#include "pttbp/time_series.hpp"

namespace pttbp {

/// One cohort-manifest entry: where a subject's recording lives and the
/// chronological cuff readings taken during it.
struct SubjectManifest {
    std::string subject_id;
    std::string recording_path;  // resolved against the manifest's directory
    std::vector<std::pair<double, double>> readings;  // (sbp, dbp) mmHg
};

/// Per-interval extraction output, one row per (subject, measurement).
struct IntervalAggregateRow {
    std::string subject_id;
    int interval_index = 0;
    double ptt_f_s = 0.0;
    double ptt_d_s = 0.0;
    double ptt_p_s = 0.0;
    double sbp_mmhg = 0.0;
    double dbp_mmhg = 0.0;
};

// Recording files: CSV with header t_ms,pcg,ppg,fsr, one row per sample at
// exactly 1 ms spacing. Values are written with enough digits to round-trip.
void write_recording_csv(const std::filesystem::path& path, const Recording& rec);
Recording read_recording_csv(const std::filesystem::path& path,
                             const std::string& subject_id);

// Cohort manifest: structured text, one block per subject:
//   subject s01
//   recording s01.csv
//   reading 152.4 88.7
void write_manifest(const std::filesystem::path& path,
                    const std::vector<SubjectManifest>& subjects);
std::vector<SubjectManifest> read_manifest(const std::filesystem::path& path);

void write_truth_csv(const std::filesystem::path& path, const GroundTruth& truth);

void write_aggregates_csv(const std::filesystem::path& path,
                          const std::vector<IntervalAggregateRow>& rows);
std::vector<IntervalAggregateRow> read_aggregates_csv(
    const std::filesystem::path& path);

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<PredictionRecord>& records);

/// Bland-Altman points, one per record: mean_of_pair_mmhg,difference_mmhg.
void write_bland_altman_csv(const std::filesystem::path& path,
                            const std::vector<PredictionRecord>& records);

void write_report_txt(const std::filesystem::path& path, const CohortReport& sbp,
                      const CohortReport& dbp, PttKind kind);

// Calibration models as structured text, one line per model:
//   model <subject_id> <SBP|DBP> <b0> <b1> <n_points>
void write_models_txt(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, CalibrationModel>>& models);
std::vector<std::pair<std::string, CalibrationModel>> read_models_txt(
    const std::filesystem::path& path);

}  // namespace pttbp
