#include "pttbp/pipeline.hpp"

#include <algorithm>
#include <map>

#include "pttbp/errors.hpp"
#include "pttbp/preprocess.hpp"

namespace pttbp {

double row_ptt(const IntervalAggregateRow& row, PttKind kind) {
    switch (kind) {
        case PttKind::foot: return row.ptt_f_s;
        case PttKind::dslope: return row.ptt_d_s;
        case PttKind::peak: return row.ptt_p_s;
    }
    return row.ptt_p_s;
}

ExtractionResult extract_subject(const Recording& raw,
                                 const std::vector<std::pair<double, double>>& readings,
                                 const PipelineConfig& config) {
    const Recording clean = preprocess_recording(raw, config);

    const auto moments = detect_key_moments(clean.fsr, config.segmentation);
    if (moments.size() != readings.size())
        throw manifest_mismatch_error(
            "subject " + raw.subject_id + ": detected " +
            std::to_string(moments.size()) + " cuff episodes but the manifest has " +
            std::to_string(readings.size()) + " readings");
    const auto intervals = partition_intervals(
        moments, {clean.fsr.start_time_s, clean.fsr.end_time_s()}, readings);

    const TimeSeries envelope = pcg_envelope(clean.pcg, config.fiducials);
    const auto beats = detect_ppg_beats(clean.ppg, config.fiducials);
    const auto pairs = detect_s1(envelope, beats, config.fiducials);

    constexpr PttKind kKinds[] = {PttKind::foot, PttKind::dslope, PttKind::peak};
    std::vector<PttSample> samples_by_kind[3];
    for (int k = 0; k < 3; ++k)
        samples_by_kind[k] = compute_ptt(pairs, kKinds[k], config.ptt);

    ExtractionResult result;
    for (std::size_t iv = 0; iv < intervals.size(); ++iv) {
        const MeasurementInterval& interval = intervals[iv];
        IntervalAggregateRow row;
        row.subject_id = raw.subject_id;
        row.interval_index = static_cast<int>(iv);
        row.sbp_mmhg = interval.ref_sbp_mmhg;
        row.dbp_mmhg = interval.ref_dbp_mmhg;

        bool ok = true;
        for (int k = 0; k < 3 && ok; ++k) {
            std::vector<PttSample> in_window;
            for (const PttSample& s : samples_by_kind[k])
                if (s.time_s >= interval.begin_s && s.time_s < interval.end_s)
                    in_window.push_back(s);
            try {
                const PttAggregate agg =
                    aggregate_interval(reject_outliers(std::move(in_window)), interval,
                                       static_cast<int>(iv), kKinds[k], config.ptt);
                switch (kKinds[k]) {
                    case PttKind::foot: row.ptt_f_s = agg.ptt_s; break;
                    case PttKind::dslope: row.ptt_d_s = agg.ptt_s; break;
                    case PttKind::peak: row.ptt_p_s = agg.ptt_s; break;
                }
            } catch (const sparse_interval_error& e) {
                result.warnings.push_back("subject " + raw.subject_id + ": " +
                                          e.what() + " (" + to_string(kKinds[k]) +
                                          "); interval skipped");
                ok = false;
            }
        }
        if (ok) result.rows.push_back(std::move(row));
    }
    return result;
}

EvaluationOutput evaluate_rows(const std::vector<IntervalAggregateRow>& rows,
                               PttKind kind) {
    std::map<std::string, std::vector<IntervalAggregateRow>> by_subject;
    for (const auto& row : rows) by_subject[row.subject_id].push_back(row);

    EvaluationOutput out;
    std::map<std::string, std::vector<PredictionRecord>> sbp_records;
    std::map<std::string, std::vector<PredictionRecord>> dbp_records;
    for (const auto& [subject_id, subject_rows] : by_subject) {
        if (subject_rows.size() < 3) {
            out.warnings.push_back("subject " + subject_id + ": only " +
                                   std::to_string(subject_rows.size()) +
                                   " usable intervals, excluded from evaluation");
            continue;
        }
        std::vector<PttAggregate> aggregates;
        aggregates.reserve(subject_rows.size());
        for (const auto& row : subject_rows) {
            PttAggregate agg;
            agg.interval_index = row.interval_index;
            agg.kind = kind;
            agg.ptt_s = row_ptt(row, kind);
            agg.ref_sbp_mmhg = row.sbp_mmhg;
            agg.ref_dbp_mmhg = row.dbp_mmhg;
            aggregates.push_back(agg);
        }
        sbp_records[subject_id] = loocv_subject(subject_id, aggregates, BpTarget::sbp);
        dbp_records[subject_id] = loocv_subject(subject_id, aggregates, BpTarget::dbp);

        std::vector<std::pair<double, double>> sbp_points, dbp_points;
        for (const auto& agg : aggregates) {
            sbp_points.emplace_back(agg.ptt_s, agg.ref_sbp_mmhg);
            dbp_points.emplace_back(agg.ptt_s, agg.ref_dbp_mmhg);
        }
        out.models.emplace_back(subject_id,
                                fit_calibration(sbp_points, BpTarget::sbp));
        out.models.emplace_back(subject_id,
                                fit_calibration(dbp_points, BpTarget::dbp));
    }
    if (sbp_records.empty())
        throw insufficient_data_error("evaluate: no subject has enough intervals");

    out.sbp = pooled_report(sbp_records, BpTarget::sbp);
    out.dbp = pooled_report(dbp_records, BpTarget::dbp);
    return out;
}

}  // namespace pttbp
