// pttbp: PTT-based blood-pressure estimation toolkit.
//
// Subcommands: synth (synthetic cohort), extract (recordings -> per-interval
// PTT aggregates), evaluate (aggregates -> leave-one-out reports), run
// (extract + evaluate). Exit codes: 0 success, 1 usage/config error, 2 data
// error, 3 internal invariant violation.

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pttbp/errors.hpp"
#include "pttbp/io.hpp"
#include "pttbp/pipeline.hpp"
#include "pttbp/synthgen.hpp"

namespace fs = std::filesystem;
using namespace pttbp;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string kind;
    int jobs = 1;
};

PipelineConfig make_config(const CommonArgs& args) {
    PipelineConfig config =
        args.config_path.empty() ? PipelineConfig{} : load_config(args.config_path);
    if (!args.kind.empty()) config.ptt_kind = ptt_kind_from_string(args.kind);
    return config;
}

// Deterministic parallel map: work items are claimed by index, results land in
// preallocated slots, so the reduction order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> workers;
    const int count = std::min<int>(jobs, static_cast<int>(n));
    workers.reserve(count);
    for (int t = 0; t < count; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
}

void run_synth(const std::string& out_dir, int n_subjects, std::uint64_t seed,
               int n_measurements, double snr_db, int jobs) {
    fs::create_directories(out_dir);

    std::vector<SyntheticSubject> subjects(n_subjects);
    parallel_for(n_subjects, jobs, [&](std::size_t i) {
        subjects[i] = generate(
            cohort_profile(static_cast<int>(i), seed, n_measurements, snr_db));
    });

    std::vector<SubjectManifest> manifest;
    std::vector<std::pair<std::string, CalibrationModel>> truth_models;
    for (const SyntheticSubject& s : subjects) {
        const std::string& id = s.recording.subject_id;
        write_recording_csv(fs::path(out_dir) / (id + ".csv"), s.recording);
        write_truth_csv(fs::path(out_dir) / (id + "_truth.csv"), s.truth);
        manifest.push_back({id, id + ".csv", s.truth.readings});
        truth_models.emplace_back(id, s.truth.sbp_model);
        truth_models.emplace_back(id, s.truth.dbp_model);
    }
    write_manifest(fs::path(out_dir) / "manifest.txt", manifest);
    write_models_txt(fs::path(out_dir) / "truth_models.txt", truth_models);
    std::cout << "wrote " << n_subjects << " subjects to " << out_dir << "\n";
}

std::vector<IntervalAggregateRow> run_extract(const std::string& manifest_path,
                                              const PipelineConfig& config,
                                              int jobs) {
    const auto manifest = read_manifest(manifest_path);

    std::vector<ExtractionResult> results(manifest.size());
    parallel_for(manifest.size(), jobs, [&](std::size_t i) {
        const Recording rec =
            read_recording_csv(manifest[i].recording_path, manifest[i].subject_id);
        results[i] = extract_subject(rec, manifest[i].readings, config);
    });

    std::vector<IntervalAggregateRow> rows;
    for (const auto& result : results) {
        for (const auto& warning : result.warnings)
            std::cerr << "warning: " << warning << "\n";
        rows.insert(rows.end(), result.rows.begin(), result.rows.end());
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return a.subject_id != b.subject_id ? a.subject_id < b.subject_id
                                            : a.interval_index < b.interval_index;
    });
    return rows;
}

void run_evaluate(const std::vector<IntervalAggregateRow>& rows,
                  const PipelineConfig& config, const std::string& report_dir) {
    fs::create_directories(report_dir);
    const EvaluationOutput output = evaluate_rows(rows, config.ptt_kind);
    for (const auto& warning : output.warnings)
        std::cerr << "warning: " << warning << "\n";

    std::vector<PredictionRecord> all_records = output.sbp.pooled.records;
    all_records.insert(all_records.end(), output.dbp.pooled.records.begin(),
                       output.dbp.pooled.records.end());

    const fs::path dir(report_dir);
    write_report_txt(dir / "report.txt", output.sbp, output.dbp, config.ptt_kind);
    write_records_csv(dir / "records.csv", all_records);
    write_bland_altman_csv(dir / "bland_altman_sbp.csv", output.sbp.pooled.records);
    write_bland_altman_csv(dir / "bland_altman_dbp.csv", output.dbp.pooled.records);
    write_models_txt(dir / "models.txt", output.models);

    for (const EvaluationReport* rep : {&output.sbp.pooled, &output.dbp.pooled}) {
        std::printf("%s (PTT_%s): n=%d MAE=%.3f STD=%.3f r=%.3f\n",
                    to_string(rep->target).c_str(),
                    to_string(config.ptt_kind).c_str(), rep->n, rep->mae_mmhg,
                    rep->std_mmhg, rep->r);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PTT-based blood-pressure estimation toolkit"};
    app.require_subcommand(1);

    CommonArgs common;

    auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
    std::string synth_out;
    int n_subjects = 24;
    int n_measurements = 8;
    std::uint64_t seed = 1;
    double snr_db = 30.0;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--subjects", n_subjects, "number of subjects");
    synth->add_option("--measurements", n_measurements, "cuff measurements per subject");
    synth->add_option("--seed", seed, "cohort seed");
    synth->add_option("--snr", snr_db, "per-channel SNR in dB");
    synth->add_option("--jobs", common.jobs, "parallel workers");

    auto* extract = app.add_subcommand("extract", "recordings -> PTT aggregates");
    std::string manifest_path, aggregates_out;
    extract->add_option("--manifest", manifest_path, "cohort manifest")->required();
    extract->add_option("--out", aggregates_out, "aggregates CSV path")->required();
    extract->add_option("--config", common.config_path, "pipeline config file");
    extract->add_option("--jobs", common.jobs, "parallel workers");

    auto* evaluate = app.add_subcommand("evaluate", "aggregates -> reports");
    std::string aggregates_path, report_dir;
    evaluate->add_option("--aggregates", aggregates_path, "aggregates CSV")->required();
    evaluate->add_option("--out", report_dir, "report directory")->required();
    evaluate->add_option("--config", common.config_path, "pipeline config file");
    evaluate->add_option("--kind", common.kind, "PTT kind: foot, dslope or peak");

    auto* run = app.add_subcommand("run", "extract + evaluate");
    std::string run_manifest, run_out;
    run->add_option("--manifest", run_manifest, "cohort manifest")->required();
    run->add_option("--out", run_out, "output directory")->required();
    run->add_option("--config", common.config_path, "pipeline config file");
    run->add_option("--kind", common.kind, "PTT kind: foot, dslope or peak");
    run->add_option("--jobs", common.jobs, "parallel workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) {
            if (n_subjects <= 0)
                throw std::invalid_argument("synth: --subjects must be positive");
            if (n_measurements < 3)
                throw std::invalid_argument("synth: --measurements must be at least 3");
            run_synth(synth_out, n_subjects, seed, n_measurements, snr_db,
                      common.jobs);
        } else if (extract->parsed()) {
            const auto rows =
                run_extract(manifest_path, make_config(common), common.jobs);
            write_aggregates_csv(aggregates_out, rows);
        } else if (evaluate->parsed()) {
            const PipelineConfig config = make_config(common);
            run_evaluate(read_aggregates_csv(aggregates_path), config, report_dir);
        } else if (run->parsed()) {
            const PipelineConfig config = make_config(common);
            const auto rows = run_extract(run_manifest, config, common.jobs);
            fs::create_directories(run_out);
            write_aggregates_csv(fs::path(run_out) / "aggregates.csv", rows);
            run_evaluate(rows, config, run_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
