#include "pttbp/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pttbp/errors.hpp"

namespace pttbp {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw io_error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    return in;
}

double parse_field(std::string_view text, const std::filesystem::path& path,
                   int lineno) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw io_error(path.string() + ":" + std::to_string(lineno) +
                       ": bad numeric field '" + std::string(text) + "'");
    return out;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void write_recording_csv(const std::filesystem::path& path, const Recording& rec) {
    validate(rec);
    auto out = open_out(path);
    out << "t_ms,pcg,ppg,fsr\n";
    char buf[160];
    const auto start_ms =
        static_cast<std::int64_t>(std::llround(rec.pcg.start_time_s * 1000.0));
    for (std::size_t i = 0; i < rec.pcg.size(); ++i) {
        const int len = std::snprintf(
            buf, sizeof(buf), "%" PRId64 ",%.17g,%.17g,%.17g\n",
            start_ms + static_cast<std::int64_t>(i), rec.pcg.samples[i],
            rec.ppg.samples[i], rec.fsr.samples[i]);
        out.write(buf, len);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

Recording read_recording_csv(const std::filesystem::path& path,
                             const std::string& subject_id) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path.string() + ": empty file");
    strip_cr(line);
    if (line != "t_ms,pcg,ppg,fsr")
        throw io_error(path.string() + ": unexpected header '" + line + "'");

    Recording rec;
    rec.subject_id = subject_id;
    std::int64_t expected_ms = 0;
    bool first = true;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 4)
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": expected 4 fields");
        const auto t_ms =
            static_cast<std::int64_t>(parse_field(fields[0], path, lineno));
        if (first) {
            expected_ms = t_ms;
            rec.pcg.start_time_s = rec.ppg.start_time_s = rec.fsr.start_time_s =
                static_cast<double>(t_ms) / 1000.0;
            first = false;
        }
        if (t_ms != expected_ms)
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": samples must be spaced exactly 1 ms apart");
        ++expected_ms;
        rec.pcg.samples.push_back(parse_field(fields[1], path, lineno));
        rec.ppg.samples.push_back(parse_field(fields[2], path, lineno));
        rec.fsr.samples.push_back(parse_field(fields[3], path, lineno));
    }
    if (rec.pcg.samples.empty())
        throw io_error(path.string() + ": no samples");
    validate(rec);
    return rec;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<SubjectManifest>& subjects) {
    auto out = open_out(path);
    out << "# cohort manifest\n";
    char buf[96];
    for (const auto& s : subjects) {
        out << "subject " << s.subject_id << "\n";
        out << "recording " << s.recording_path << "\n";
        for (const auto& [sbp, dbp] : s.readings) {
            const int len =
                std::snprintf(buf, sizeof(buf), "reading %.12g %.12g\n", sbp, dbp);
            out.write(buf, len);
        }
    }
    if (!out) throw io_error("write failed: " + path.string());
}

std::vector<SubjectManifest> read_manifest(const std::filesystem::path& path) {
    auto in = open_in(path);
    const auto base_dir = path.parent_path();

    std::vector<SubjectManifest> subjects;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string tag;
        if (!(fields >> tag)) continue;
        if (tag == "subject") {
            SubjectManifest s;
            if (!(fields >> s.subject_id))
                throw io_error(path.string() + ":" + std::to_string(lineno) +
                               ": subject needs an id");
            subjects.push_back(std::move(s));
        } else if (tag == "recording") {
            std::string rel;
            if (subjects.empty() || !(fields >> rel))
                throw io_error(path.string() + ":" + std::to_string(lineno) +
                               ": recording outside a subject block");
            subjects.back().recording_path = (base_dir / rel).string();
        } else if (tag == "reading") {
            double sbp = 0.0, dbp = 0.0;
            if (subjects.empty() || !(fields >> sbp >> dbp))
                throw io_error(path.string() + ":" + std::to_string(lineno) +
                               ": bad reading line");
            subjects.back().readings.emplace_back(sbp, dbp);
        } else {
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": unknown tag '" + tag + "'");
        }
    }
    for (const auto& s : subjects) {
        if (s.recording_path.empty())
            throw io_error(path.string() + ": subject " + s.subject_id +
                           " has no recording path");
        if (s.readings.size() < 3)
            throw io_error(path.string() + ": subject " + s.subject_id +
                           " needs at least 3 readings");
        for (const auto& [sbp, dbp] : s.readings)
            if (!(sbp > dbp))
                throw io_error(path.string() + ": subject " + s.subject_id +
                               " has a reading with sbp <= dbp");
    }
    return subjects;
}

void write_truth_csv(const std::filesystem::path& path, const GroundTruth& truth) {
    auto out = open_out(path);
    out << "s1_s,foot_s,maxslope_s,peak_s,ptt_f_s,ptt_d_s,ptt_p_s,sbp_mmhg,dbp_mmhg\n";
    char buf[256];
    for (const TruthBeat& b : truth.beats) {
        const int len = std::snprintf(
            buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
            b.s1_s, b.foot_s, b.maxslope_s, b.peak_s, b.ptt_f_s, b.ptt_d_s,
            b.ptt_p_s, b.sbp_mmhg, b.dbp_mmhg);
        out.write(buf, len);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

void write_aggregates_csv(const std::filesystem::path& path,
                          const std::vector<IntervalAggregateRow>& rows) {
    auto out = open_out(path);
    out << "subject_id,interval_index,ptt_f_s,ptt_d_s,ptt_p_s,sbp_mmhg,dbp_mmhg\n";
    char buf[256];
    for (const auto& r : rows) {
        const int len = std::snprintf(buf, sizeof(buf),
                                      "%s,%d,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                                      r.subject_id.c_str(), r.interval_index,
                                      r.ptt_f_s, r.ptt_d_s, r.ptt_p_s,
                                      r.sbp_mmhg, r.dbp_mmhg);
        out.write(buf, len);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

std::vector<IntervalAggregateRow> read_aggregates_csv(
    const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw io_error(path.string() + ": empty file");
    strip_cr(line);
    if (line != "subject_id,interval_index,ptt_f_s,ptt_d_s,ptt_p_s,sbp_mmhg,dbp_mmhg")
        throw io_error(path.string() + ": unexpected header '" + line + "'");

    std::vector<IntervalAggregateRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 7)
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": expected 7 fields");
        IntervalAggregateRow r;
        r.subject_id = std::string(fields[0]);
        r.interval_index =
            static_cast<int>(parse_field(fields[1], path, lineno));
        r.ptt_f_s = parse_field(fields[2], path, lineno);
        r.ptt_d_s = parse_field(fields[3], path, lineno);
        r.ptt_p_s = parse_field(fields[4], path, lineno);
        r.sbp_mmhg = parse_field(fields[5], path, lineno);
        r.dbp_mmhg = parse_field(fields[6], path, lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_records_csv(const std::filesystem::path& path,
                       const std::vector<PredictionRecord>& records) {
    auto out = open_out(path);
    out << "subject_id,interval_index,target,estimate_mmhg,reference_mmhg\n";
    char buf[192];
    for (const auto& r : records) {
        const int len = std::snprintf(buf, sizeof(buf), "%s,%d,%s,%.12g,%.12g\n",
                                      r.subject_id.c_str(), r.interval_index,
                                      to_string(r.target).c_str(),
                                      r.estimate_mmhg, r.reference_mmhg);
        out.write(buf, len);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

void write_bland_altman_csv(const std::filesystem::path& path,
                            const std::vector<PredictionRecord>& records) {
    auto out = open_out(path);
    out << "mean_of_pair_mmhg,difference_mmhg\n";
    char buf[96];
    for (const auto& r : records) {
        const int len = std::snprintf(
            buf, sizeof(buf), "%.12g,%.12g\n",
            0.5 * (r.estimate_mmhg + r.reference_mmhg),
            r.estimate_mmhg - r.reference_mmhg);
        out.write(buf, len);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

namespace {

void write_report_line(std::ofstream& out, const std::string& label,
                       const EvaluationReport& rep) {
    char buf[320];
    const int len = std::snprintf(
        buf, sizeof(buf),
        "%s %s: n=%d mae=%.9g std=%.9g r=%.9g bland_mean=%.9g "
        "loa_low=%.9g loa_high=%.9g\n",
        to_string(rep.target).c_str(), label.c_str(), rep.n, rep.mae_mmhg,
        rep.std_mmhg, rep.r, rep.bland_mean_mmhg, rep.bland_loa_mmhg.first,
        rep.bland_loa_mmhg.second);
    out.write(buf, len);
}

}  // namespace

void write_report_txt(const std::filesystem::path& path, const CohortReport& sbp,
                      const CohortReport& dbp, PttKind kind) {
    auto out = open_out(path);
    out << "kind " << to_string(kind) << "\n";
    for (const CohortReport* cohort : {&sbp, &dbp}) {
        write_report_line(out, "pooled", cohort->pooled);
        for (const auto& [subject_id, rep] : cohort->per_subject)
            write_report_line(out, subject_id, rep);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

void write_models_txt(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, CalibrationModel>>& models) {
    auto out = open_out(path);
    char buf[192];
    for (const auto& [subject_id, m] : models) {
        const int len = std::snprintf(buf, sizeof(buf), "model %s %s %.17g %.17g %d\n",
                                      subject_id.c_str(), to_string(m.target).c_str(),
                                      m.b0_mmhg, m.b1_mmhg_s, m.n_points);
        out.write(buf, len);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

std::vector<std::pair<std::string, CalibrationModel>> read_models_txt(
    const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::pair<std::string, CalibrationModel>> models;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string tag, subject_id, target;
        CalibrationModel m;
        if (!(fields >> tag >> subject_id >> target >> m.b0_mmhg >> m.b1_mmhg_s >>
              m.n_points) ||
            tag != "model")
            throw io_error(path.string() + ":" + std::to_string(lineno) +
                           ": bad model line");
        m.target = bp_target_from_string(target);
        models.emplace_back(std::move(subject_id), m);
    }
    return models;
}

}  // namespace pttbp
