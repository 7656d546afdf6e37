#include "pttbp/config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "pttbp/errors.hpp"

namespace pttbp {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("config: bad numeric value for " + key +
                                    ": '" + value + "'");
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const char* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("config: bad integer value for " + key +
                                    ": '" + value + "'");
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool apply_filter_entry(FilterSpec& spec, const std::string& field,
                        const std::string& key, const std::string& value) {
    if (field == "kind") {
        if (value == "low_pass")
            spec.kind = FilterKind::low_pass;
        else if (value == "band_pass")
            spec.kind = FilterKind::band_pass;
        else
            throw std::invalid_argument("config: " + key +
                                        " must be low_pass or band_pass");
    } else if (field == "low_hz") {
        spec.low_cutoff_hz = parse_double(key, value);
    } else if (field == "high_hz") {
        spec.high_cutoff_hz = parse_double(key, value);
    } else if (field == "order") {
        spec.order = parse_int(key, value);
    } else {
        return false;
    }
    return true;
}

}  // namespace

void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value) {
    const auto unknown = [&]() -> void {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    };

    if (key.starts_with("filters.")) {
        const auto rest = key.substr(8);
        const auto dot = rest.find('.');
        if (dot == std::string::npos) unknown();
        const auto channel = rest.substr(0, dot);
        const auto field = rest.substr(dot + 1);
        FilterSpec* spec = nullptr;
        if (channel == "fsr") spec = &config.fsr_filter;
        else if (channel == "ppg") spec = &config.ppg_filter;
        else if (channel == "pcg") spec = &config.pcg_filter;
        if (spec == nullptr || !apply_filter_entry(*spec, field, key, value)) unknown();
    } else if (key == "median.window_samples") {
        config.median_window_samples = parse_int(key, value);
    } else if (key == "segmentation.min_gap_s") {
        config.segmentation.min_gap_s = parse_double(key, value);
    } else if (key == "segmentation.threshold_frac") {
        config.segmentation.threshold_frac = parse_double(key, value);
    } else if (key == "segmentation.baseline_window_s") {
        config.segmentation.baseline_window_s = parse_double(key, value);
    } else if (key == "segmentation.baseline_percentile") {
        config.segmentation.baseline_percentile = parse_double(key, value);
    } else if (key == "segmentation.min_amplitude_frac") {
        config.segmentation.min_amplitude_frac = parse_double(key, value);
    } else if (key == "fiducials.envelope_window_s") {
        config.fiducials.envelope_window_s = parse_double(key, value);
    } else if (key == "fiducials.min_peak_separation_s") {
        config.fiducials.min_peak_separation_s = parse_double(key, value);
    } else if (key == "fiducials.prominence_frac") {
        config.fiducials.prominence_frac = parse_double(key, value);
    } else if (key == "fiducials.slope_window_s") {
        config.fiducials.slope_window_s = parse_double(key, value);
    } else if (key == "fiducials.max_upstroke_s") {
        config.fiducials.max_upstroke_s = parse_double(key, value);
    } else if (key == "fiducials.s1_search_earliest_s") {
        config.fiducials.s1_search_earliest_s = parse_double(key, value);
    } else if (key == "fiducials.s1_search_latest_s") {
        config.fiducials.s1_search_latest_s = parse_double(key, value);
    } else if (key == "fiducials.s1_floor_frac") {
        config.fiducials.s1_floor_frac = parse_double(key, value);
    } else if (key == "fiducials.s1_refractory_s") {
        config.fiducials.s1_refractory_s = parse_double(key, value);
    } else if (key == "ptt.min_s") {
        config.ptt.min_ptt_s = parse_double(key, value);
    } else if (key == "ptt.max_s") {
        config.ptt.max_ptt_s = parse_double(key, value);
    } else if (key == "ptt.sigma_s") {
        config.ptt.aggregation_sigma_s = parse_double(key, value);
    } else if (key == "ptt.min_beats") {
        config.ptt.min_beats = parse_int(key, value);
    } else if (key == "ptt.kind") {
        config.ptt_kind = ptt_kind_from_string(value);
    } else if (key == "synth.seed") {
        config.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
        unknown();
    }
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("config: cannot open " + path.string());

    PipelineConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                        " is not a key = value entry");
        apply_config_entry(config, trim(trimmed.substr(0, eq)),
                           trim(trimmed.substr(eq + 1)));
    }
    validate(config);
    return config;
}

void validate(const PipelineConfig& config) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument("config: " + what);
    };
    for (const auto* spec : {&config.fsr_filter, &config.ppg_filter, &config.pcg_filter}) {
        require(spec->order > 0, "filter order must be positive");
        require(spec->low_cutoff_hz.has_value(), "filters need a low_hz cutoff");
        if (spec->kind == FilterKind::band_pass) {
            require(spec->high_cutoff_hz.has_value(), "band_pass needs high_hz");
            require(*spec->low_cutoff_hz < *spec->high_cutoff_hz,
                    "band_pass needs low_hz < high_hz");
        }
        require(*spec->low_cutoff_hz > 0.0, "cutoffs must be positive");
    }
    require(config.median_window_samples > 0 && config.median_window_samples % 2 == 1,
            "median.window_samples must be odd and positive");
    require(config.segmentation.min_gap_s > 0.0, "segmentation.min_gap_s must be positive");
    require(config.segmentation.threshold_frac > 0.0 &&
                config.segmentation.threshold_frac < 1.0,
            "segmentation.threshold_frac must lie in (0, 1)");
    require(config.segmentation.baseline_percentile >= 0.0 &&
                config.segmentation.baseline_percentile <= 100.0,
            "segmentation.baseline_percentile must lie in [0, 100]");
    require(config.fiducials.envelope_window_s > 0.0,
            "fiducials.envelope_window_s must be positive");
    require(config.fiducials.min_peak_separation_s > 0.0,
            "fiducials.min_peak_separation_s must be positive");
    require(config.fiducials.s1_search_latest_s < config.fiducials.s1_search_earliest_s,
            "fiducials S1 window must have latest < earliest");
    require(config.ptt.min_ptt_s > 0.0 && config.ptt.min_ptt_s < config.ptt.max_ptt_s,
            "ptt bounds must satisfy 0 < min < max");
    require(config.ptt.aggregation_sigma_s > 0.0, "ptt.sigma_s must be positive");
    require(config.ptt.min_beats >= 1, "ptt.min_beats must be at least 1");
}

}  // namespace pttbp
