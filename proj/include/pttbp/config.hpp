#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "pttbp/fiducials.hpp"
#include "pttbp/filtering.hpp"
#include "pttbp/ptt.hpp"
#include "pttbp/segmentation.hpp"

namespace pttbp {

/// Every tunable of the analysis path. Defaults reproduce the standard
/// preprocessing bands (FSR 0.3 Hz low-pass, PPG 0.5-20 Hz, PCG 20-240 Hz,
/// all order 3) and the module defaults documented next to each option.
struct PipelineConfig {
    FilterSpec fsr_filter{FilterKind::low_pass, 0.3, std::nullopt, 3};
    FilterSpec ppg_filter{FilterKind::band_pass, 0.5, 20.0, 3};
    FilterSpec pcg_filter{FilterKind::band_pass, 20.0, 240.0, 3};
    int median_window_samples = 5;
    SegmentationOptions segmentation;
    FiducialOptions fiducials;
    PttOptions ptt;
    PttKind ptt_kind = PttKind::peak;
    std::uint64_t rng_seed = 1;
};

/// Parse a flat key-value file with dotted section names, e.g.
///   filters.pcg.low_hz = 20
///   ptt.kind = peak
/// '#' starts a comment. Unknown keys and malformed values throw
/// std::invalid_argument. Missing keys keep their defaults.
PipelineConfig load_config(const std::filesystem::path& path);

/// Apply one key = value assignment to an existing config.
void apply_config_entry(PipelineConfig& config, const std::string& key,
                        const std::string& value);

/// Throws std::invalid_argument when any option is out of range.
void validate(const PipelineConfig& config);

}  // namespace pttbp
