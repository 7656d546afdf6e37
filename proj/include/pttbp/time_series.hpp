#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pttbp {

/// Uniformly sampled signal. Sample i sits at start_time_s + i / sample_rate_hz;
/// the grid has no gaps.
struct TimeSeries {
    std::vector<double> samples;
    double sample_rate_hz = 1000.0;
    double start_time_s = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    double time_at(std::size_t i) const {
        return start_time_s + static_cast<double>(i) / sample_rate_hz;
    }

    /// End of the sampled span (time of the last sample).
    double end_time_s() const {
        return empty() ? start_time_s : time_at(samples.size() - 1);
    }

    /// Nearest grid index for time t, clamped to the valid range.
    std::size_t index_at(double t) const;
};

/// Throws std::invalid_argument if the series is empty or its rate is not positive.
void validate(const TimeSeries& x, const std::string& what);

/// One synchronized three-channel recording (1 kHz in the ingested format).
struct Recording {
    std::string subject_id;
    TimeSeries pcg;
    TimeSeries ppg;
    TimeSeries fsr;
};

/// Throws std::invalid_argument unless all channels share rate and length.
void validate(const Recording& rec);

}  // namespace pttbp
