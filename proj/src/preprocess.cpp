#include "pttbp/preprocess.hpp"

#include "pttbp/errors.hpp"

namespace pttbp {

TimeSeries preprocess_channel(const TimeSeries& x, const FilterSpec& spec,
                              int median_window_samples) {
    const TimeSeries despiked = median_filter(x, median_window_samples);
    const TimeSeries normalized = z_normalize(despiked);
    const IirCoefficients coeffs = design_filter(spec, x.sample_rate_hz);
    return filtfilt(coeffs, normalized);
}

Recording preprocess_recording(const Recording& raw, const PipelineConfig& config) {
    validate(raw);

    Recording out;
    out.subject_id = raw.subject_id;
    struct Channel {
        const char* name;
        const TimeSeries* in;
        TimeSeries* dst;
        const FilterSpec* spec;
    };
    const Channel channels[] = {
        {"pcg", &raw.pcg, &out.pcg, &config.pcg_filter},
        {"ppg", &raw.ppg, &out.ppg, &config.ppg_filter},
        {"fsr", &raw.fsr, &out.fsr, &config.fsr_filter},
    };
    for (const Channel& ch : channels) {
        try {
            *ch.dst = preprocess_channel(*ch.in, *ch.spec,
                                         config.median_window_samples);
        } catch (const degenerate_signal_error& e) {
            throw degenerate_signal_error("channel " + std::string(ch.name) + ": " +
                                          e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("channel " + std::string(ch.name) + ": " +
                                        e.what());
        }
    }
    return out;
}

}  // namespace pttbp
