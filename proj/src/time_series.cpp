#include "pttbp/time_series.hpp"

#include <cmath>
#include <stdexcept>

namespace pttbp {

std::size_t TimeSeries::index_at(double t) const {
    if (empty()) return 0;
    const double pos = (t - start_time_s) * sample_rate_hz;
    if (pos <= 0.0) return 0;
    const auto i = static_cast<std::size_t>(std::llround(pos));
    return i >= samples.size() ? samples.size() - 1 : i;
}

void validate(const TimeSeries& x, const std::string& what) {
    if (x.samples.empty())
        throw std::invalid_argument(what + ": series is empty");
    if (!(x.sample_rate_hz > 0.0))
        throw std::invalid_argument(what + ": sample rate must be positive");
}

void validate(const Recording& rec) {
    validate(rec.pcg, "recording " + rec.subject_id + " pcg");
    validate(rec.ppg, "recording " + rec.subject_id + " ppg");
    validate(rec.fsr, "recording " + rec.subject_id + " fsr");
    if (rec.pcg.sample_rate_hz != rec.ppg.sample_rate_hz ||
        rec.pcg.sample_rate_hz != rec.fsr.sample_rate_hz)
        throw std::invalid_argument("recording " + rec.subject_id +
                                    ": channels disagree on sample rate");
    if (rec.pcg.size() != rec.ppg.size() || rec.pcg.size() != rec.fsr.size())
        throw std::invalid_argument("recording " + rec.subject_id +
                                    ": channels disagree on length");
}

}  // namespace pttbp
