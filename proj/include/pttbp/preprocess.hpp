#pragma once

#include "pttbp/config.hpp"
#include "pttbp/time_series.hpp"

namespace pttbp {

/// Full preprocessing chain for one channel:
/// median filter -> z-normalize -> zero-phase IIR per the channel's spec.
TimeSeries preprocess_channel(const TimeSeries& x, const FilterSpec& spec,
                              int median_window_samples);

/// Applies preprocess_channel to all three channels with their configured
/// specs. Channel failures are rethrown with the channel name attached.
Recording preprocess_recording(const Recording& raw, const PipelineConfig& config);

}  // namespace pttbp
