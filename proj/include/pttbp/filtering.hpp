#pragma once

#include <optional>
#include <vector>

#include "pttbp/time_series.hpp"

namespace pttbp {

enum class FilterKind { low_pass, band_pass };

/// Frequency-selective filter request. low_pass uses low_cutoff_hz as its single
/// cutoff; band_pass needs 0 < low < high < Nyquist.
struct FilterSpec {
    FilterKind kind = FilterKind::low_pass;
    std::optional<double> low_cutoff_hz;
    std::optional<double> high_cutoff_hz;
    int order = 3;
};

/// Realized digital IIR filter in transfer-function form, denominator[0] == 1.
struct IirCoefficients {
    std::vector<double> numerator;
    std::vector<double> denominator;

    int order() const {
        const auto n = std::max(numerator.size(), denominator.size());
        return n == 0 ? 0 : static_cast<int>(n) - 1;
    }
};

/// Sliding-window median with the window truncated at the edges. Even-sized
/// windows (which only occur at the edges) take the mean of the two middle
/// values. window_samples must be odd and no longer than the series.
TimeSeries median_filter(const TimeSeries& x, int window_samples);

/// Zero-mean, unit population standard deviation. Throws degenerate_signal_error
/// when the input has zero variance (dead channel).
TimeSeries z_normalize(const TimeSeries& x);

/// Butterworth realization of the spec, discretized by the bilinear transform
/// with cutoff prewarping so the -3 dB points land on the requested frequencies.
IirCoefficients design_filter(const FilterSpec& spec, double sample_rate_hz);

/// Zero-phase application: forward pass, reverse, second pass, reverse.
/// The input is extended on both ends with 3 * order reflected samples and the
/// filter state starts at the step-response steady state, so constants pass
/// through exactly. Requires x.size() > 3 * max(len(num), len(den)).
TimeSeries filtfilt(const IirCoefficients& coeffs, const TimeSeries& x);

/// Single forward pass (direct form II transposed), zero initial state.
std::vector<double> iir_filter(const IirCoefficients& coeffs,
                               const std::vector<double>& x);

}  // namespace pttbp
