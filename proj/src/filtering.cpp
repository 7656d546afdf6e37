#include "pttbp/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "pttbp/errors.hpp"

namespace pttbp {

namespace {

using cplx = std::complex<double>;

// Expand a monic polynomial from its roots; imaginary parts cancel for
// conjugate-closed root sets.
std::vector<double> poly_from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c(roots.size() + 1, cplx(0.0, 0.0));
    c[0] = 1.0;
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j > 0; --j)
            c[j] -= roots[i] * c[j - 1];
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

struct ZpkFilter {
    std::vector<cplx> zeros;
    std::vector<cplx> poles;
    double gain = 1.0;
};

// Analog Butterworth low-pass prototype, cutoff 1 rad/s.
ZpkFilter butterworth_prototype(int order) {
    ZpkFilter f;
    f.poles.reserve(order);
    for (int k = 0; k < order; ++k) {
        const double angle =
            std::numbers::pi * (2.0 * k + order + 1.0) / (2.0 * order);
        f.poles.emplace_back(std::cos(angle), std::sin(angle));
    }
    return f;
}

ZpkFilter lowpass_to_lowpass(const ZpkFilter& f, double wo) {
    ZpkFilter out;
    for (const auto& z : f.zeros) out.zeros.push_back(z * wo);
    for (const auto& p : f.poles) out.poles.push_back(p * wo);
    const int degree = static_cast<int>(f.poles.size() - f.zeros.size());
    out.gain = f.gain * std::pow(wo, degree);
    return out;
}

ZpkFilter lowpass_to_bandpass(const ZpkFilter& f, double wo, double bw) {
    ZpkFilter out;
    const int degree = static_cast<int>(f.poles.size() - f.zeros.size());
    auto transform = [&](const cplx& s, std::vector<cplx>& dst) {
        const cplx t = 0.5 * bw * s;
        const cplx r = std::sqrt(t * t - wo * wo);
        dst.push_back(t + r);
        dst.push_back(t - r);
    };
    for (const auto& z : f.zeros) transform(z, out.zeros);
    for (const auto& p : f.poles) transform(p, out.poles);
    for (int i = 0; i < degree; ++i) out.zeros.emplace_back(0.0, 0.0);
    out.gain = f.gain * std::pow(bw, degree);
    return out;
}

ZpkFilter bilinear_transform(const ZpkFilter& f, double fs) {
    ZpkFilter out;
    const double fs2 = 2.0 * fs;
    const int degree = static_cast<int>(f.poles.size() - f.zeros.size());
    cplx num(1.0, 0.0), den(1.0, 0.0);
    for (const auto& z : f.zeros) {
        out.zeros.push_back((fs2 + z) / (fs2 - z));
        num *= (fs2 - z);
    }
    for (const auto& p : f.poles) {
        out.poles.push_back((fs2 + p) / (fs2 - p));
        den *= (fs2 - p);
    }
    for (int i = 0; i < degree; ++i) out.zeros.emplace_back(-1.0, 0.0);
    out.gain = f.gain * (num / den).real();
    return out;
}

double prewarp(double cutoff_hz, double fs) {
    return 2.0 * fs * std::tan(std::numbers::pi * cutoff_hz / fs);
}

// Steady-state filter state for a unit step, so filtfilt can start each pass
// settled at the first sample's level (scipy's lfilter_zi construction).
std::vector<double> steady_state(const std::vector<double>& b,
                                 const std::vector<double>& a) {
    const int n = static_cast<int>(std::max(b.size(), a.size())) - 1;
    if (n <= 0) return {};
    std::vector<double> bp(b), ap(a);
    bp.resize(n + 1, 0.0);
    ap.resize(n + 1, 0.0);

    // Solve (I - A^T) zi = B with A the companion matrix of ap.
    std::vector<double> m(static_cast<std::size_t>(n) * (n + 1), 0.0);
    for (int i = 0; i < n; ++i) {
        m[i * (n + 1) + i] += 1.0;
        m[i * (n + 1) + 0] += ap[i + 1];
        if (i + 1 < n) m[i * (n + 1) + i + 1] -= 1.0;
        m[i * (n + 1) + n] = bp[i + 1] - ap[i + 1] * bp[0];
    }
    // Gaussian elimination with partial pivoting on the augmented system.
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r * (n + 1) + col]) > std::abs(m[pivot * (n + 1) + col]))
                pivot = r;
        if (m[pivot * (n + 1) + col] == 0.0)
            throw std::runtime_error("filtfilt: singular steady-state system");
        if (pivot != col)
            for (int c = col; c <= n; ++c)
                std::swap(m[col * (n + 1) + c], m[pivot * (n + 1) + c]);
        for (int r = col + 1; r < n; ++r) {
            const double f = m[r * (n + 1) + col] / m[col * (n + 1) + col];
            for (int c = col; c <= n; ++c) m[r * (n + 1) + c] -= f * m[col * (n + 1) + c];
        }
    }
    std::vector<double> zi(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = m[r * (n + 1) + n];
        for (int c = r + 1; c < n; ++c) s -= m[r * (n + 1) + c] * zi[c];
        zi[r] = s / m[r * (n + 1) + r];
    }
    return zi;
}

// Direct form II transposed with caller-provided initial state.
std::vector<double> run_filter(const std::vector<double>& b,
                               const std::vector<double>& a,
                               const std::vector<double>& x,
                               std::vector<double> state) {
    const int n = static_cast<int>(std::max(b.size(), a.size())) - 1;
    std::vector<double> bp(b), ap(a);
    bp.resize(n + 1, 0.0);
    ap.resize(n + 1, 0.0);
    state.resize(n, 0.0);

    std::vector<double> y(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double xi = x[k];
        const double yi = bp[0] * xi + (n > 0 ? state[0] : 0.0);
        y[k] = yi;
        for (int i = 0; i + 1 < n; ++i)
            state[i] = state[i + 1] + bp[i + 1] * xi - ap[i + 1] * yi;
        if (n > 0) state[n - 1] = bp[n] * xi - ap[n] * yi;
    }
    return y;
}

}  // namespace

TimeSeries median_filter(const TimeSeries& x, int window_samples) {
    validate(x, "median_filter");
    if (window_samples <= 0 || window_samples % 2 == 0)
        throw std::invalid_argument("median_filter: window must be odd and positive");
    if (static_cast<std::size_t>(window_samples) > x.size())
        throw std::invalid_argument("median_filter: window longer than series");

    const auto n = x.size();
    const int half = window_samples / 2;
    TimeSeries out = x;
    std::vector<double> window;
    window.reserve(window_samples);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        window.assign(x.samples.begin() + lo, x.samples.begin() + hi + 1);
        std::sort(window.begin(), window.end());
        const std::size_t m = window.size();
        out.samples[i] = (m % 2 == 1) ? window[m / 2]
                                      : 0.5 * (window[m / 2 - 1] + window[m / 2]);
    }
    return out;
}

TimeSeries z_normalize(const TimeSeries& x) {
    validate(x, "z_normalize");
    if (x.size() < 2)
        throw std::invalid_argument("z_normalize: need at least 2 samples");

    // A constant signal has max == min exactly; checking the range avoids
    // mistaking accumulated rounding in the variance sum for real variation.
    const auto [mn, mx] = std::minmax_element(x.samples.begin(), x.samples.end());
    if (*mn == *mx)
        throw degenerate_signal_error("z_normalize: zero-variance signal");

    double mean = 0.0;
    for (double v : x.samples) mean += v;
    mean /= static_cast<double>(x.size());

    double var = 0.0;
    for (double v : x.samples) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());

    if (var == 0.0)
        throw degenerate_signal_error("z_normalize: zero-variance signal");

    const double inv_std = 1.0 / std::sqrt(var);
    TimeSeries out = x;
    for (double& v : out.samples) v = (v - mean) * inv_std;
    return out;
}

IirCoefficients design_filter(const FilterSpec& spec, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("design_filter: sample rate must be positive");
    if (spec.order <= 0)
        throw std::invalid_argument("design_filter: order must be positive");
    const double nyquist = 0.5 * sample_rate_hz;

    ZpkFilter analog = butterworth_prototype(spec.order);
    if (spec.kind == FilterKind::low_pass) {
        if (!spec.low_cutoff_hz)
            throw std::invalid_argument("design_filter: low-pass needs a cutoff");
        const double fc = *spec.low_cutoff_hz;
        if (!(fc > 0.0) || fc >= nyquist)
            throw std::invalid_argument("design_filter: cutoff must lie in (0, Nyquist)");
        analog = lowpass_to_lowpass(analog, prewarp(fc, sample_rate_hz));
    } else {
        if (!spec.low_cutoff_hz || !spec.high_cutoff_hz)
            throw std::invalid_argument("design_filter: band-pass needs both cutoffs");
        const double lo = *spec.low_cutoff_hz;
        const double hi = *spec.high_cutoff_hz;
        if (!(lo > 0.0) || !(lo < hi) || hi >= nyquist)
            throw std::invalid_argument(
                "design_filter: band-pass needs 0 < low < high < Nyquist");
        const double w1 = prewarp(lo, sample_rate_hz);
        const double w2 = prewarp(hi, sample_rate_hz);
        analog = lowpass_to_bandpass(analog, std::sqrt(w1 * w2), w2 - w1);
    }

    const ZpkFilter digital = bilinear_transform(analog, sample_rate_hz);

    IirCoefficients out;
    out.numerator = poly_from_roots(digital.zeros);
    for (double& v : out.numerator) v *= digital.gain;
    out.denominator = poly_from_roots(digital.poles);
    return out;
}

std::vector<double> iir_filter(const IirCoefficients& coeffs,
                               const std::vector<double>& x) {
    if (coeffs.numerator.empty() || coeffs.denominator.empty())
        throw std::invalid_argument("iir_filter: empty coefficients");
    return run_filter(coeffs.numerator, coeffs.denominator, x, {});
}

TimeSeries filtfilt(const IirCoefficients& coeffs, const TimeSeries& x) {
    validate(x, "filtfilt");
    if (coeffs.numerator.empty() || coeffs.denominator.empty())
        throw std::invalid_argument("filtfilt: empty coefficients");

    const std::size_t ntaps =
        std::max(coeffs.numerator.size(), coeffs.denominator.size());
    if (x.size() <= 3 * ntaps)
        throw std::invalid_argument(
            "filtfilt: series must be longer than 3x the filter length");

    const int order = coeffs.order();
    const std::size_t edge = static_cast<std::size_t>(3 * order);
    const auto& src = x.samples;
    const std::size_t n = src.size();

    // Reflect about the end values so the extension meets the series level.
    std::vector<double> ext;
    ext.reserve(n + 2 * edge);
    for (std::size_t i = edge; i >= 1; --i) ext.push_back(2.0 * src.front() - src[i]);
    ext.insert(ext.end(), src.begin(), src.end());
    for (std::size_t i = 1; i <= edge; ++i)
        ext.push_back(2.0 * src.back() - src[n - 1 - i]);

    const std::vector<double> zi = steady_state(coeffs.numerator, coeffs.denominator);
    auto scaled = [&zi](double v) {
        std::vector<double> s(zi.size());
        for (std::size_t i = 0; i < zi.size(); ++i) s[i] = zi[i] * v;
        return s;
    };

    std::vector<double> y = run_filter(coeffs.numerator, coeffs.denominator, ext,
                                       scaled(ext.front()));
    std::reverse(y.begin(), y.end());
    y = run_filter(coeffs.numerator, coeffs.denominator, y, scaled(y.front()));
    std::reverse(y.begin(), y.end());

    TimeSeries out = x;
    out.samples.assign(y.begin() + edge, y.begin() + edge + n);
    return out;
}

}  // namespace pttbp
