#include "pttbp/synthgen.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "pttbp/errors.hpp"

namespace pttbp {

namespace {

constexpr double kSampleRateHz = 1000.0;
constexpr double kRiseS = 0.12;        // PPG systolic upstroke duration
constexpr double kEarlyDecayS = 0.10;  // fast fall just after the PPG peak
constexpr double kMinPttS = 0.05;
constexpr double kMaxPttS = 0.6;
constexpr double kS2DelayS = 0.3;

// Cuff episode shape: linear inflation, a slightly rising hold so the episode
// maximum (t2) is unique, then linear deflation back to baseline.
constexpr double kCuffRampUpS = 8.0;
constexpr double kCuffHoldS = 4.0;
constexpr double kCuffRampDownS = 12.0;
constexpr double kCuffApex = 1.08;  // hold drifts from 1.0 up to the apex
constexpr double kCuffSpanS = kCuffRampUpS + kCuffHoldS + kCuffRampDownS;

// Portable Gaussian source so recordings depend only on the seed.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() {  // (0, 1]
        return static_cast<double>((rng_() >> 11) + 1) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

void add_noise(std::vector<double>& x, double snr_db, GaussianSource& noise) {
    if (std::isinf(snr_db)) return;
    double power = 0.0;
    for (double v : x) power += v * v;
    power /= static_cast<double>(x.size());
    const double sigma = std::sqrt(power * std::pow(10.0, -snr_db / 10.0));
    for (double& v : x) v += sigma * noise.next();
}

void add_gabor_burst(std::vector<double>& x, double center_s, double freq_hz,
                     double width_s, double amplitude) {
    const double support = 3.5 * width_s;
    const auto lo = static_cast<std::ptrdiff_t>(std::ceil((center_s - support) * kSampleRateHz));
    const auto hi = static_cast<std::ptrdiff_t>(std::floor((center_s + support) * kSampleRateHz));
    for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(lo, 0);
         i <= hi && i < static_cast<std::ptrdiff_t>(x.size()); ++i) {
        const double t = static_cast<double>(i) / kSampleRateHz - center_s;
        x[i] += amplitude * std::exp(-0.5 * t * t / (width_s * width_s)) *
                std::sin(2.0 * std::numbers::pi * freq_hz * t);
    }
}

struct Trajectory {
    double start = 0.0;
    double end = 0.0;
    double duration = 1.0;
    double at(double t) const { return start + (end - start) * t / duration; }
};

}  // namespace

SubjectProfile consistent_profile(SubjectProfile profile) {
    const double x_start = (profile.sbp_start_mmhg - profile.b0_sbp) / profile.b1_sbp;
    const double x_end = (profile.sbp_end_mmhg - profile.b0_sbp) / profile.b1_sbp;
    if (x_start == x_end) {
        if (profile.dbp_start_mmhg != profile.dbp_end_mmhg)
            throw profile_error(
                "consistent_profile: constant SBP cannot carry a varying DBP");
        profile.b1_dbp = 0.0;
        profile.b0_dbp = profile.dbp_start_mmhg;
        return profile;
    }
    profile.b1_dbp =
        (profile.dbp_end_mmhg - profile.dbp_start_mmhg) / (x_end - x_start);
    profile.b0_dbp = profile.dbp_start_mmhg - profile.b1_dbp * x_start;
    return profile;
}

SyntheticSubject generate(const SubjectProfile& raw_profile) {
    const SubjectProfile profile = consistent_profile(raw_profile);

    if (!(profile.duration_s > 0.0))
        throw profile_error("generate: duration must be positive");
    if (profile.n_measurements < 3)
        throw profile_error("generate: need at least 3 measurements");
    if (!(profile.b1_sbp > 0.0))
        throw profile_error("generate: b1_sbp must be positive");
    if (!(profile.sbp_start_mmhg > profile.dbp_start_mmhg) ||
        !(profile.dbp_start_mmhg > 0.0))
        throw profile_error("generate: require sbp_start > dbp_start > 0");

    const Trajectory sbp{profile.sbp_start_mmhg, profile.sbp_end_mmhg,
                         profile.duration_s};
    const Trajectory dbp{profile.dbp_start_mmhg, profile.dbp_end_mmhg,
                         profile.duration_s};
    const Trajectory hr{profile.hr_start_bpm, profile.hr_end_bpm,
                        profile.duration_s};

    auto ptt_p_at = [&](double t) {
        return profile.b1_sbp / (sbp.at(t) - profile.b0_sbp);
    };
    for (double t : {0.0, profile.duration_s}) {
        if (!(sbp.at(t) - profile.b0_sbp > 0.0))
            throw profile_error("generate: SBP trajectory crosses b0_sbp");
        const double ptt_p = ptt_p_at(t);
        if (ptt_p - kRiseS < kMinPttS || ptt_p > kMaxPttS)
            throw profile_error(
                "generate: implied transit times leave the [0.05, 0.6] s band");
    }
    for (double t : {0.0, profile.duration_s}) {
        const double gap = 60.0 / hr.at(t);
        if (!(hr.at(t) > 0.0) || gap < kRiseS + kEarlyDecayS + 0.15)
            throw profile_error("generate: heart rate leaves no room for pulses");
    }
    const double slot_s = profile.duration_s / profile.n_measurements;
    if (slot_s < kCuffSpanS + 6.0)
        throw profile_error("generate: cuff episodes do not fit the duration");

    const auto n_samples =
        static_cast<std::size_t>(std::llround(profile.duration_s * kSampleRateHz));

    SyntheticSubject out;
    out.recording.subject_id = profile.subject_id;
    for (TimeSeries* ch : {&out.recording.pcg, &out.recording.ppg, &out.recording.fsr}) {
        ch->samples.assign(n_samples, 0.0);
        ch->sample_rate_hz = kSampleRateHz;
        ch->start_time_s = 0.0;
    }

    // Beat train: step through the linearly drifting heart rate.
    std::vector<double> s1_times;
    for (double t = 0.8; t < profile.duration_s - 1.6; t += 60.0 / hr.at(t))
        s1_times.push_back(t);

    out.truth.beats.reserve(s1_times.size());
    for (double s1 : s1_times) {
        TruthBeat beat;
        beat.s1_s = s1;
        beat.ptt_p_s = ptt_p_at(s1);
        beat.ptt_d_s = beat.ptt_p_s - 0.5 * kRiseS;
        beat.ptt_f_s = beat.ptt_p_s - kRiseS;
        beat.peak_s = s1 + beat.ptt_p_s;
        beat.maxslope_s = s1 + beat.ptt_d_s;
        beat.foot_s = s1 + beat.ptt_f_s;
        beat.sbp_mmhg = sbp.at(s1);
        beat.dbp_mmhg = dbp.at(s1);
        out.truth.beats.push_back(beat);
    }

    // PPG: raised-cosine upstroke, a fast early fall whose curvature matches
    // the upstroke's (so the peak smooths symmetrically), then a slow tail
    // 1 - s^6 that reaches zero exactly at the next foot while still falling,
    // putting the inter-beat minimum sharply at the foot.
    auto& ppg = out.recording.ppg.samples;
    const double early_floor = 1.0 - (kEarlyDecayS / kRiseS) * (kEarlyDecayS / kRiseS);
    for (std::size_t k = 0; k < out.truth.beats.size(); ++k) {
        const TruthBeat& beat = out.truth.beats[k];
        const double tail_start = beat.peak_s + kEarlyDecayS;
        const double tail_end = k + 1 < out.truth.beats.size()
                                    ? out.truth.beats[k + 1].foot_s
                                    : tail_start + 0.5;
        const auto i0 =
            static_cast<std::size_t>(std::ceil(beat.foot_s * kSampleRateHz));
        const auto i1 = std::min(
            n_samples,
            static_cast<std::size_t>(std::floor(tail_end * kSampleRateHz)) + 1);
        for (std::size_t i = i0; i < i1; ++i) {
            const double t = static_cast<double>(i) / kSampleRateHz;
            double v = 0.0;
            if (t <= beat.peak_s) {
                v = 0.5 * (1.0 - std::cos(std::numbers::pi * (t - beat.foot_s) / kRiseS));
            } else if (t <= tail_start) {
                v = early_floor + (1.0 - early_floor) * 0.5 *
                                      (1.0 + std::cos(std::numbers::pi *
                                                      (t - beat.peak_s) / kEarlyDecayS));
            } else if (tail_end > tail_start) {
                const double s = (t - tail_start) / (tail_end - tail_start);
                const double s3 = s * s * s;
                v = early_floor * (1.0 - s3 * s3);
            }
            ppg[i] = v;
        }
    }

    // PCG: one S1 burst per beat plus a smaller S2, which exercises the
    // downstream S1/S2 disambiguation.
    auto& pcg = out.recording.pcg.samples;
    for (const TruthBeat& beat : out.truth.beats) {
        add_gabor_burst(pcg, beat.s1_s, 50.0, 0.010, 1.0);
        add_gabor_burst(pcg, beat.s1_s + kS2DelayS, 60.0, 0.007, 0.45);
    }

    // FSR: one trapezoid per measurement, centered in its slot; t3 moments
    // come out evenly spaced. Key moments recorded analytically from the
    // 10%-of-amplitude crossing rule on the clean shape.
    auto& fsr = out.recording.fsr.samples;
    const double lead = 0.5 * (slot_s - kCuffSpanS);
    for (int k = 0; k < profile.n_measurements; ++k) {
        const double start = slot_s * k + lead;
        const double t_hold = start + kCuffRampUpS;
        const double t2 = t_hold + kCuffHoldS;
        const double t_end = t2 + kCuffRampDownS;
        const auto i0 = static_cast<std::size_t>(std::ceil(start * kSampleRateHz));
        const auto i1 = std::min(
            n_samples, static_cast<std::size_t>(std::floor(t_end * kSampleRateHz)) + 1);
        for (std::size_t i = i0; i < i1; ++i) {
            const double t = static_cast<double>(i) / kSampleRateHz;
            double v = 0.0;
            if (t <= t_hold)
                v = (t - start) / kCuffRampUpS;
            else if (t <= t2)
                v = 1.0 + (kCuffApex - 1.0) * (t - t_hold) / kCuffHoldS;
            else
                v = kCuffApex * (1.0 - (t - t2) / kCuffRampDownS);
            fsr[i] = v;
        }

        KeyMoments m;
        const double threshold = 0.1 * kCuffApex;
        m.t1_s = start + threshold * kCuffRampUpS;  // up the unit-slope ramp
        m.t2_s = t2;
        m.t3_s = t2 + (1.0 - threshold / kCuffApex) * kCuffRampDownS;
        out.truth.cuff_moments.push_back(m);
        out.truth.readings.emplace_back(sbp.at(m.t3_s), dbp.at(m.t3_s));
    }

    GaussianSource noise(profile.rng_seed);
    add_noise(pcg, profile.noise_snr_db, noise);
    add_noise(ppg, profile.noise_snr_db, noise);
    add_noise(fsr, profile.noise_snr_db, noise);

    out.truth.sbp_model = {BpTarget::sbp, profile.b0_sbp, profile.b1_sbp, 0};
    out.truth.dbp_model = {BpTarget::dbp, profile.b0_dbp, profile.b1_dbp, 0};
    return out;
}

SubjectProfile cohort_profile(int index, std::uint64_t seed, int n_measurements,
                              double noise_snr_db) {
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1)));
    auto uniform = [&rng](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    };

    SubjectProfile p;
    char id[8];
    std::snprintf(id, sizeof(id), "s%02d", index + 1);
    p.subject_id = id;
    p.hr_start_bpm = uniform(88.0, 108.0);
    p.hr_end_bpm = p.hr_start_bpm - uniform(15.0, 25.0);
    p.sbp_start_mmhg = uniform(150.0, 172.0);
    p.b1_sbp = uniform(16.0, 24.0);
    const double ptt_start = uniform(0.18, 0.215);
    const double ptt_end = uniform(0.28, 0.34);
    p.b0_sbp = p.sbp_start_mmhg - p.b1_sbp / ptt_start;
    p.sbp_end_mmhg = p.b0_sbp + p.b1_sbp / ptt_end;
    p.dbp_start_mmhg = uniform(86.0, 96.0);
    p.dbp_end_mmhg = p.dbp_start_mmhg - uniform(14.0, 20.0);
    p.n_measurements = n_measurements;
    p.duration_s = 34.0 * n_measurements;
    p.noise_snr_db = noise_snr_db;
    p.rng_seed = seed + 7919ULL * static_cast<std::uint64_t>(index + 1);
    return consistent_profile(p);
}

}  // namespace pttbp
