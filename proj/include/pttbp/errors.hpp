#pragma once

#include <stdexcept>
#include <string>

namespace pttbp {

// Data-dependent failures. Everything here derives from data_error so the CLI
// can map bad input data to exit code 2, while std::invalid_argument (misuse
// of an operation or bad configuration) maps to exit code 1.

class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A channel carries no usable signal (zero variance, all-zero energy, ...).
class degenerate_signal_error : public data_error {
public:
    explicit degenerate_signal_error(const std::string& msg) : data_error(msg) {}
};

// Detected cuff episodes do not line up with the manifest's reference readings.
class manifest_mismatch_error : public data_error {
public:
    explicit manifest_mismatch_error(const std::string& msg) : data_error(msg) {}
};

class insufficient_beats_error : public data_error {
public:
    explicit insufficient_beats_error(const std::string& msg) : data_error(msg) {}
};

// A measurement interval retained fewer than min_beats usable PTT samples.
class sparse_interval_error : public data_error {
public:
    explicit sparse_interval_error(const std::string& msg) : data_error(msg) {}
};

// Regression design has no usable variation (all regressor values equal).
class singular_design_error : public data_error {
public:
    explicit singular_design_error(const std::string& msg) : data_error(msg) {}
};

// A subject has too few measurement points for leave-one-out evaluation.
class insufficient_data_error : public data_error {
public:
    explicit insufficient_data_error(const std::string& msg) : data_error(msg) {}
};

// Correlation undefined: zero variance in estimates or references.
class degenerate_metrics_error : public data_error {
public:
    explicit degenerate_metrics_error(const std::string& msg) : data_error(msg) {}
};

// A synthetic subject profile violates its own invariants.
class profile_error : public data_error {
public:
    explicit profile_error(const std::string& msg) : data_error(msg) {}
};

class io_error : public data_error {
public:
    explicit io_error(const std::string& msg) : data_error(msg) {}
};

}  // namespace pttbp
