#pragma once

#include <stdexcept>
#include <string>

namespace ellipack {

enum class errc {
    parse,
    zero_denominator,
    negative_value,
    invalid_argument,
    hypothesis_failure,
    threshold_failure,
    volume_obstruction,
    precision_exhausted,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::parse: return "ParseError";
    case errc::zero_denominator: return "ZeroDenominator";
    case errc::negative_value: return "NegativeValue";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::hypothesis_failure: return "HypothesisFailure";
    case errc::threshold_failure: return "ThresholdFailure";
    case errc::volume_obstruction: return "VolumeObstruction";
    case errc::precision_exhausted: return "PrecisionExhausted";
    }
    return "Error";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace ellipack
