#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace giant {

enum class Errc {
    InvalidInput,
    SumNotOne,
    NegativeProbability,
    DuplicateDegree,
    DivergentTail,
    DomainError,
    ZeroMean,
    NoConvergence,
    MeanMismatch,
    DegenerateTwoRegular,
    BadPrefix,
    EmptyTail,
    InfeasibleMean,
    BadM,
    DegenerateSplit,
    BadStep,
    InfeasibleControl,
    OddSum,
    ParseError,
};

constexpr std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::SumNotOne: return "SumNotOne";
    case Errc::NegativeProbability: return "NegativeProbability";
    case Errc::DuplicateDegree: return "DuplicateDegree";
    case Errc::DivergentTail: return "DivergentTail";
    case Errc::DomainError: return "DomainError";
    case Errc::ZeroMean: return "ZeroMean";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::MeanMismatch: return "MeanMismatch";
    case Errc::DegenerateTwoRegular: return "DegenerateTwoRegular";
    case Errc::BadPrefix: return "BadPrefix";
    case Errc::EmptyTail: return "EmptyTail";
    case Errc::InfeasibleMean: return "InfeasibleMean";
    case Errc::BadM: return "BadM";
    case Errc::DegenerateSplit: return "DegenerateSplit";
    case Errc::BadStep: return "BadStep";
    case Errc::InfeasibleControl: return "InfeasibleControl";
    case Errc::OddSum: return "OddSum";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace giant
