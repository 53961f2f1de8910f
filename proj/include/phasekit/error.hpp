// error.hpp: error kinds raised by the phasekit library.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasekit {

enum class ErrorKind {
    ParseError,
    InvalidSpectrum,
    InvalidArgument,
    IndexOutOfTable,
    OutOfDomain,
    NonConvergentSeries,
    SubspaceTooSmall,
    ComplexAmplitudeUnsupported,
    QuadratureUnreliable,
    HermiticityViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures surface as this exception. what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
          kind_(kind), detail_(detail) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexOutOfTable: return "IndexOutOfTable";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::NonConvergentSeries: return "NonConvergentSeries";
    case ErrorKind::SubspaceTooSmall: return "SubspaceTooSmall";
    case ErrorKind::ComplexAmplitudeUnsupported: return "ComplexAmplitudeUnsupported";
    case ErrorKind::QuadratureUnreliable: return "QuadratureUnreliable";
    case ErrorKind::HermiticityViolation: return "HermiticityViolation";
    }
    return "Error";
}

}  // namespace phasekit
