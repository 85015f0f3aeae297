#pragma once

#include <stdexcept>
#include <string>

namespace sdb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Construction / configuration
struct ValidationError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Field invariants
struct NonZeroMeanError : Error { using Error::Error; };
struct NotSolenoidalError : Error { using Error::Error; };
struct AxisMismatchError : Error { using Error::Error; };
struct InvalidWaveVectorError : Error { using Error::Error; };
struct UnresolvableError : Error { using Error::Error; };

// Time stepping
struct CflViolationError : Error { using Error::Error; };
struct NonFiniteError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };

// Diagnostics
struct EmptySeriesError : Error { using Error::Error; };
struct IdenticalStatesError : Error { using Error::Error; };

// File I/O
struct IoError : Error { using Error::Error; };
struct BadMagicError : IoError { using IoError::IoError; };
struct TruncatedFileError : IoError { using IoError::IoError; };
struct InvariantViolationError : IoError { using IoError::IoError; };

}  // namespace sdb
