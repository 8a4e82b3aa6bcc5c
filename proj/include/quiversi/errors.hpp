#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace quiversi {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct CycleError : Error {
    std::vector<std::string> cycle;  // closed vertex walk, first == last
    CycleError(const std::string& what, std::vector<std::string> cycle_)
        : Error(what), cycle(std::move(cycle_)) {}
};

struct DanglingEndpointError : Error { using Error::Error; };
struct DuplicateIdError : Error { using Error::Error; };
struct UnknownVertexError : Error { using Error::Error; };
struct DomainMismatchError : Error { using Error::Error; };
struct NotOrthogonalError : Error { using Error::Error; };
struct NotSquareError : Error { using Error::Error; };
struct ShapeError : Error { using Error::Error; };
struct ZeroVectorError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };
struct ZeroWeightError : Error { using Error::Error; };
struct ArgumentError : Error { using Error::Error; };

/// Malformed input document; `pointer` is a JSON-pointer-style location.
struct SchemaError : Error {
    std::string pointer;
    explicit SchemaError(const std::string& what, std::string pointer_ = "")
        : Error(pointer_.empty() ? what : what + " (at " + pointer_ + ")"),
          pointer(std::move(pointer_)) {}
};

}  // namespace quiversi
