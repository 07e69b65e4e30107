#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace floer {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit (matrix products, vector lengths).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A documented precondition does not hold. `index` names the offending
/// column, generator or entry when there is one.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what,
                               std::optional<std::size_t> index = std::nullopt)
        : Error(what), index(index) {}

    std::optional<std::size_t> index;
};

/// An algebraic identity that should hold on the data failed to hold
/// (d^2 != 0, a map is not a chain map, a sequence is not exact).
class VerificationError : public Error {
public:
    VerificationError(const std::string& what, std::string identity)
        : Error(what), identity(std::move(identity)) {}

    std::string identity;
};

/// Malformed textual input (JSON syntax).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what), line(line), column(column) {}

    std::size_t line;
    std::size_t column;
};

/// Well-formed JSON that does not match the expected schema. `pointer` is
/// an RFC 6901 JSON pointer to the offending value.
class SchemaError : public Error {
public:
    SchemaError(const std::string& what, std::string pointer)
        : Error(what + " at " + (pointer.empty() ? "/" : pointer)),
          pointer(std::move(pointer)) {}

    std::string pointer;
};

} // namespace floer
