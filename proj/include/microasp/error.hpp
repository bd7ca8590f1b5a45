#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace microasp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 1-based position of a token in some input text.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 1;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, const std::string& message)
        : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
          span_(span), message_(message) {}

    const SourceSpan& span() const noexcept { return span_; }
    const std::string& message() const noexcept { return message_; }

private:
    SourceSpan span_;
    std::string message_;
};

/// Raised when an operation receives a construct it does not handle
/// (e.g. completion of a program with choice rules).
class UnsupportedFeature : public Error {
public:
    using Error::Error;
};

/// Raised when a brute-force routine is asked to exceed its size cap.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

/// Bad parameters to a generator or configuration.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace microasp
