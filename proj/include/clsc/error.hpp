#pragma once

#include <stdexcept>
#include <string>

namespace clsc {

enum class ErrorKind {
    Parse,      // input bytes do not decode in the declared format
    Schema,     // decoded but a field is missing, mistyped, or out of range
    Integrity,  // structurally well-formed but violates a model invariant
    Io,         // filesystem trouble
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace clsc
