#pragma once

#include <stdexcept>
#include <string>

namespace diffam {

// Category of a reported failure.  Every throwing operation in this
// library throws Error; the kind makes failures machine-checkable in
// tests and lets the CLI map them to exit codes / messages uniformly.
enum class ErrorKind {
    invalid_parameter,    // a numeric/structural argument violates a precondition
    validation_failure,   // supplied data fails a checked axiom (with witness)
    construction_failure, // a construction's internal step found no valid option
    not_applicable,       // the requested operation does not apply to this input
    parse_error,          // malformed spec string, label, or input file
    io_error,             // file could not be read or written
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace diffam
