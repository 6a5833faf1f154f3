#pragma once

#include <stdexcept>
#include <string>

namespace weakforge {

// Precondition or API-contract breach by the caller.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Two snapshots (or a snapshot and a vocab) that cannot be used together.
struct IncompatibleSnapshotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A non-finite value showed up during forward/backward; message names the
// parameter block it was detected in.
struct NumericOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorruptCheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A serialized example does not fit the model context. Callers that batch
// examples catch this, count it, and move on.
struct ExampleTooLongError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyTrainingSetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyPreferenceSetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; message carries the 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
    std::size_t line_no;
};

// Well-formed input that violates a dataset invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace weakforge
