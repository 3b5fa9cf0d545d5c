#pragma once

#include <stdexcept>
#include <string>

namespace cf3 {

// Failure taxonomy shared by the library and the CLI.  The CLI maps these to
// process exit codes: invalid_* -> 2, precondition/regime/range/size -> 4.
// "undecided" is not an error: operations that can fail to decide return a
// verdict object instead of throwing.
enum class errkind {
    invalid_word,        // word grammar violation or quotient < 1
    invalid_input,       // malformed expression, JSON, flag value
    insufficient_depth,  // an enclosure or search needs a larger depth
    precondition,        // documented operation precondition violated
    unsupported_threshold,
    regime,              // gauge regime does not admit the construction
    range,               // argument outside supported range
    size,                // enumeration would exceed the configured cap
    internal             // invariant breach; always a bug
};

class error : public std::runtime_error {
public:
    error(errkind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    errkind kind() const { return kind_; }

private:
    errkind kind_;
};

[[noreturn]] inline void fail(errkind k, const std::string& msg) { throw error(k, msg); }

} // namespace cf3
