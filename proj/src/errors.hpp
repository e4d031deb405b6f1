#pragma once

#include <stdexcept>
#include <string>

namespace kres {

// Error categories map one-to-one onto the C API status codes.
enum class ErrorKind {
    Input,     // malformed or invalid user input
    Cutoff,    // computation requires graded data beyond the cutoff
    Verify,    // a runtime verification failed
    Internal,  // broken invariant inside the engine
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void fail_cutoff(const std::string& msg) { throw Error(ErrorKind::Cutoff, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(ErrorKind::Internal, msg); }

// Engine-level sanity assertion; violations are bugs, not user errors.
inline void check_internal(bool cond, const char* msg) {
    if (!cond) fail_internal(msg);
}

}  // namespace kres
