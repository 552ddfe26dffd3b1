#pragma once

// Error taxonomy shared by the whole library.
//
// invalid_input_error   - a precondition on user-supplied values failed
//                         (divergent parameter region, preperiodic base point
//                         for an operation that requires escape, ...).
// resource_limit_error  - the request is well-formed but exceeds a configured
//                         or hard-wired budget; computations raise it instead
//                         of silently truncating.
// parse_error           - configuration text could not be parsed; carries the
//                         line number and offending field.
// invariant_violation   - an internal consistency check failed; indicates a
//                         bug, never a user error.

#include <stdexcept>
#include <string>

namespace orbitgrowth {

class invalid_input_error : public std::invalid_argument {
public:
    explicit invalid_input_error(const std::string& what)
        : std::invalid_argument(what) {}
};

class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what)
        : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
public:
    /// line == 0 marks a semantic (whole-config) problem with no source line.
    parse_error(int line, std::string field, const std::string& what)
        : std::runtime_error(format(line, field, what)),
          line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(int line, const std::string& field,
                              const std::string& what) {
        std::string msg;
        if (line > 0) msg += "line " + std::to_string(line);
        if (!field.empty()) msg += (msg.empty() ? "" : ", ") + ("field '" + field + "'");
        return msg.empty() ? what : msg + ": " + what;
    }

    int line_;
    std::string field_;
};

class invariant_violation : public std::logic_error {
public:
    explicit invariant_violation(const std::string& what)
        : std::logic_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& what) {
    if (!cond) throw invalid_input_error(what);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw invariant_violation(what);
}

} // namespace detail
} // namespace orbitgrowth
