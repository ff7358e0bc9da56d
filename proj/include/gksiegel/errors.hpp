#pragma once

#include <stdexcept>
#include <string>

namespace gksiegel {

// Exit-code mapping used by the CLI: validation -> 1, budget -> 2, invariant -> 3.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A failed internal invariant always signals a bug, never bad input.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw validation_error(msg);
}

inline void check_invariant(bool cond, const std::string& msg) {
    if (!cond) throw invariant_error(msg);
}

} // namespace gksiegel
