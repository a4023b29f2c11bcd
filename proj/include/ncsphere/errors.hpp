#pragma once

#include <stdexcept>
#include <string>

namespace ncsphere {

/// Precondition or usage violation (bad dimensions, unknown generator, ...).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure while parsing an expression string; `pos` is a 0-based offset.
struct parse_error : error {
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at position " + std::to_string(pos) + ")"), pos(pos) {}
    std::size_t pos;
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}
}  // namespace detail

}  // namespace ncsphere
