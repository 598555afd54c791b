#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace pbn {

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace pbn
