#pragma once

#include <charconv>
#include <string>

namespace bittp::detail {

// Shortest representation that parses back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

} // namespace bittp::detail
