#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace catapt {

// Locale-independent float rendering. All numeric CSV/SVG output goes through
// these so that files are byte-stable across platforms and locales.

inline std::string format_general(double v, int significant = 6) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, significant);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::fixed, decimals);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

} // namespace catapt
