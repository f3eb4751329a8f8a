#pragma once

#include <cstdio>
#include <string>

namespace gpaths::csv {

/// 17 significant digits, enough for an exact double round trip.
inline std::string number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace gpaths::csv
