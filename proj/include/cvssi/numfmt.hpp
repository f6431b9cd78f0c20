#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace cvssi {

// 12-significant-digit text form used by every emitted file and report.
inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Value quantized through its 12-digit text form, so JSON and CSV
// emissions of the same run agree digit for digit.
inline double quant12(double v) {
    return std::strtod(fmt12(v).c_str(), nullptr);
}

} // namespace cvssi
