#ifndef CDAP_TEXT_HPP
#define CDAP_TEXT_HPP

#include <cstdio>
#include <string>

namespace cdap {

// Shortest text that round-trips a double exactly (17 significant digits).
inline std::string format_real17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace cdap

#endif
