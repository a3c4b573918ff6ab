#ifndef CDAP_VERSION_HPP
#define CDAP_VERSION_HPP

namespace cdap {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
