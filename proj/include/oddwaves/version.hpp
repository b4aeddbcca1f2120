#ifndef ODDWAVES_VERSION_HPP
#define ODDWAVES_VERSION_HPP

namespace oddwaves {
inline constexpr const char* version = "0.1.0";
}

#endif
