#ifndef TQLAB_VERSION_HPP
#define TQLAB_VERSION_HPP

namespace tqlab {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
