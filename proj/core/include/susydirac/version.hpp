#ifndef SUSYDIRAC_VERSION_HPP
#define SUSYDIRAC_VERSION_HPP

namespace susydirac {

inline constexpr const char* version = "0.1.0";

} // namespace susydirac

#endif
