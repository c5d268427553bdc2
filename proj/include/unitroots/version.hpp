#pragma once

#define UNITROOTS_VERSION_MAJOR 0
#define UNITROOTS_VERSION_MINOR 1
#define UNITROOTS_VERSION_PATCH 0

namespace unitroots {

inline constexpr const char* version_string = "0.1.0";

}  // namespace unitroots
