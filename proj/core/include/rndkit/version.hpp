#pragma once

#define RNDKIT_VERSION_MAJOR 0
#define RNDKIT_VERSION_MINOR 1
#define RNDKIT_VERSION_PATCH 0
#define RNDKIT_VERSION "0.1.0"

namespace rndkit {

inline const char* version() { return RNDKIT_VERSION; }

} // namespace rndkit
