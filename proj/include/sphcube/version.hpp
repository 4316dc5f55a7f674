#pragma once

namespace sphcube {

inline constexpr const char* kVersion = "0.1.0";

} // namespace sphcube
