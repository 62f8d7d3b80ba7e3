#pragma once

namespace qdistil {

inline constexpr const char* version = "0.1.0";

}  // namespace qdistil
