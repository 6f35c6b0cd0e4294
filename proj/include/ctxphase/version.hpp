#pragma once

namespace ctxphase {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ctxphase
