#pragma once

namespace quasihyper {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace quasihyper
