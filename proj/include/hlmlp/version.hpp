#pragma once

namespace hlmlp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hlmlp
