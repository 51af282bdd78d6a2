#pragma once

namespace mktcx {
inline constexpr const char* kVersion = "0.1.0";
}
