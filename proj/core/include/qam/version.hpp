#pragma once

namespace qam {
inline constexpr const char* version = "0.1.0";
}
