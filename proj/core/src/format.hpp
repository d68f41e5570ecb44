#pragma once

#include <string>

#include <fmt/format.h>

namespace sfctn::detail {

/// 17 significant digits: lossless round-trip for doubles.
inline std::string format_real(double v) { return fmt::format("{:.17g}", v); }

}  // namespace sfctn::detail
