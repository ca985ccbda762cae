#pragma once

#include <string>

namespace tmspline {

/// Locale-independent decimal with 17 significant digits (round-trip safe).
std::string format_double(double v);

}  // namespace tmspline
