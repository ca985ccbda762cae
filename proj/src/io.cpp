#include "tmspline/io.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace tmspline {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return {buf.data(), end};
}

}  // namespace tmspline
