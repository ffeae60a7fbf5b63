#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pobs {

/// 17 significant digits; round-trips through strtod.
std::string fmt_num(double v);

/// FNV-1a 64-bit, printed as 16 hex digits.
std::string content_hash(std::string_view bytes);

}  // namespace pobs
