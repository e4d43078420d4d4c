#pragma once

#include <string>

namespace shift2d {

// Locale-independent decimal with 17 significant digits ("nan"/"inf" for non-finite).
std::string format_double(double v);

// Shortest decimal that reads back to v.
std::string format_short(double v);

}  // namespace shift2d
