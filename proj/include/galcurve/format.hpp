#pragma once

#include <string>

namespace galcurve {

/// Shortest decimal text that reads back to exactly `v`. Non-finite values
/// become "nan", "inf" or "-inf".
std::string format_double(double v);

}  // namespace galcurve
