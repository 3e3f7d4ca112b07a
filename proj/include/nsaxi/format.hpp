#pragma once

#include <string>

namespace nsaxi {

/// Shortest decimal text that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

}  // namespace nsaxi
