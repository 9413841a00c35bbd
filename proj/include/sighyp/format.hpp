#pragma once

#include <string>

namespace sighyp {

// Round-trip formatting; identical across runs and platforms with IEEE doubles.
std::string fmt_double(double x);
std::string fmt_fixed(double x, int digits);

}  // namespace sighyp
