#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace nbt {

// Exact arithmetic used for traces and Mobius values.  Traces of H^k grow
// like mu1^k, so fixed-width integers are not an option.
using Bigint = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace nbt
