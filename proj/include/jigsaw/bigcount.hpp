#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace jigsaw {

// Exact assembly counts and greedy estimates grow like q^(2 n^2).
using BigCount = boost::multiprecision::cpp_int;
using BigReal = boost::multiprecision::cpp_bin_float_50;

inline std::string to_string(const BigCount& x) { return x.str(); }

}  // namespace jigsaw
