#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hfcone {

using Rational = boost::rational<std::int64_t>;

// "p" for integers, "p/q" otherwise (reduced, q > 0).
std::string to_string(const Rational& r);
// Inverse of to_string; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Canonical residue of s modulo |n| in [0, |n|).
int residue(long long s, int n);

// Bottom degree of the tower of HF+(L(n,1), i); n != 0, 0 <= i < |n|.
Rational d_lens(int n, int i);
// Same maximization over the window s in [-span*|n|, span*|n|].
Rational d_lens_window(int n, int i, int span);

}  // namespace hfcone
