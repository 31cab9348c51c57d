#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace optsyn {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", an integer, or a finite decimal ("0.25") exactly.
/// Throws optsyn::Error on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "3", "5/6", "-1/2".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace optsyn
