#include "optsyn/rational.hpp"

#include "optsyn/error.hpp"

#include <cctype>
#include <limits>

namespace optsyn {

namespace {

std::int64_t parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw Error("malformed rational '" + std::string(whole) + "'");
    std::int64_t value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw Error("malformed rational '" + std::string(whole) + "'");
        if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10)
            throw Error("rational out of range '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t num = parse_integer(text.substr(0, slash), whole);
        std::int64_t den = parse_integer(text.substr(slash + 1), whole);
        if (den == 0) throw Error("zero denominator in '" + std::string(whole) + "'");
        result = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.size() > 17) throw Error("too many decimals in '" + std::string(whole) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
        std::int64_t ip = int_part.empty() ? 0 : parse_integer(int_part, whole);
        std::int64_t fp = frac_part.empty() ? 0 : parse_integer(frac_part, whole);
        if (int_part.empty() && frac_part.empty())
            throw Error("malformed rational '" + std::string(whole) + "'");
        result = Rational(ip) + Rational(fp, scale);
    } else {
        result = Rational(parse_integer(text, whole));
    }
    return negative ? -result : result;
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
    return boost::rational_cast<double>(r);
}

}  // namespace optsyn
