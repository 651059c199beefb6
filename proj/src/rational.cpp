#include "robusteq/rational.hpp"

#include <cctype>

#include "robusteq/errors.hpp"

namespace robusteq {

namespace {

bool parse_integer(const std::string& text, size_t begin, size_t end, BigInt& out) {
    if (begin >= end) return false;
    bool neg = false;
    size_t i = begin;
    if (text[i] == '-' || text[i] == '+') {
        neg = text[i] == '-';
        ++i;
    }
    if (i >= end) return false;
    BigInt value = 0;
    for (; i < end; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
        value = value * 10 + (text[i] - '0');
    }
    out = neg ? -value : value;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (begin >= end) throw FormatError("empty rational literal");

    size_t slash = text.find('/', begin);
    BigInt num;
    if (slash == std::string::npos || slash >= end) {
        if (!parse_integer(text, begin, end, num))
            throw FormatError("bad rational literal: '" + text + "'");
        return Rational(num);
    }
    BigInt den;
    if (!parse_integer(text, begin, slash, num) || !parse_integer(text, slash + 1, end, den))
        throw FormatError("bad rational literal: '" + text + "'");
    if (den == 0) throw FormatError("zero denominator in rational literal: '" + text + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational& value) {
    std::string text = numerator(value).str();
    if (denominator(value) != 1) {
        text += '/';
        text += denominator(value).str();
    }
    return text;
}

std::string format_rational_vector(const std::vector<Rational>& values) {
    std::string text = "(";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) text += ", ";
        text += format_rational(values[i]);
    }
    text += ')';
    return text;
}

}  // namespace robusteq
