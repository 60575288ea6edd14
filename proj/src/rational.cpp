#include "iterindex/rational.hpp"

#include <limits>
#include <stdexcept>

namespace iterindex {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
    if (text.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    std::size_t start = (text.front() == '-' || text.front() == '+') ? 1 : 0;
    if (start == text.size()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
    }
    Integer value(std::string(text.substr(start)));
    return text.front() == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text));
    }
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    Integer den = parse_integer(den_text, text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

std::string format_rational(const Rational& value) {
    return numerator_of(value).str() + "/" + denominator_of(value).str();
}

bool is_integer(const Rational& value) {
    return denominator_of(value) == 1;
}

std::int64_t to_int64(const Rational& value) {
    if (!is_integer(value)) {
        throw std::domain_error("not an integer: " + format_rational(value));
    }
    Integer n = numerator_of(value);
    if (n > std::numeric_limits<std::int64_t>::max() ||
        n < std::numeric_limits<std::int64_t>::min()) {
        throw std::domain_error("integer out of 64-bit range: " + n.str());
    }
    return static_cast<std::int64_t>(n);
}

Integer floor_of(const Rational& value) {
    Integer num = numerator_of(value);
    Integer den = denominator_of(value);
    Integer q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) {
        q -= 1;
    }
    return q;
}

}  // namespace iterindex
