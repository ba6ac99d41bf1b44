#include "fttc/rational.hpp"

#include <cctype>

namespace fttc {

std::string Rational::str() const {
    std::string s = num().str();
    if (!is_integer()) {
        s += '/';
        s += den().str();
    }
    return s;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt pow10(std::size_t k) {
    BigInt r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= 10;
    return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("rational: empty literal");

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view p = s.substr(0, slash);
        std::string_view q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw std::invalid_argument("rational: malformed fraction '" + std::string(text) + "'");
        BigInt den{std::string(q)};
        if (den == 0) throw std::invalid_argument("rational: zero denominator in '" + std::string(text) + "'");
        value = Rational(BigInt(std::string(p)), den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || !all_digits(frac))
            throw std::invalid_argument("rational: malformed decimal '" + std::string(text) + "'");
        BigInt scale = pow10(frac.size());
        BigInt num = BigInt(std::string(whole)) * scale + BigInt(std::string(frac));
        value = Rational(num, scale);
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("rational: malformed literal '" + std::string(text) + "'");
        value = Rational(BigInt(std::string(s)), BigInt(1));
    }
    return negative ? -value : value;
}

}  // namespace fttc
