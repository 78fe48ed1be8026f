#include "sigdesign/rational.hpp"

#include "sigdesign/errors.hpp"

#include <cctype>
#include <sstream>

namespace sigdesign {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) fail(Err::BadRational, "empty rational literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(s.begin());
    }

    auto slash = s.find('/');
    auto dot = s.find('.');
    Rational r;
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            fail(Err::BadRational, "bad rational literal: " + text);
        Integer d(den);
        if (d == 0) fail(Err::BadRational, "zero denominator: " + text);
        r = Rational(Integer(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (frac.empty()) frac = "0";
        if (!all_digits(whole) || !all_digits(frac))
            fail(Err::BadRational, "bad rational literal: " + text);
        Integer scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        r = Rational(Integer(whole) * scale + Integer(frac), scale);
    } else {
        if (!all_digits(s)) fail(Err::BadRational, "bad rational literal: " + text);
        r = Rational(Integer(s));
    }
    return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace sigdesign
