#include "aifv/rational.hpp"

#include "aifv/error.hpp"

#include <cmath>
#include <cstdlib>

namespace aifv {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw Error(ErrorCode::Parse, "malformed number '" + std::string(whole) + "'");
    mp::cpp_int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw Error(ErrorCode::Parse, "malformed number '" + std::string(whole) + "'");
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational r;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mp::cpp_int num = parse_int(s.substr(0, slash), text);
        mp::cpp_int den = parse_int(s.substr(slash + 1), text);
        if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
        r = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty()) throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
        mp::cpp_int num = ip.empty() ? mp::cpp_int(0) : parse_int(ip, text);
        mp::cpp_int den = 1;
        for (char c : fp) {
            if (c < '0' || c > '9') throw Error(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
            num = num * 10 + (c - '0');
            den *= 10;
        }
        r = Rational(num, den);
    } else {
        r = Rational(parse_int(s, text));
    }
    return neg ? Rational(-r) : r;
}

Rational rational_from_double(double x, long long max_den) {
    if (!std::isfinite(x)) throw Error(ErrorCode::Parse, "non-finite probability");
    bool neg = x < 0;
    double v = std::fabs(x);
    // convergents h/k of the continued fraction of v
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rest = v;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(rest);
        if (a > 9e15) break;
        auto ai = static_cast<long long>(a);
        long long k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        long long h2 = ai * h1 + h0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = rest - a;
        if (frac < 1e-15 || std::fabs(static_cast<double>(h1) / k1 - v) < 1e-15) break;
        rest = 1.0 / frac;
    }
    if (k1 == 0) return Rational(0);
    Rational r{mp::cpp_int(h1), mp::cpp_int(k1)};
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    auto num = mp::numerator(r), den = mp::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& r, int places) {
    mp::cpp_int scale = mp::pow(mp::cpp_int(10), places);
    Rational scaled = r * Rational(scale);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    mp::cpp_int num = mp::numerator(scaled), den = mp::denominator(scaled);
    mp::cpp_int q = num / den, rem = num % den;
    // half-to-even
    if (2 * rem > den || (2 * rem == den && (q & 1) != 0)) ++q;
    std::string digits = q.str();
    if (static_cast<int>(digits.size()) <= places) digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    if (neg && q != 0) out.insert(0, "-");
    return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace aifv
