#include "carpetlab/rational.hpp"

#include <sstream>

#include "carpetlab/errors.hpp"

namespace carpetlab {

std::string to_fraction(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

namespace {

bool parse_bigint(const std::string& s, BigInt& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') return false;
    out = BigInt(s);
    return true;
}

}  // namespace

Rational parse_fraction(const std::string& s) {
    std::size_t slash = s.find('/');
    BigInt num, den = 1;
    bool ok = parse_bigint(slash == std::string::npos ? s : s.substr(0, slash), num);
    if (ok && slash != std::string::npos) ok = parse_bigint(s.substr(slash + 1), den);
    if (!ok || den == 0) throw input_error("bad rational \"" + s + "\" (expected num/den)");
    return Rational(num, den);
}

std::string point_to_string(const ExactPoint& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ',';
        out += to_fraction(p[i]);
    }
    out += ')';
    return out;
}

}  // namespace carpetlab
