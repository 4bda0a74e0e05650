#include "twoattr/rational.hpp"

#include <cctype>
#include <sstream>

namespace twoattr {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

BigInt parse_bigint(std::string_view s)
{
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw ValidationError("empty integer");
    BigInt v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw ValidationError("bad integer '" + std::string(s) + "'");
        v = v * 10 + (ch - '0');
    }
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.empty()) throw ValidationError("empty number");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_bigint(s.substr(0, slash));
        BigInt den = parse_bigint(s.substr(slash + 1));
        if (den == 0) throw ValidationError("zero denominator in '" + std::string(s) + "'");
        return Rational(num, den);
    }
    // decimal with optional exponent, converted exactly
    std::string mant(s);
    int exp10 = 0;
    if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
        try {
            exp10 = std::stoi(mant.substr(e + 1));
        } catch (...) {
            throw ValidationError("bad number '" + std::string(s) + "'");
        }
        mant = mant.substr(0, e);
    }
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        exp10 -= static_cast<int>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    Rational q(parse_bigint(mant));
    BigInt p10 = 1;
    for (int i = 0; i < std::abs(exp10); ++i) p10 *= 10;
    return exp10 >= 0 ? Rational(q * p10) : Rational(q / p10);
}

std::string to_string(const Rational& q)
{
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw BudgetError("int64 overflow in addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw BudgetError("int64 overflow in multiplication");
    return r;
}

std::int64_t to_int64(const BigInt& v)
{
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw BudgetError("value exceeds int64 range");
    return v.convert_to<std::int64_t>();
}

std::vector<std::int64_t> parse_int_list(std::string_view text, char sep)
{
    std::vector<std::int64_t> out;
    std::string_view s = trim(text);
    if (s.empty()) throw ValidationError("empty integer list");
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        std::string_view tok = s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        out.push_back(to_int64(parse_bigint(tok)));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string format_int_list(const std::vector<std::int64_t>& v, char sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace twoattr
