#include "subtile/golden.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <stdexcept>
#include <sstream>

namespace subtile {

namespace {
using Dec = boost::multiprecision::cpp_dec_float_100;

Dec dec_of_rat(const BigRat& r) {
    return Dec(boost::multiprecision::numerator(r)) /
           Dec(boost::multiprecision::denominator(r));
}

const Dec& dec_tau() {
    static const Dec t = (Dec(1) + sqrt(Dec(5))) / 2;
    return t;
}
} // namespace

double rat_to_double(const BigRat& r) {
    return dec_of_rat(r).convert_to<double>();
}

std::string rat_str(const BigRat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

BigRat rat_parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto bad = [&] { throw std::invalid_argument("bad rational literal: " + text); };
    size_t slash = s.find('/');
    auto check_int = [&](const std::string& p) {
        if (p.empty()) bad();
        size_t i = (p[0] == '-' || p[0] == '+') ? 1 : 0;
        if (i == p.size()) bad();
        for (; i < p.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(p[i]))) bad();
    };
    if (slash == std::string::npos) {
        check_int(s);
        return BigRat(BigInt(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    return BigRat(BigInt(num), d);
}

Golden Golden::inverse() const {
    // (u + v t)^-1 = (u + v - v t) / (u^2 + uv - v^2)
    BigRat norm = u_ * u_ + u_ * v_ - v_ * v_;
    if (norm == 0) throw std::domain_error("division by zero golden number");
    return Golden((u_ + v_) / norm, -v_ / norm);
}

int Golden::sign() const {
    // u + v*tau = (a + b*sqrt(5))/2 with a = 2u + v, b = v
    BigRat a = 2 * u_ + v_;
    const BigRat& b = v_;
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 vs 5 b^2
    BigRat a2 = a * a, b25 = 5 * b * b;
    if (a2 == b25) return 0; // impossible for nonzero rationals, kept for safety
    bool a_wins = a2 > b25;
    return a_wins ? sa : sb;
}

double Golden::to_double() const {
    // Direct double evaluation of u + v*tau cancels catastrophically when
    // u and v are huge with opposite signs (e.g. tau^-N), so go through
    // 100-digit decimals.
    Dec val = dec_of_rat(u_) + dec_of_rat(v_) * dec_tau();
    return val.convert_to<double>();
}

std::string Golden::str() const {
    return "(" + rat_str(u_) + "," + rat_str(v_) + ")";
}

Golden Golden::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw std::invalid_argument("bad golden literal: " + text);
    s = s.substr(1, s.size() - 2);
    size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("bad golden literal: " + text);
    return Golden(rat_parse(s.substr(0, comma)), rat_parse(s.substr(comma + 1)));
}

Golden tau_pow(long long k) {
    Golden base = k >= 0 ? Golden::tau() : Golden(BigRat(-1), BigRat(1)); // tau^-1 = tau - 1
    long long n = k >= 0 ? k : -k;
    Golden acc(1);
    Golden p = base;
    while (n > 0) {
        if (n & 1) acc *= p;
        p *= p;
        n >>= 1;
    }
    return acc;
}

Golden golden_min(const Golden& a, const Golden& b) { return a <= b ? a : b; }
Golden golden_max(const Golden& a, const Golden& b) { return a >= b ? a : b; }

BigInt golden_floor(const Golden& g) {
    double approx = g.to_double();
    BigInt f(static_cast<long long>(std::floor(approx)));
    while (Golden(BigRat(f)) > g) --f;
    while (Golden(BigRat(f + 1)) <= g) ++f;
    return f;
}

} // namespace subtile
