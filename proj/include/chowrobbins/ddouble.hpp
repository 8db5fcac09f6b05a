#pragma once

// Double-double scalar: an unevaluated sum hi + lo of two doubles with
// |lo| <= ulp(hi)/2.  Field operations are deterministic and carry a
// relative error of about 2^-104 (~31 decimal digits).

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace chowrobbins {

namespace detail {

// Error-free transforms (Knuth / Dekker).
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

// Requires |a| >= |b| or a == 0.
inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

} // namespace detail

struct ddouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr ddouble() = default;
    constexpr ddouble(double x) : hi(x), lo(0.0) {}
    constexpr ddouble(double h, double l) : hi(h), lo(l) {}

    static ddouble from_ll(long long v) {
        // Split so both components stay exact even beyond 2^53.
        double h = static_cast<double>(v);
        double l = static_cast<double>(v - static_cast<long long>(h));
        return {h, l};
    }

    double to_double() const { return hi + lo; }
    explicit operator double() const { return to_double(); }

    bool is_zero() const { return hi == 0.0; }
    bool is_negative() const { return hi < 0.0 || (hi == 0.0 && lo < 0.0); }
};

// -------- comparisons (exact on the representation) --------

inline bool operator==(const ddouble& a, const ddouble& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const ddouble& a, const ddouble& b) { return !(a == b); }
inline bool operator<(const ddouble& a, const ddouble& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const ddouble& a, const ddouble& b) { return b < a; }
inline bool operator<=(const ddouble& a, const ddouble& b) { return !(b < a); }
inline bool operator>=(const ddouble& a, const ddouble& b) { return !(a < b); }

// -------- arithmetic --------

inline ddouble operator-(const ddouble& a) { return {-a.hi, -a.lo}; }

inline ddouble operator+(const ddouble& a, const ddouble& b) {
    double s1, s2, t1, t2;
    detail::two_sum(a.hi, b.hi, s1, s2);
    detail::two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    detail::quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    detail::quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

inline ddouble operator-(const ddouble& a, const ddouble& b) { return a + (-b); }

inline ddouble operator*(const ddouble& a, const ddouble& b) {
    double p1, p2;
    detail::two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    detail::quick_two_sum(p1, p2, p1, p2);
    return {p1, p2};
}

inline ddouble operator/(const ddouble& a, const ddouble& b) {
    if (b.hi == 0.0 && b.lo == 0.0) throw std::domain_error("ddouble: division by zero");
    double q1 = a.hi / b.hi;
    ddouble r = a - b * ddouble(q1);
    double q2 = r.hi / b.hi;
    r = r - b * ddouble(q2);
    double q3 = r.hi / b.hi;
    double s, e;
    detail::quick_two_sum(q1, q2, s, e);
    ddouble q(s, e);
    return q + ddouble(q3);
}

inline ddouble& operator+=(ddouble& a, const ddouble& b) { a = a + b; return a; }
inline ddouble& operator-=(ddouble& a, const ddouble& b) { a = a - b; return a; }
inline ddouble& operator*=(ddouble& a, const ddouble& b) { a = a * b; return a; }
inline ddouble& operator/=(ddouble& a, const ddouble& b) { a = a / b; return a; }

// Exact scaling by a power of two.
inline ddouble mul_pwr2(const ddouble& a, double p2) { return {a.hi * p2, a.lo * p2}; }

inline ddouble abs(const ddouble& a) { return a.is_negative() ? -a : a; }

inline ddouble sqrt(const ddouble& a) {
    if (a.is_zero()) return {};
    if (a.is_negative()) throw std::domain_error("ddouble: sqrt of negative");
    // Karp's high-precision square root: one Newton correction in dd.
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    ddouble axd(ax);
    ddouble err = a - axd * axd;
    return axd + ddouble(err.hi * (x * 0.5));
}

inline ddouble sqr(const ddouble& a) { return a * a; }

inline ddouble floor(const ddouble& a) {
    double h = std::floor(a.hi);
    if (h != a.hi) return {h, 0.0};
    double l = std::floor(a.lo);
    double s, e;
    detail::quick_two_sum(h, l, s, e);
    return {s, e};
}

inline ddouble ceil(const ddouble& a) { return -floor(-a); }

inline long long floor_ll(const ddouble& a) {
    ddouble f = floor(a);
    return static_cast<long long>(f.hi) + static_cast<long long>(f.lo);
}

inline long long ceil_ll(const ddouble& a) { return -floor_ll(-a); }

inline ddouble ldexp(const ddouble& a, int n) {
    return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

// -------- decimal formatting / parsing --------

namespace detail {

inline ddouble pow10_dd(int k) {
    // 10^k is exact in a double for |k| <= 22; compose larger powers.
    static const double exact[23] = {
        1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11,
        1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};
    if (k < 0) return ddouble(1.0) / pow10_dd(-k);
    ddouble r(1.0);
    while (k > 22) {
        r = r * ddouble(exact[22]);
        k -= 22;
    }
    return r * ddouble(exact[k]);
}

} // namespace detail

// Round-to-nearest decimal string with `digits` significant digits.
inline std::string to_string(const ddouble& x, int digits = 32) {
    if (digits < 1) digits = 1;
    if (x.hi != x.hi) return "nan";
    if (x.is_zero()) return "0";
    ddouble a = abs(x);
    int e10 = static_cast<int>(std::floor(std::log10(a.hi)));
    ddouble m = a * detail::pow10_dd(-e10);
    if (m.hi >= 10.0) { m = m / ddouble(10.0); ++e10; }
    if (m.hi < 1.0) { m = m * ddouble(10.0); --e10; }
    // Half-ulp rounding at the last requested digit.
    m = m + mul_pwr2(detail::pow10_dd(-(digits - 1)), 0.5);
    if (m.hi >= 10.0) { m = m / ddouble(10.0); ++e10; }
    std::string mant;
    for (int i = 0; i < digits; ++i) {
        int d = static_cast<int>(floor_ll(m));
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        mant.push_back(static_cast<char>('0' + d));
        m = (m - ddouble(static_cast<double>(d))) * ddouble(10.0);
    }
    std::string out;
    if (x.is_negative()) out.push_back('-');
    if (e10 >= -4 && e10 < digits + 4) {
        // fixed notation
        if (e10 >= 0) {
            int ip = e10 + 1;
            if (ip >= static_cast<int>(mant.size())) {
                out += mant;
                out.append(static_cast<size_t>(ip - mant.size()), '0');
            } else {
                out += mant.substr(0, ip);
                std::string frac = mant.substr(ip);
                while (!frac.empty() && frac.back() == '0') frac.pop_back();
                if (!frac.empty()) out += "." + frac;
            }
        } else {
            out += "0.";
            out.append(static_cast<size_t>(-e10 - 1), '0');
            std::string frac = mant;
            while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
            out += frac;
        }
    } else {
        out.push_back(mant[0]);
        std::string frac = mant.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e10);
    }
    return out;
}

inline ddouble parse_ddouble(const std::string& s) {
    const char* p = s.c_str();
    bool neg = false;
    if (*p == '+' || *p == '-') neg = (*p++ == '-');
    ddouble v(0.0);
    int frac_digits = 0;
    bool in_frac = false, any = false;
    for (; *p; ++p) {
        if (*p >= '0' && *p <= '9') {
            v = v * ddouble(10.0) + ddouble(static_cast<double>(*p - '0'));
            if (in_frac) ++frac_digits;
            any = true;
        } else if (*p == '.' && !in_frac) {
            in_frac = true;
        } else {
            break;
        }
    }
    if (!any) throw std::invalid_argument("parse_ddouble: not a number: " + s);
    int e10 = -frac_digits;
    if (*p == 'e' || *p == 'E') e10 += std::atoi(p + 1);
    if (e10 != 0) v = v * detail::pow10_dd(e10);
    return neg ? -v : v;
}

} // namespace chowrobbins
