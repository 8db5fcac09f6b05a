#pragma once

// Special functions on ddouble: exp, the standard normal pdf/cdf pair, and
// the cdf/pdf ratio H(x) = G(x)/g(x) that the Brownian value function is
// built from.
//
// H is evaluated in three zones:
//   x >= -2.75      via the erf Taylor series (no cancellation trouble here),
//   -6.25 < x < -2.75  via cached Taylor nodes of the ODE H' = 1 + x H,
//   x <= -6.25      via the Laplace continued fraction for the Mills ratio.
// The node values are built once by stepping inward from a continued-fraction
// anchor; stepping in that direction damps propagated error (the homogeneous
// solution of the ODE grows like exp(x^2/2), so moving toward 0 contracts it).

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ddouble.hpp"

namespace chowrobbins {

namespace consts {

inline const ddouble& pi() {
    static const ddouble v(0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53);
    return v;
}

inline const ddouble& ln2() {
    static const ddouble v(0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56);
    return v;
}

inline const ddouble& sqrt_2pi() {
    static const ddouble v = sqrt(mul_pwr2(pi(), 2.0));
    return v;
}

inline const ddouble& inv_sqrt_2pi() {
    static const ddouble v = ddouble(1.0) / sqrt_2pi();
    return v;
}

inline const ddouble& two_over_sqrt_pi() {
    static const ddouble v = ddouble(2.0) / sqrt(pi());
    return v;
}

inline const ddouble& sqrt_half() {
    static const ddouble v = sqrt(ddouble(0.5));
    return v;
}

} // namespace consts

// exp with relative error ~1e-30 over the double-exponent range.
inline ddouble exp_dd(const ddouble& x) {
    if (x.hi > 709.0 || x.hi < -708.0)
        throw std::range_error("exp_dd: argument out of representable range");
    if (x.is_zero()) return ddouble(1.0);
    double m = std::nearbyint(x.hi / consts::ln2().hi);
    ddouble r = x - consts::ln2() * ddouble(m);
    // exp(r) = (exp(r/512))^512; Taylor on the reduced argument.
    r = mul_pwr2(r, 1.0 / 512.0);
    ddouble p = r;       // expm1 of the reduced argument
    ddouble term = r;
    for (int k = 2; k <= 12; ++k) {
        term = term * r / ddouble(static_cast<double>(k));
        p += term;
        if (std::fabs(term.hi) < 1e-40) break;
    }
    for (int i = 0; i < 9; ++i) p = mul_pwr2(p, 2.0) + sqr(p);  // (1+p)^2 - 1
    return ldexp(p + ddouble(1.0), static_cast<int>(m));
}

namespace detail {

// erf(z) for |z| <= 2 by the alternating Taylor series.
inline ddouble erf_taylor(const ddouble& z) {
    ddouble z2 = sqr(z);
    ddouble c = z;     // z^(2n+1) * (-1)^n / n!
    ddouble sum = z;
    for (int n = 1; n <= 64; ++n) {
        c = c * (-z2) / ddouble(static_cast<double>(n));
        ddouble term = c / ddouble(static_cast<double>(2 * n + 1));
        sum += term;
        if (std::fabs(term.hi) < 1e-39) break;
    }
    return sum * consts::two_over_sqrt_pi();
}

// Mills ratio H(-z) = G(-z)/g(z) for z > 0 by the Laplace continued fraction
//   R(z) = 1/(z + 1/(z + 2/(z + 3/(...)))).
inline ddouble mills_cf(const ddouble& z) {
    int depth;
    double zh = z.hi;
    if (zh >= 30.0) depth = 24;
    else if (zh >= 15.0) depth = 48;
    else if (zh >= 10.0) depth = 96;
    else depth = 170;
    ddouble r(0.0);
    for (int k = depth; k >= 1; --k) r = ddouble(static_cast<double>(k)) / (z + r);
    return ddouble(1.0) / (z + r);
}

struct mills_node_table {
    static constexpr int count = 15;          // x = -6.25, -6.00, ..., -2.75
    static constexpr double x_first = -6.25;
    static constexpr double spacing = 0.25;
    std::array<ddouble, count> h;

    mills_node_table() {
        h[0] = mills_cf(ddouble(-x_first));
        for (int i = 1; i < count; ++i)
            h[i] = taylor_step(ddouble(x_first + spacing * (i - 1)), h[i - 1], ddouble(spacing));
    }

    // H(a + s) from H(a) via the Taylor recurrence of H' = 1 + x H:
    //   (k+1) h_{k+1} = [k==0] + a h_k + h_{k-1}.
    static ddouble taylor_step(const ddouble& a, const ddouble& ha, const ddouble& s) {
        ddouble hk_m1(0.0), hk = ha;
        ddouble sum = ha, spow = s;
        for (int k = 0; k < 40; ++k) {
            ddouble hk_p1 = a * hk + hk_m1;
            if (k == 0) hk_p1 += ddouble(1.0);
            hk_p1 = hk_p1 / ddouble(static_cast<double>(k + 1));
            sum += hk_p1 * spow;
            spow = spow * s;
            hk_m1 = hk;
            hk = hk_p1;
        }
        return sum;
    }
};

inline const mills_node_table& mills_nodes() {
    static const mills_node_table t;
    return t;
}

} // namespace detail

// H(x) = G(x)/g(x), the normal cdf/pdf ratio.  Valid for every finite x;
// grows like sqrt(2*pi)*exp(x^2/2) for large positive x (range error there),
// decays like -1/x for large negative x.
inline ddouble normal_cdf_pdf_ratio(const ddouble& x) {
    if (x.hi <= -6.25) return detail::mills_cf(-x);
    if (x.hi <= -2.75) {
        const auto& t = detail::mills_nodes();
        int i = static_cast<int>(std::nearbyint((x.hi - detail::mills_node_table::x_first) /
                                                detail::mills_node_table::spacing));
        if (i < 0) i = 0;
        if (i >= detail::mills_node_table::count) i = detail::mills_node_table::count - 1;
        ddouble a(detail::mills_node_table::x_first + detail::mills_node_table::spacing * i);
        return detail::mills_node_table::taylor_step(a, t.h[i], x - a);
    }
    // erf zone and the positive axis: H = G/g directly.
    ddouble g = exp_dd(mul_pwr2(-sqr(x), 0.5)) * consts::inv_sqrt_2pi();
    ddouble G;
    if (x.hi <= 2.75) {
        ddouble e = detail::erf_taylor(x * consts::sqrt_half());
        G = mul_pwr2(ddouble(1.0) + e, 0.5);
    } else {
        G = ddouble(1.0) - g * normal_cdf_pdf_ratio(-x);
    }
    return G / g;
}

// Standard normal cdf G and pdf g.  Stable in both tails; throws a range
// error once g underflows the double exponent range (|x| > 37.5).
inline std::pair<ddouble, ddouble> normal_cdf_pdf(const ddouble& x) {
    if (std::fabs(x.hi) > 37.5)
        throw std::range_error("normal_cdf_pdf: pdf underflows for |x| > 37.5");
    ddouble g = exp_dd(mul_pwr2(-sqr(x), 0.5)) * consts::inv_sqrt_2pi();
    ddouble G;
    if (std::fabs(x.hi) <= 2.75) {
        ddouble e = detail::erf_taylor(x * consts::sqrt_half());
        G = mul_pwr2(ddouble(1.0) + e, 0.5);
    } else if (x.hi < 0.0) {
        G = g * normal_cdf_pdf_ratio(x);
    } else {
        G = ddouble(1.0) - g * normal_cdf_pdf_ratio(-x);
    }
    return {G, g};
}

// Complementary error function, derived from the same machinery.
inline ddouble erfc_dd(const ddouble& z) {
    // erfc(z) = 2 G(-z*sqrt(2))
    auto [G, g] = normal_cdf_pdf(-z * sqrt(ddouble(2.0)));
    (void)g;
    return mul_pwr2(G, 2.0);
}

} // namespace chowrobbins
