#pragma once

#include <cstddef>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace circreg {

/**
 * Closed-form predictions for cubic circulants C_{2n}(a, n). Pure
 * arithmetic on (n, a, t); nothing here calls the algebra engine.
 */
struct ExpectedValue {
    std::string quantity; // im | reg_base | reg_power | reg_symbolic | reg_general | reg_disjoint
    std::size_t n = 0, a = 0, t = 0;
    long value = 0;
    std::string formula_case;
};

namespace detail {

inline void require_connected_small(const char* who, std::size_t n, std::size_t a) {
    if (a != 1 && a != 2)
        throw argument_error(std::string(who) + ": a must be 1 or 2");
    if (a >= n)
        throw argument_error(std::string(who) + ": need a < n");
    if (a == 2 && n % 2 == 0)
        throw argument_error(std::string(who) + ": C_{2n}(2,n) is disconnected for even n");
}

} // namespace detail

inline ExpectedValue expected_im(std::size_t n) {
    if (n < 2)
        throw argument_error("expected_im: n must be at least 2");
    return {"im", n, 0, 0, static_cast<long>(n / 2), "floor(n/2)"};
}

/// reg I(C_{2n}(a, n)) for a connected graph with a in {1, 2}.
inline ExpectedValue expected_reg_base(std::size_t n, std::size_t a) {
    detail::require_connected_small("expected_reg_base", n, a);
    const long im = static_cast<long>(n / 2);
    ExpectedValue v{"reg_base", n, a, 1, im + 1, "im+1"};
    if (n >= 5 && ((a == 1 && n % 4 == 1) || (a == 2 && n % 4 == 3))) {
        v.value = im + 2;
        v.formula_case = a == 1 ? "im+2 (a=1, n=1 mod 4)" : "im+2 (a=2, n=3 mod 4)";
    }
    return v;
}

/// reg I(G)^t = 2t - 1 + floor(n/2) for t >= 2.
inline ExpectedValue expected_reg_power(std::size_t n, std::size_t a, std::size_t t) {
    detail::require_connected_small("expected_reg_power", n, a);
    if (t < 2)
        throw argument_error("expected_reg_power: t must be at least 2 (use expected_reg_base)");
    return {"reg_power", n, a, t, static_cast<long>(2 * t - 1 + n / 2), "2t-1+im"};
}

inline ExpectedValue expected_reg_symbolic(std::size_t n, std::size_t a, std::size_t t) {
    auto v = expected_reg_power(n, a, t);
    v.quantity = "reg_symbolic";
    return v;
}

/// reg I(C_{2n}(a, n))^t for any 1 <= a < n, t >= 2, via d = gcd(a, 2n).
inline ExpectedValue expected_reg_general(std::size_t n, std::size_t a, std::size_t t) {
    if (a < 1 || a >= n)
        throw argument_error("expected_reg_general: need 1 <= a < n");
    if (t < 2)
        throw argument_error("expected_reg_general: t must be at least 2");
    const long d = static_cast<long>(std::gcd(a, 2 * n));
    const long nn = static_cast<long>(n), tt = static_cast<long>(t);
    const long q = 2 * nn / d;
    ExpectedValue v{"reg_general", n, a, t, 0, ""};
    if (q % 2 == 0) {
        const long base = d * (nn / (2 * d));
        if ((nn / d) % 4 != 1) {
            v.value = base + 2 * tt - 1;
            v.formula_case = "2n/d even, n/d != 1 mod 4: d*floor(n/2d)+2t-1";
        } else {
            v.value = base + d + 2 * tt - 2;
            v.formula_case = "2n/d even, n/d = 1 mod 4: d*floor(n/2d)+d+2t-2";
        }
    } else if (q == 3) {
        v.value = d / 2 + 2 * tt - 1;
        v.formula_case = "2n/d = 3: d/2+2t-1";
    } else {
        const long base = (d / 2) * (nn / d);
        if (q % 4 != 3) {
            v.value = base + 2 * tt - 1;
            v.formula_case = "2n/d odd, != 3 mod 4: (d/2)*floor(n/d)+2t-1";
        } else {
            v.value = base + d / 2 + 2 * tt - 2;
            v.formula_case = "2n/d odd, = 3 mod 4, != 3: (d/2)*floor(n/d)+d/2+2t-2";
        }
    }
    return v;
}

/**
 * reg of the t-th (symbolic) power of k disjoint copies of C_{2n}(a, n),
 * from the predicted base regularity r of one copy: k*r - k + 2t - 1 when
 * r = im + 1, k*r - k + 2t - 2 when r = im + 2.
 */
inline ExpectedValue expected_reg_disjoint(std::size_t k, std::size_t n, std::size_t a, std::size_t t) {
    if (k < 1)
        throw argument_error("expected_reg_disjoint: k must be at least 1");
    if (t < 2)
        throw argument_error("expected_reg_disjoint: t must be at least 2");
    const auto base = expected_reg_base(n, a);
    const long kk = static_cast<long>(k), tt = static_cast<long>(t);
    const long im = static_cast<long>(n / 2);
    ExpectedValue v{"reg_disjoint", n, a, t, 0, ""};
    if (base.value == im + 1) {
        v.value = kk * base.value - kk + 2 * tt - 1;
        v.formula_case = "reg(G1)=im+1: k*reg(G1)-k+2t-1";
    } else {
        v.value = kk * base.value - kk + 2 * tt - 2;
        v.formula_case = "reg(G1)=im+2: k*reg(G1)-k+2t-2";
    }
    return v;
}

} // namespace circreg
