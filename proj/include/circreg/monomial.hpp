#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace circreg {

/// Upper bound on the ambient variable count. Exponent storage is a fixed
/// array so that the hot loops (divisibility, lcm) have a constant trip count.
inline constexpr std::size_t kMaxVars = 32;

/// Largest exponent a single variable may carry.
inline constexpr unsigned kMaxExponent = 255;

/**
 * A monomial x^a in a polynomial ring with a fixed number of variables.
 *
 * Exponents beyond n_vars() are kept at zero, so two monomials over the
 * same ring compare and hash by their full storage.
 */
class Monomial {
  public:
    using exponent_type = std::uint8_t;
    using storage_type = std::array<exponent_type, kMaxVars>;

    Monomial() = default;

    /// The constant monomial 1 in `n_vars` variables.
    explicit Monomial(std::size_t n_vars) : n_vars_(checked_size(n_vars)) {}

    Monomial(std::size_t n_vars, std::span<const int> exponents) : n_vars_(checked_size(n_vars)) {
        if (exponents.size() != n_vars)
            throw dimension_error("Monomial: exponent vector length " + std::to_string(exponents.size()) +
                                  " != n_vars " + std::to_string(n_vars));
        for (std::size_t i = 0; i < n_vars; ++i) {
            const int e = exponents[i];
            if (e < 0)
                throw argument_error("Monomial: negative exponent");
            if (static_cast<unsigned>(e) > kMaxExponent)
                throw capacity_error("Monomial: exponent exceeds storage");
            exp_[i] = static_cast<exponent_type>(e);
            degree_ += static_cast<unsigned>(e);
        }
    }

    Monomial(std::initializer_list<int> exponents)
        : Monomial(exponents.size(), std::span<const int>(exponents.begin(), exponents.size())) {}

    static Monomial one(std::size_t n_vars) { return Monomial(n_vars); }

    static Monomial from_vector(const std::vector<int>& exponents) {
        return Monomial(exponents.size(), std::span<const int>(exponents));
    }

    /// x_i in `n_vars` variables.
    static Monomial variable(std::size_t n_vars, std::size_t i, unsigned power = 1) {
        Monomial m(n_vars);
        m.check_index(i);
        m.set(i, power);
        return m;
    }

    /// Squarefree product of the variables whose bits are set in `mask`.
    static Monomial squarefree(std::size_t n_vars, std::uint64_t mask) {
        Monomial m(n_vars);
        for (std::size_t i = 0; i < n_vars; ++i)
            if ((mask >> i) & 1U)
                m.set(i, 1);
        return m;
    }

    std::size_t n_vars() const noexcept { return n_vars_; }
    unsigned degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    unsigned operator[](std::size_t i) const noexcept { return exp_[i]; }
    const storage_type& storage() const noexcept { return exp_; }

    std::vector<int> exponents() const { return {exp_.begin(), exp_.begin() + static_cast<std::ptrdiff_t>(n_vars_)}; }

    /// Bitmask of the variables with positive exponent.
    std::uint64_t support() const noexcept {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < n_vars_; ++i)
            if (exp_[i] != 0)
                s |= std::uint64_t{1} << i;
        return s;
    }

    bool is_squarefree() const noexcept {
        return std::all_of(exp_.begin(), exp_.end(), [](exponent_type e) { return e <= 1; });
    }

    void set(std::size_t i, unsigned e) {
        check_index(i);
        if (e > kMaxExponent)
            throw capacity_error("Monomial: exponent exceeds storage");
        degree_ = degree_ - exp_[i] + e;
        exp_[i] = static_cast<exponent_type>(e);
    }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.n_vars_ == b.n_vars_ && a.exp_ == b.exp_;
    }

    /// Canonical order: total degree, then lexicographic on exponents.
    friend bool operator<(const Monomial& a, const Monomial& b) noexcept {
        if (a.degree_ != b.degree_)
            return a.degree_ < b.degree_;
        return a.exp_ > b.exp_;
    }

    std::string to_string() const;

  private:
    static std::uint8_t checked_size(std::size_t n) {
        if (n > kMaxVars)
            throw capacity_error("Monomial: at most " + std::to_string(kMaxVars) + " variables supported");
        return static_cast<std::uint8_t>(n);
    }
    void check_index(std::size_t i) const {
        if (i >= n_vars_)
            throw dimension_error("Monomial: variable index out of range");
    }

    storage_type exp_{};
    std::uint16_t degree_ = 0;
    std::uint8_t n_vars_ = 0;
};

inline void require_same_ring(const Monomial& a, const Monomial& b) {
    if (a.n_vars() != b.n_vars())
        throw dimension_error("monomials over " + std::to_string(a.n_vars()) + " and " +
                              std::to_string(b.n_vars()) + " variables");
}

namespace detail {

inline bool divides_unchecked(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree() > b.degree())
        return false;
    const auto& x = a.storage();
    const auto& y = b.storage();
    bool ok = true;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        ok &= x[i] <= y[i];
    return ok;
}

template <class Op>
Monomial zip(const Monomial& a, const Monomial& b, Op op) {
    Monomial out(a.n_vars());
    for (std::size_t i = 0; i < a.n_vars(); ++i)
        out.set(i, op(a[i], b[i]));
    return out;
}

} // namespace detail

/// a | b, i.e. every exponent of a is at most the matching exponent of b.
inline bool divides(const Monomial& a, const Monomial& b) {
    require_same_ring(a, b);
    return detail::divides_unchecked(a, b);
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    require_same_ring(a, b);
    return detail::zip(a, b, [](unsigned x, unsigned y) { return std::max(x, y); });
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
    require_same_ring(a, b);
    return detail::zip(a, b, [](unsigned x, unsigned y) { return std::min(x, y); });
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    require_same_ring(a, b);
    return detail::zip(a, b, [](unsigned x, unsigned y) { return x + y; });
}

/// m / gcd(m, d): exponents max(m_i - d_i, 0).
inline Monomial colon_mono(const Monomial& m, const Monomial& d) {
    require_same_ring(m, d);
    return detail::zip(m, d, [](unsigned x, unsigned y) { return x > y ? x - y : 0U; });
}

/// Exact quotient a / b; b must divide a.
inline Monomial quotient(const Monomial& a, const Monomial& b) {
    if (!divides(b, a))
        throw argument_error("quotient: divisor does not divide dividend");
    return colon_mono(a, b);
}

/// Clamp every exponent to at most one.
inline Monomial squarefree_part(const Monomial& m) { return Monomial::squarefree(m.n_vars(), m.support()); }

inline std::string Monomial::to_string() const {
    if (is_one())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < n_vars_; ++i) {
        if (exp_[i] == 0)
            continue;
        s += "x" + std::to_string(i);
        if (exp_[i] > 1)
            s += "^" + std::to_string(exp_[i]);
    }
    return s;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        // FNV-1a over the used prefix.
        std::uint64_t h = 1469598103934665603ULL ^ m.n_vars();
        for (std::size_t i = 0; i < m.n_vars(); ++i) {
            h ^= m[i];
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace circreg
