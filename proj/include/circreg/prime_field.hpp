#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace circreg {

inline bool is_prime(std::uint64_t p) {
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

/// Arithmetic in Z/pZ for a prime p < 2^31.
class PrimeField {
  public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (p >= (1U << 31) || !is_prime(p))
            throw argument_error("PrimeField: " + std::to_string(p) + " is not a prime below 2^31");
    }

    std::uint32_t characteristic() const noexcept { return p_; }

    std::uint32_t reduce(std::int64_t x) const noexcept {
        auto r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0)
            throw argument_error("PrimeField: inverse of zero");
        // a^(p-2)
        std::uint32_t result = 1, base = a;
        for (std::uint32_t e = p_ - 2; e; e >>= 1) {
            if (e & 1U)
                result = mul(result, base);
            base = mul(base, base);
        }
        return result;
    }

  private:
    std::uint32_t p_;
};

/**
 * Incremental row echelon form over Z/pZ.
 *
 * Vectors are inserted one at a time and reduced against the stored pivot
 * rows; the number of rows kept is the rank of everything inserted.
 */
class EchelonBasis {
  public:
    EchelonBasis(const PrimeField& field, std::size_t width)
        : field_(field), width_(width), pivot_row_(width, kNone) {}

    /// Inserts `v` (entries already reduced mod p); returns true if it raised the rank.
    bool insert(std::vector<std::uint32_t> v) {
        for (std::size_t c = 0; c < width_; ++c) {
            if (v[c] == 0)
                continue;
            if (pivot_row_[c] == kNone) {
                const std::uint32_t s = field_.inv(v[c]);
                for (std::size_t k = c; k < width_; ++k)
                    v[k] = field_.mul(v[k], s);
                pivot_row_[c] = rows_.size();
                rows_.push_back(std::move(v));
                return true;
            }
            const auto& row = rows_[pivot_row_[c]];
            const std::uint32_t f = v[c];
            for (std::size_t k = c; k < width_; ++k)
                if (row[k] != 0)
                    v[k] = field_.sub(v[k], field_.mul(f, row[k]));
        }
        return false;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

  private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    PrimeField field_;
    std::size_t width_;
    std::vector<std::size_t> pivot_row_;
    std::vector<std::vector<std::uint32_t>> rows_;
};

/**
 * Echelon form over Z/pZ on sparse vectors, sorted (index, value) pairs.
 * Boundary matrices of simplicial complexes have few entries per column,
 * so reducing by merges beats dense rows for wide matrices.
 */
class SparseEchelonBasis {
  public:
    using entry = std::pair<std::uint32_t, std::uint32_t>;

    SparseEchelonBasis(const PrimeField& field, std::size_t width) : field_(field), pivot_row_(width, kNone) {}

    bool insert(std::vector<entry> v) {
        std::vector<entry> scratch;
        while (!v.empty()) {
            const auto [c, x] = v.front();
            if (pivot_row_[c] == kNone) {
                const std::uint32_t s = field_.inv(x);
                for (auto& e : v)
                    e.second = field_.mul(e.second, s);
                pivot_row_[c] = rows_.size();
                rows_.push_back(std::move(v));
                return true;
            }
            // v -= x * row, where row has a leading 1 at c
            const auto& row = rows_[pivot_row_[c]];
            scratch.clear();
            std::size_t i = 0, j = 0;
            while (i < v.size() || j < row.size()) {
                if (j == row.size() || (i < v.size() && v[i].first < row[j].first)) {
                    scratch.push_back(v[i++]);
                } else if (i == v.size() || row[j].first < v[i].first) {
                    scratch.emplace_back(row[j].first, field_.sub(0, field_.mul(x, row[j].second)));
                    ++j;
                } else {
                    const std::uint32_t y = field_.sub(v[i].second, field_.mul(x, row[j].second));
                    if (y != 0)
                        scratch.emplace_back(v[i].first, y);
                    ++i;
                    ++j;
                }
            }
            std::swap(v, scratch);
        }
        return false;
    }

    std::size_t rank() const noexcept { return rows_.size(); }

  private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    PrimeField field_;
    std::vector<std::size_t> pivot_row_;
    std::vector<std::vector<entry>> rows_;
};

/// Same as EchelonBasis for p = 2, with 64 entries per word.
class EchelonBasisF2 {
  public:
    explicit EchelonBasisF2(std::size_t width) : words_((width + 63) / 64), pivot_row_(width, kNone) {}

    std::size_t word_count() const noexcept { return words_; }

    /// Reduces `v` in place; stores it and returns true if it raised the rank.
    bool insert(std::span<std::uint64_t> v) {
        for (std::size_t w = 0; w < words_; ++w) {
            while (v[w] != 0) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
                if (pivot_row_[c] == kNone) {
                    pivot_row_[c] = rank_++;
                    storage_.insert(storage_.end(), v.begin(), v.end());
                    return true;
                }
                const std::uint64_t* row = storage_.data() + pivot_row_[c] * words_;
                for (std::size_t k = w; k < words_; ++k)
                    v[k] ^= row[k];
            }
        }
        return false;
    }

    std::size_t rank() const noexcept { return rank_; }

  private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t words_;
    std::size_t rank_ = 0;
    std::vector<std::size_t> pivot_row_;
    std::vector<std::uint64_t> storage_; // pivot rows, words_ entries each
};

/// Rank of a sparse matrix given as columns of (row, value) entries, over Z/pZ.
inline std::size_t rank_mod_p(std::uint32_t p, std::size_t n_rows,
                              const std::vector<std::vector<std::pair<std::size_t, std::int64_t>>>& columns) {
    if (p == 2) {
        EchelonBasisF2 basis(n_rows);
        for (const auto& col : columns) {
            std::vector<std::uint64_t> v(basis.word_count(), 0);
            for (auto [r, x] : col)
                if (x % 2 != 0)
                    v[r / 64] ^= std::uint64_t{1} << (r % 64);
            basis.insert(v);
            if (basis.rank() == n_rows)
                break;
        }
        return basis.rank();
    }
    const PrimeField field(p);
    EchelonBasis basis(field, n_rows);
    for (const auto& col : columns) {
        std::vector<std::uint32_t> v(n_rows, 0);
        for (auto [r, x] : col)
            v[r] = field.add(v[r], field.reduce(x));
        basis.insert(std::move(v));
        if (basis.rank() == n_rows)
            break;
    }
    return basis.rank();
}

} // namespace circreg
