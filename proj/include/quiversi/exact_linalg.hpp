#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "quiversi/errors.hpp"
#include "quiversi/numeric.hpp"

namespace quiversi {

/// Dense exact-rational matrix, row-major. Entries are kept canonical
/// (lowest terms, positive denominator) by mpq arithmetic.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}

    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw ShapeError("entry count does not match matrix shape");
        for (Rat& e : entries_) e.canonicalize();
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    const std::vector<Rat>& entries() const { return entries_; }

    bool is_integer() const {
        for (const Rat& e : entries_)
            if (e.get_den() != 1) return false;
        return true;
    }

    bool is_zero() const {
        for (const Rat& e : entries_)
            if (e != 0) return false;
        return true;
    }

    RationalMatrix operator*(const RationalMatrix& rhs) const {
        if (cols_ != rhs.rows_) throw ShapeError("inner dimensions do not match");
        RationalMatrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& aik = at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j)
                    out.at(i, j) += aik * rhs.at(k, j);
            }
        return out;
    }

    bool operator==(const RationalMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> entries_;
};

using IntVector = std::vector<Int>;

namespace detail {

inline Int exact_div(const Int& num, const Int& den) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw Error("internal: fraction-free elimination produced a non-exact division");
    return q;
}

/// Bareiss one-step fraction-free elimination. Destroys `a` (row-major,
/// n x n). Integer arithmetic throughout; every division is exact.
inline Int det_bareiss(std::vector<Int>& a, std::size_t n) {
    if (n == 0) return Int(1);
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p * n + k] == 0) ++p;
            if (p == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i * n + j] =
                    exact_div(a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j], prev);
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    return sign > 0 ? a[n * n - 1] : Int(-a[n * n - 1]);
}

/// Scale every row to integers; returns the cleared matrix and the product
/// of the row scaling factors (all positive).
inline std::pair<std::vector<Int>, Int> clear_denominators(const RationalMatrix& m) {
    std::vector<Int> cleared(m.rows() * m.cols());
    Int scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat scaled = m.at(i, j) * Rat(l);
            cleared[i * m.cols() + j] = scaled.get_num();  // denominator is 1
        }
        scale *= l;
    }
    return {std::move(cleared), std::move(scale)};
}

}  // namespace detail

/// Exact determinant via fraction-free (Bareiss) elimination after clearing
/// row denominators. det of the empty 0x0 matrix is 1.
inline Rat det(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw NotSquareError("determinant of a non-square matrix");
    auto [cleared, scale] = detail::clear_denominators(m);
    Int d = detail::det_bareiss(cleared, m.rows());
    Rat out(std::move(d), std::move(scale));
    out.canonicalize();
    return out;
}

/// Exact rank over the rationals (fraction-free echelon with row pivoting;
/// rank-deficient columns are skipped).
inline std::size_t rank(const RationalMatrix& m) {
    auto [a, scale] = detail::clear_denominators(m);
    (void)scale;  // row scaling does not change the rank
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && a[p * cols + col] == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[p * cols + j]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                a[i * cols + j] = detail::exact_div(
                    a[i * cols + j] * a[r * cols + col] - a[i * cols + col] * a[r * cols + j],
                    prev);
            a[i * cols + col] = 0;
        }
        prev = a[r * cols + col];
        ++r;
    }
    return r;
}

struct MinorKernelResult {
    IntVector u;          // signed maximal minors; M . u = 0 always
    bool rank_deficient;  // true iff u == 0, i.e. rank(M) < n-1
};

/// The signed-maximal-minor kernel vector of an (n-1) x n integer matrix:
/// u_i = (-1)^i det(M with column i removed), i = 1..n. Nonzero exactly
/// when the rows are linearly independent.
inline MinorKernelResult minor_kernel(const RationalMatrix& m) {
    if (m.cols() != m.rows() + 1)
        throw ShapeError("minor_kernel needs exactly one more column than rows");
    if (!m.is_integer()) throw ShapeError("minor_kernel requires integer entries");
    const std::size_t n = m.cols();
    MinorKernelResult result{IntVector(n), true};
    for (std::size_t drop = 0; drop < n; ++drop) {
        std::vector<Int> minor((n - 1) * (n - 1));
        for (std::size_t i = 0; i + 1 < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == drop) continue;
                minor[i * (n - 1) + jj++] = m.at(i, j).get_num();
            }
        }
        Int d = detail::det_bareiss(minor, n - 1);
        result.u[drop] = (drop % 2 == 0) ? -d : d;  // (-1)^i with i = drop+1
        if (d != 0) result.rank_deficient = false;
    }
    return result;
}

/// Divide by the gcd of the entries and normalize the sign so the first
/// nonzero entry is negative.
inline IntVector primitive(IntVector u) {
    Int g = 0;
    for (const Int& x : u) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) throw ZeroVectorError("primitive of the zero vector");
    for (Int& x : u) x = detail::exact_div(x, g);
    for (const Int& x : u) {
        if (x == 0) continue;
        if (x > 0)
            for (Int& y : u) y = -y;
        break;
    }
    return u;
}

}  // namespace quiversi
