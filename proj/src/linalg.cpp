#include "dyngcd/linalg.hpp"

#include <utility>

namespace dyngcd {

namespace {

/* In-place reduced row echelon form; returns pivot column per pivot row. */
std::vector<std::size_t> rref(RationalMatrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
        const Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DomainError("solve: dimension mismatch");
    RationalMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

std::vector<std::vector<Rational>> kernel(RationalMatrix a)
{
    auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(a.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p)
{
    if (a % p == 0) throw DomainError("inverse of zero modulo p");
    return pow_mod(a, p - 2, p);
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p)
{
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[sel], rows[rank]);
        const std::uint64_t inv = inv_mod(rows[rank][col], p);
        for (std::size_t j = col; j < cols; ++j) rows[rank][j] = mul_mod(rows[rank][j], inv, p);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            const std::uint64_t f = rows[i][col];
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j) {
                const std::uint64_t t = mul_mod(f, rows[rank][j], p);
                rows[i][j] = rows[i][j] >= t ? rows[i][j] - t : rows[i][j] + p - t;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace dyngcd
