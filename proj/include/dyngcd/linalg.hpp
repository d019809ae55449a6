#ifndef DYNGCD_LINALG_HPP
#define DYNGCD_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dyngcd/exact_arith.hpp"

namespace dyngcd {

/// Dense row-major matrix over Q.
class RationalMatrix {
  public:
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

/// Unique solution of A x = b for square nonsingular A; nullopt if singular.
std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b);

/// Basis of the right kernel {x : A x = 0}, one vector per free column of
/// the reduced row echelon form (free entry set to 1).
std::vector<std::vector<Rational>> kernel(RationalMatrix a);

/// Rank of a matrix over Z/pZ, p prime below 2^63.  Entries already reduced.
std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);

/// Modular helpers for p < 2^63.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

}  // namespace dyngcd

#endif
