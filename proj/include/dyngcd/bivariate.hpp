#ifndef DYNGCD_BIVARIATE_HPP
#define DYNGCD_BIVARIATE_HPP

#include <map>
#include <string>
#include <utility>

#include "dyngcd/exact_arith.hpp"

namespace dyngcd {

/// Sparse polynomial in x, y over Q.  No zero coefficients are stored.
class BivariatePolynomial {
  public:
    using Exponent = std::pair<int, int>;

    BivariatePolynomial() = default;
    explicit BivariatePolynomial(std::map<Exponent, Rational> terms);
    static BivariatePolynomial x();
    static BivariatePolynomial y();
    static BivariatePolynomial constant(const Rational& c);

    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int i, int j) const;
    /// -1 for the zero polynomial.
    int total_degree() const;
    Rational operator()(const Rational& x, const Rational& y) const;
    /// F(x + dx, y + dy).
    BivariatePolynomial translate(const Rational& dx, const Rational& dy) const;
    /// Integer coefficients, content 1, leading term (in exponent order) positive.
    BivariatePolynomial primitive() const;

    BivariatePolynomial& operator+=(const BivariatePolynomial& rhs);
    BivariatePolynomial& operator*=(const BivariatePolynomial& rhs);
    friend BivariatePolynomial operator+(BivariatePolynomial a, const BivariatePolynomial& b) { return a += b; }
    friend BivariatePolynomial operator*(BivariatePolynomial a, const BivariatePolynomial& b) { return a *= b; }
    friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b);
    friend BivariatePolynomial operator*(const Rational& c, const BivariatePolynomial& p);
    friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

    /// e.g. "x^2 - y^3".
    std::string to_string() const;

  private:
    std::map<Exponent, Rational> terms_;
};

BivariatePolynomial pow(const BivariatePolynomial& p, unsigned k);

}  // namespace dyngcd

#endif
