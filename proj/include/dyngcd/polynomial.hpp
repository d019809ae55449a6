#ifndef DYNGCD_POLYNOMIAL_HPP
#define DYNGCD_POLYNOMIAL_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "dyngcd/exact_arith.hpp"

namespace dyngcd {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/* Univariate polynomial over Q, coefficients in ascending degree.  Always
 * stored trimmed: the last coefficient is nonzero unless the polynomial is
 * zero (empty vector). */
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}

    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, std::size_t k);
    static Polynomial x() { return monomial(1, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    /// Coefficient of x^k, zero past the degree.
    Rational coeff(std::size_t k) const;
    /// Throws DomainError on the zero polynomial.
    const Rational& leading() const;

    Rational operator()(const Rational& x) const;
    Polynomial derivative() const;
    /// Divide by the leading coefficient.  Zero stays zero.
    Polynomial monic() const;
    /// p(inner(x)).
    Polynomial compose(const Polynomial& inner) const;

    bool has_integer_coeffs() const;
    /// Scale to integer coefficients with gcd 1 and positive leading term.
    Polynomial primitive() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& s);
    Polynomial operator-() const;
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// Human-readable form such as "x^3 + x" or "-1/2*x + 3".
    std::string to_string(const std::string& var = "x") const;

  private:
    void trim();
    std::vector<Rational> c_;
};

Polynomial pow(const Polynomial& p, unsigned k);

/// Quotient and remainder; throws DomainError when dividing by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd over Q; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Squarefree factors s_1, ..., s_k (monic, pairwise coprime) with
/// p = lc(p) * prod s_i^i.  Trailing entries may be 1 for skipped exponents.
std::vector<Polynomial> squarefree_decomposition(const Polynomial& p);

/// Largest root multiplicity over the algebraic closure; 0 for constants.
int max_root_multiplicity(const Polynomial& p);

/// Monic squarefree part p / gcd(p, p').  DomainError on zero.
Polynomial radical(const Polynomial& p);

/// Largest m with (x - q)^m | p.  DomainError on zero.
int multiplicity_at(const Polynomial& p, const Rational& q);

/// Rational roots of p (distinct, increasing).  DomainError on zero.
std::vector<Rational> rational_roots(const Polynomial& p);

}  // namespace dyngcd

#endif
