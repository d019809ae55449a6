#ifndef DYNGCD_RATIONAL_MAP_HPP
#define DYNGCD_RATIONAL_MAP_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dyngcd/exact_arith.hpp"
#include "dyngcd/polynomial.hpp"

namespace dyngcd {

/// A point of P^1(Q): an affine rational or infinity.
class ProjPoint {
  public:
    ProjPoint() : ProjPoint(Rational(0)) {}
    ProjPoint(const Rational& v) : x_(v.get_num()), y_(v.get_den()) {}  // NOLINT: implicit on purpose
    ProjPoint(long v) : ProjPoint(Rational(v)) {}                        // NOLINT
    static ProjPoint infinity() { return ProjPoint(Integer(1), Integer(0)); }
    /// [x : y] with (x, y) != (0, 0); normalized to coprime with y >= 0.
    static ProjPoint from_homogeneous(Integer x, Integer y);
    /// "inf", "infinity" or a rational "p/q".
    static ProjPoint parse(std::string_view text);

    bool is_infinity() const { return y_ == 0; }
    /// Affine value; throws DomainError at infinity.
    Rational value() const;
    /// Coprime integer coordinates (x, y), y >= 0, infinity = (1, 0).
    const Integer& hx() const { return x_; }
    const Integer& hy() const { return y_; }

    std::string to_string() const;
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b)
    {
        return a.y_ != b.y_ ? a.y_ < b.y_ : a.x_ < b.x_;
    }

  private:
    ProjPoint(Integer x, Integer y) : x_(std::move(x)), y_(std::move(y)) {}
    Integer x_, y_;
};

/* A rational self-map num/den of P^1 over Q.  Stored canonically: num and
 * den coprime, integer coefficients with overall content 1, leading
 * coefficient of den positive.  Degree = max(deg num, deg den) >= 1. */
class RationalMap {
  public:
    /// Normalizes; throws DomainError when den == 0 or the map is constant.
    RationalMap(const Polynomial& num, const Polynomial& den);
    /// A polynomial map p(x) = p / 1.
    explicit RationalMap(const Polynomial& p) : RationalMap(p, Polynomial::constant(1)) {}

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }
    bool is_polynomial() const { return den_.is_constant(); }
    /// Polynomial with integer coefficients (den == 1).
    bool is_integral_polynomial() const;
    /// num / den as a polynomial; DomainError unless is_polynomial().
    Polynomial as_polynomial() const;

    std::string to_string() const;
    friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  private:
    Polynomial num_, den_;
};

/// sigma(x) = (p x + q) / (r x + s) with p s - q r != 0.
class Mobius {
  public:
    Mobius(Rational p, Rational q, Rational r, Rational s);
    static Mobius identity() { return {1, 0, 0, 1}; }
    static Mobius translation(const Rational& c) { return {1, c, 0, 1}; }
    static Mobius dilation(const Rational& c) { return {c, 0, 0, 1}; }
    static Mobius inversion() { return {0, 1, 1, 0}; }
    /// "p,q,r,s", or one of "id", "1/x", "x+c", "c*x".
    static Mobius parse(std::string_view text);

    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }
    const Rational& r() const { return r_; }
    const Rational& s() const { return s_; }
    Rational determinant() const { return p_ * s_ - q_ * r_; }

    ProjPoint operator()(const ProjPoint& pt) const;
    Mobius inverse() const;
    /// (*this) o inner
    Mobius after(const Mobius& inner) const;
    RationalMap as_map() const;
    std::string to_string() const;

  private:
    Rational p_, q_, r_, s_;
};

struct OrbitBudget {
    /// Cap on the total number of decimal digits held by an orbit.
    std::size_t max_total_digits = 10'000'000;
};

struct SymbolicBudget {
    /// Cap on the degree of symbolically composed maps.
    int max_degree = 4096;
};

/// Projective evaluation of f at P; exact, in lowest terms.
ProjPoint evaluate(const RationalMap& f, const ProjPoint& pt);

/// [P, f(P), ..., f^n(P)] by repeated evaluation.  Throws BudgetExceeded
/// (reached = digits held) if the orbit outgrows the digit budget.
std::vector<ProjPoint> iterate(const RationalMap& f, const ProjPoint& pt, std::size_t n, const OrbitBudget& budget = {});

/// outer o inner in lowest terms.
RationalMap compose(const RationalMap& outer, const RationalMap& inner, const SymbolicBudget& budget = {});

/// f o ... o f (D times), D >= 1.
RationalMap self_compose(const RationalMap& f, int depth, const SymbolicBudget& budget = {});

/// sigma o f o sigma^{-1}.
RationalMap conjugate(const RationalMap& f, const Mobius& sigma);

/// Homogeneous lift:  sum_i c_i x^i y^(deg - i) for integer-coefficient p.
Integer eval_homogeneous(const Polynomial& p, int deg, const Integer& x, const Integer& y);

/// Digits of a projective point: digits(x) + digits(y).
std::size_t point_digits(const ProjPoint& pt);

}  // namespace dyngcd

#endif
