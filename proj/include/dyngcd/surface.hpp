#ifndef DYNGCD_SURFACE_HPP
#define DYNGCD_SURFACE_HPP

#include <string>
#include <vector>

#include "dyngcd/bivariate.hpp"
#include "dyngcd/exact_arith.hpp"

namespace dyngcd {

/* Class  pi^*(type (a,b)) - sum m_i Y_i  on the blowup of P^1 x P^1 at s
 * points.  `mults` stores the subtracted coefficients m_i, so the strict
 * transform of a curve of type (a,b) with multiplicities mu_i is (a, b; mu)
 * and the exceptional curve Y_i is (0, 0; -e_i). */
struct DivisorClass {
    Rational a;
    Rational b;
    std::vector<Rational> mults;

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    std::string to_string() const;
};

/// Throws DomainError on mismatched s.
DivisorClass operator+(const DivisorClass& d1, const DivisorClass& d2);
DivisorClass operator*(const Rational& c, const DivisorClass& d);

class BlowupSurface {
  public:
    /// Throws DomainError on s < 0.
    explicit BlowupSurface(int s);
    int s() const { return s_; }

    DivisorClass pullback(const Rational& a, const Rational& b) const;
    /// Y_i, 0-based.
    DivisorClass exceptional_curve(int i) const;
    /// Strict transform of a type-(a,b) curve with the given multiplicities.
    DivisorClass strict_transform(const Rational& a, const Rational& b, const std::vector<Rational>& mu) const;

  private:
    int s_;
};

/// a1 b2 + a2 b1 - sum m_i m'_i.  Throws DomainError on mismatched s.
Rational intersect(const BlowupSurface& x, const DivisorClass& d1, const DivisorClass& d2);
/// pi^*K + Y_1 + ... + Y_s with K of type (-2,-2); stored as (-2, -2; -1, ..., -1).
DivisorClass canonical_class(const BlowupSurface& x);
/// pi^*(1,1) - (1/N)(Y_1 + ... + Y_s).  Throws DomainError on N < 1.
DivisorClass perturbed_ample(const BlowupSurface& x, long n);

/* Which of the three checks of the ampleness argument decides the answer.
 * For the curve check, the case is the type total t = a + b with the
 * extremal multiplicity per point. */
struct AmpleWitness {
    enum class Kind { Curve, Exceptional, SelfIntersection } kind = Kind::Curve;
    Rational value;          // the minimal intersection number found
    int curve_total = 0;     // a + b for Kind::Curve
    int point_mult = 0;      // mu_i at each point for Kind::Curve
    std::string describe() const;
};

struct AmpleResult {
    bool ample = false;
    AmpleWitness witness;
    Rational self_intersection;
    Rational exceptional_pairing;
    Rational curve_minimum;
};

/* Positivity over exactly the families of the ampleness argument:
 *   strict transforms of irreducible type-(a,b) curves, where a point of a
 *   curve with a + b >= 2 has multiplicity at most a + b - 1 (a line, a+b = 1,
 *   passes with multiplicity at most 1);
 *   the exceptional curves;
 *   the self-intersection.
 * Over the curves, A.C = t - (1/N) sum mu_i is minimized in closed form by
 * taking every mu_i at its cap, which is affine in t; the minimum over t >= 1
 * is at t = 1 or t = 2 when s <= N, and tends to -infinity otherwise (the
 * first negative t is reported). */
AmpleResult is_ample_lemma(const BlowupSurface& x, long n);

/// Least total degree of a nonzero homogeneous part of F(x + px, y + py).
/// Throws DomainError on F = 0.
int curve_multiplicity_at(const BivariatePolynomial& f, const Rational& px, const Rational& py);

}  // namespace dyngcd

#endif
