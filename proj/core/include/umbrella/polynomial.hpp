#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umbrella/rational.hpp"

namespace umbrella {

/// Dense univariate polynomial with rational coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);  // coeffs[i] * y^i
    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(const Rational& c) { return UniPoly({c}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : Rational(); }
    Rational leading() const { return c_.empty() ? Rational() : c_.back(); }

    Rational eval(const Rational& y) const;
    double eval(double y) const;
    UniPoly derivative() const;
    std::string to_string() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rational& c, const UniPoly& a);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
    static UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic
    UniPoly square_free_part() const;

private:
    std::vector<Rational> c_;
    void normalize();
};

/// Isolating interval for one real root. For rational roots lo == hi.
struct RootInterval {
    Rational lo, hi;       // f has exactly one root in [lo, hi]
    double approx = 0.0;   // bisection-refined estimate
    bool simple = true;    // multiplicity 1 in the original polynomial
};

/// Sturm chain of the square-free part; counts distinct real roots.
class SturmChain {
public:
    explicit SturmChain(const UniPoly& p);
    int sign_changes(const Rational& x) const;
    /// Number of distinct roots in (lo, hi].
    int count_roots(const Rational& lo, const Rational& hi) const;
    int count_all_roots() const;
    const Rational& cauchy_bound() const { return bound_; }

private:
    std::vector<UniPoly> seq_;
    Rational bound_;
};

/// Sturm isolation plus bisection refinement of every distinct real root.
/// Intervals are refined to width <= width_target. Throws on the zero
/// polynomial.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p,
                                             const Rational& width_target = Rational::of(1, 1000000000000LL));

/// Exact sign of q at the algebraic root of f described by r:
/// -1, 0, or +1. f must be nonzero and r an isolating interval for it.
int sign_at_root(const UniPoly& q, const UniPoly& f, const RootInterval& r);

/// Element a + b*sqrt(D) of a real quadratic extension, D > 0 rational.
struct QuadExt {
    Rational a, b, D;

    QuadExt(Rational a_, Rational b_, Rational D_) : a(std::move(a_)), b(std::move(b_)), D(std::move(D_)) {}
    double to_double() const;
    int sign() const;
    friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator*(const Rational& c, const QuadExt& x);
    QuadExt conjugate() const { return QuadExt(a, -b, D); }
};

}  // namespace umbrella
