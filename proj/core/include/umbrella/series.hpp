#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "umbrella/matrix.hpp"
#include "umbrella/rational.hpp"

namespace umbrella {

struct Exp2 {
    int q1 = 0, q2 = 0;
    int total() const { return q1 + q2; }
    friend bool operator==(Exp2 a, Exp2 b) { return a.q1 == b.q1 && a.q2 == b.q2; }
    friend bool operator!=(Exp2 a, Exp2 b) { return !(a == b); }
    friend bool operator<(Exp2 a, Exp2 b) { return a.q1 != b.q1 ? a.q1 < b.q1 : a.q2 < b.q2; }
};

struct Exp4 {
    std::array<int, 4> e{};
    int total() const { return e[0] + e[1] + e[2] + e[3]; }
    int& operator[](int i) { return e[i]; }
    int operator[](int i) const { return e[i]; }
    friend bool operator==(const Exp4& a, const Exp4& b) { return a.e == b.e; }
    friend bool operator<(const Exp4& a, const Exp4& b) { return a.e < b.e; }
};

/// Sparse truncated series in two variables (t, s) with exact rational
/// coefficients. Exponents may be negative (canonical-form fields carry
/// a -1 column); `order` is the total-degree truncation bound. Terms are
/// kept sorted lexicographically and zero coefficients are never stored.
class Series2 {
public:
    using Term = std::pair<Exp2, Rational>;

    explicit Series2(int order = 7) : order_(order) {}
    static Series2 constant(int order, const Rational& c);
    static Series2 monomial(int order, Exp2 q, const Rational& c);
    static Series2 from_terms(int order, std::vector<Term> terms);

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    Rational coefficient(Exp2 q) const;
    int min_total_degree() const;  // 0 for the zero series

    void add_term(Exp2 q, const Rational& c);

    /// True when every exponent is componentwise >= lo.
    bool exponents_at_least(int lo) const;
    bool divisible_by(Exp2 q) const;

    double evaluate(double t, double s) const;
    std::string to_string() const;

    friend bool operator==(const Series2& a, const Series2& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series2& a, const Series2& b) { return !(a == b); }

private:
    int order_;
    std::vector<Term> terms_;
    friend Series2 finalize2(int order, std::map<Exp2, Rational>&& acc);
    friend Series2 operator+(const Series2& a, const Series2& b);
};

Series2 operator+(const Series2& a, const Series2& b);
Series2 operator-(const Series2& a, const Series2& b);
Series2 operator-(const Series2& a);
Series2 operator*(const Series2& a, const Series2& b);  // throws on order mismatch
Series2 operator*(const Rational& c, const Series2& a);
Series2 truncate(const Series2& a, int new_order);
Series2 partial(const Series2& a, int var);  // var: 0 = t, 1 = s; order drops by one
Series2 mul_monomial(const Series2& a, Exp2 shift, const Rational& c = Rational(1));
Series2 divide_by_monomial(const Series2& a, Exp2 q);

/// Sparse truncated series in four variables (x, u, y, v), nonnegative
/// exponents, exact rational coefficients.
class Series4 {
public:
    using Term = std::pair<Exp4, Rational>;

    explicit Series4(int order = 7) : order_(order) {}
    static Series4 constant(int order, const Rational& c);
    static Series4 monomial(int order, Exp4 q, const Rational& c);
    static Series4 variable(int order, int i);
    static Series4 from_terms(int order, std::vector<Term> terms);

    int order() const { return order_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    Rational coefficient(const Exp4& q) const;
    Rational constant_term() const;
    int min_total_degree() const;

    double evaluate(const std::array<double, 4>& x) const;
    std::string to_string() const;

    friend bool operator==(const Series4& a, const Series4& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Series4& a, const Series4& b) { return !(a == b); }

private:
    int order_;
    std::vector<Term> terms_;
    friend Series4 finalize4(int order, std::map<Exp4, Rational>&& acc);
    friend Series4 operator+(const Series4& a, const Series4& b);
};

Series4 operator+(const Series4& a, const Series4& b);
Series4 operator-(const Series4& a, const Series4& b);
Series4 operator-(const Series4& a);
Series4 operator*(const Series4& a, const Series4& b);
Series4 operator*(const Rational& c, const Series4& a);
Series4 truncate(const Series4& a, int new_order);
Series4 partial(const Series4& a, int var);

/// Shared power cache for composing many 4-variable series with the same
/// argument tuple. Arguments must have zero constant term.
class ComposeContext2 {
public:
    ComposeContext2(std::array<Series2, 4> args);
    const std::array<Series2, 4>& args() const { return args_; }
    int order() const { return order_; }
    const Series2& power(const Exp4& q);

private:
    std::array<Series2, 4> args_;
    int order_;
    std::map<Exp4, Series2> cache_;
};

/// g(args), truncated at the shared order.
Series2 compose(const Series4& g, ComposeContext2& ctx);
Series2 compose(const Series4& g, const std::array<Series2, 4>& args);

class ComposeContext4 {
public:
    ComposeContext4(std::array<Series4, 4> args);
    int order() const { return order_; }
    const Series4& power(const Exp4& q);

private:
    std::array<Series4, 4> args_;
    int order_;
    std::map<Exp4, Series4> cache_;
};

Series4 compose(const Series4& g, ComposeContext4& ctx);

/// Polynomial jet of a map R^4 -> R^4: four series without constant term
/// and an invertible linear part.
class MapJet4 {
public:
    explicit MapJet4(std::array<Series4, 4> components);
    static MapJet4 identity(int order);
    static MapJet4 linear(int order, const Mat4Q& m);

    int order() const { return components_[0].order(); }
    const std::array<Series4, 4>& components() const { return components_; }
    const Series4& component(int i) const { return components_[i]; }
    Mat4Q linear_part() const;

private:
    std::array<Series4, 4> components_;
};

/// inner followed by outer, i.e. x -> outer(inner(x)).
MapJet4 compose(const MapJet4& outer, const MapJet4& inner);
std::array<Series2, 4> apply_map(const MapJet4& map, const std::array<Series2, 4>& args);

/// Formal inverse through the jet order, computed by the fixed-point
/// iteration H <- L^{-1}(id - N(H)) where N is the nonlinear part.
MapJet4 invert(const MapJet4& map);

// --- serialization (JSON text) --------------------------------------------

std::string series2_to_json(const Series2& s);
Series2 series2_from_json(const std::string& text, int order);
std::string series4_to_json(const Series4& s);

}  // namespace umbrella
