#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace umbrella {

/// Arbitrary-precision signed integer with an inline int64 fast path.
/// Values that fit in int64 never allocate; arithmetic escalates to a
/// shared immutable limb vector on overflow and demotes when it fits again.
class Integer {
public:
    Integer() = default;
    Integer(int v) : small_(v) {}
    Integer(long v) : small_(v) {}
    Integer(long long v) : small_(v) {}
    Integer(unsigned v) : small_(static_cast<int64_t>(v)) {}

    static Integer from_string(std::string_view s);

    bool is_zero() const { return !big_ && small_ == 0; }
    bool is_one() const { return !big_ && small_ == 1; }
    bool is_small() const { return !big_; }
    /// Valid only when is_small().
    int64_t small_value() const { return small_; }
    int sign() const;
    bool is_even() const;

    Integer operator-() const;
    Integer abs() const;

    friend Integer operator+(const Integer& a, const Integer& b);
    friend Integer operator-(const Integer& a, const Integer& b);
    friend Integer operator*(const Integer& a, const Integer& b);
    /// Truncated quotient (rounds toward zero).
    friend Integer operator/(const Integer& a, const Integer& b);
    friend Integer operator%(const Integer& a, const Integer& b);

    /// Quotient and remainder, truncated toward zero; rem has dividend's sign.
    static void divmod(const Integer& a, const Integer& b, Integer& q, Integer& r);
    /// Division known to be exact; asserts the remainder vanishes.
    static Integer exact_div(const Integer& a, const Integer& b);
    static Integer gcd(const Integer& a, const Integer& b);
    static Integer pow(const Integer& base, unsigned e);

    friend bool operator==(const Integer& a, const Integer& b);
    friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
    friend bool operator<(const Integer& a, const Integer& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return cmp(a, b) >= 0; }
    static int cmp(const Integer& a, const Integer& b);

    std::string to_string() const;
    double to_double() const;
    /// Mantissa in [0.5, 1) plus binary exponent, so huge values survive
    /// the trip through double when paired with a matching denominator.
    double to_double_scaled(long& exp2_out) const;

private:
    struct Mag {
        bool negative = false;
        std::vector<uint32_t> limbs;  // little-endian, normalized
    };

    int64_t small_ = 0;
    std::shared_ptr<const Mag> big_;

    static Integer from_mag(Mag&& m);
    Mag to_mag() const;
    friend class Rational;
};

/// Reduced rational number: denominator always positive, gcd(num, den) = 1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int v) : num_(v), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(Integer v) : num_(std::move(v)), den_(1) {}
    Rational(Integer num, Integer den);
    static Rational of(long long num, long long den) { return Rational(Integer(num), Integer(den)); }

    /// Parses "p", "-p", or "p/q".
    static Rational from_string(std::string_view s);

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational reciprocal() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { *this = *this + o; return *this; }
    Rational& operator-=(const Rational& o) { *this = *this - o; return *this; }
    Rational& operator*=(const Rational& o) { *this = *this * o; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string to_string() const;  // "p" or "p/q"
    double to_double() const;

private:
    Integer num_, den_;
    void normalize();
};

inline Rational operator*(long long a, const Rational& b) { return Rational(a) * b; }

}  // namespace umbrella
