#include "umbrella/rational.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace umbrella {

namespace {

uint64_t u64_abs(int64_t v) {
    return v < 0 ? ~static_cast<uint64_t>(v) + 1u : static_cast<uint64_t>(v);
}

void normalize_limbs(std::vector<uint32_t>& l) {
    while (!l.empty() && l.back() == 0) l.pop_back();
}

int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        r[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    normalize_limbs(r);
    return r;
}

// requires |a| >= |b|
std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        int64_t d = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
        if (d < 0) {
            d += (int64_t(1) << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<uint32_t>(d);
    }
    assert(borrow == 0);
    normalize_limbs(r);
    return r;
}

std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t av = a[i];
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t cur = r[i + j] + av * b[j] + carry;
            r[i + j] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            uint64_t cur = r[k] + carry;
            r[k] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    normalize_limbs(r);
    return r;
}

size_t bit_length(const std::vector<uint32_t>& a) {
    if (a.empty()) return 0;
    uint32_t top = a.back();
    size_t bits = (a.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool get_bit(const std::vector<uint32_t>& a, size_t i) {
    size_t limb = i / 32, off = i % 32;
    if (limb >= a.size()) return false;
    return (a[limb] >> off) & 1u;
}

void shl1_inplace(std::vector<uint32_t>& a) {
    uint32_t carry = 0;
    for (auto& limb : a) {
        uint32_t next = limb >> 31;
        limb = (limb << 1) | carry;
        carry = next;
    }
    if (carry) a.push_back(carry);
}

void shr1_inplace(std::vector<uint32_t>& a) {
    uint32_t carry = 0;
    for (size_t i = a.size(); i-- > 0;) {
        uint32_t next = a[i] & 1u;
        a[i] = (a[i] >> 1) | (carry << 31);
        carry = next;
    }
    normalize_limbs(a);
}

void or_bit(std::vector<uint32_t>& a, size_t i) {
    size_t limb = i / 32, off = i % 32;
    if (limb >= a.size()) a.resize(limb + 1, 0);
    a[limb] |= (uint32_t(1) << off);
}

// binary long division of magnitudes
void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (b.empty()) throw std::domain_error("Integer division by zero");
    q.clear();
    r.clear();
    if (cmp_mag(a, b) < 0) {
        r = a;
        return;
    }
    size_t nbits = bit_length(a);
    for (size_t i = nbits; i-- > 0;) {
        shl1_inplace(r);
        if (get_bit(a, i)) {
            if (r.empty()) r.push_back(1);
            else {
                uint64_t s = uint64_t(r[0]) | 1u;
                r[0] = static_cast<uint32_t>(s);
            }
        }
        if (cmp_mag(r, b) >= 0) {
            r = sub_mag(r, b);
            or_bit(q, i);
        }
    }
    normalize_limbs(q);
    normalize_limbs(r);
}

std::vector<uint32_t> gcd_mag(std::vector<uint32_t> a, std::vector<uint32_t> b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    size_t shift = 0;
    while (!a.empty() && !b.empty() && (a[0] & 1u) == 0 && (b[0] & 1u) == 0) {
        shr1_inplace(a);
        shr1_inplace(b);
        ++shift;
    }
    while (!a.empty() && (a[0] & 1u) == 0) shr1_inplace(a);
    while (!b.empty()) {
        while (!b.empty() && (b[0] & 1u) == 0) shr1_inplace(b);
        if (b.empty()) break;
        if (cmp_mag(a, b) > 0) std::swap(a, b);
        b = sub_mag(b, a);
    }
    for (size_t i = 0; i < shift; ++i) shl1_inplace(a);
    return a;
}

std::vector<uint32_t> mag_from_u64(uint64_t v) {
    std::vector<uint32_t> l;
    if (v) {
        l.push_back(static_cast<uint32_t>(v));
        if (v >> 32) l.push_back(static_cast<uint32_t>(v >> 32));
    }
    return l;
}

}  // namespace

Integer::Mag Integer::to_mag() const {
    if (big_) return *big_;
    Mag m;
    m.negative = small_ < 0;
    m.limbs = mag_from_u64(u64_abs(small_));
    return m;
}

Integer Integer::from_mag(Mag&& m) {
    normalize_limbs(m.limbs);
    if (m.limbs.empty()) return Integer();
    if (m.limbs.size() <= 2) {
        uint64_t v = m.limbs[0];
        if (m.limbs.size() == 2) v |= uint64_t(m.limbs[1]) << 32;
        if (!m.negative && v <= uint64_t(INT64_MAX)) {
            Integer r;
            r.small_ = static_cast<int64_t>(v);
            return r;
        }
        if (m.negative && v <= u64_abs(INT64_MIN)) {
            Integer r;
            r.small_ = (v == u64_abs(INT64_MIN)) ? INT64_MIN : -static_cast<int64_t>(v);
            return r;
        }
    }
    Integer r;
    r.big_ = std::make_shared<const Mag>(std::move(m));
    return r;
}

int Integer::sign() const {
    if (big_) return big_->negative ? -1 : 1;
    return small_ < 0 ? -1 : (small_ > 0 ? 1 : 0);
}

bool Integer::is_even() const {
    if (big_) return big_->limbs.empty() || (big_->limbs[0] & 1u) == 0;
    return (small_ & 1) == 0;
}

Integer Integer::operator-() const {
    if (!big_) {
        if (small_ != INT64_MIN) {
            Integer r;
            r.small_ = -small_;
            return r;
        }
    }
    Mag m = to_mag();
    m.negative = !m.negative;
    return from_mag(std::move(m));
}

Integer Integer::abs() const { return sign() < 0 ? -*this : *this; }

Integer operator+(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) {
        int64_t r;
        if (!__builtin_add_overflow(a.small_, b.small_, &r)) {
            Integer out;
            out.small_ = r;
            return out;
        }
    }
    Integer::Mag ma = a.to_mag(), mb = b.to_mag();
    Integer::Mag m;
    if (ma.negative == mb.negative) {
        m.negative = ma.negative;
        m.limbs = add_mag(ma.limbs, mb.limbs);
    } else {
        int c = cmp_mag(ma.limbs, mb.limbs);
        if (c == 0) return Integer();
        if (c > 0) {
            m.negative = ma.negative;
            m.limbs = sub_mag(ma.limbs, mb.limbs);
        } else {
            m.negative = mb.negative;
            m.limbs = sub_mag(mb.limbs, ma.limbs);
        }
    }
    return Integer::from_mag(std::move(m));
}

Integer operator-(const Integer& a, const Integer& b) { return a + (-b); }

Integer operator*(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) {
        int64_t r;
        if (!__builtin_mul_overflow(a.small_, b.small_, &r)) {
            Integer out;
            out.small_ = r;
            return out;
        }
    }
    Integer::Mag ma = a.to_mag(), mb = b.to_mag();
    Integer::Mag m;
    m.negative = ma.negative != mb.negative;
    m.limbs = mul_mag(ma.limbs, mb.limbs);
    if (m.limbs.empty()) m.negative = false;
    return Integer::from_mag(std::move(m));
}

void Integer::divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
    if (b.is_zero()) throw std::domain_error("Integer division by zero");
    if (!a.big_ && !b.big_ && !(a.small_ == INT64_MIN && b.small_ == -1)) {
        q = Integer(a.small_ / b.small_);
        r = Integer(a.small_ % b.small_);
        return;
    }
    Mag ma = a.to_mag(), mb = b.to_mag();
    Mag mq, mr;
    divmod_mag(ma.limbs, mb.limbs, mq.limbs, mr.limbs);
    mq.negative = !mq.limbs.empty() && (ma.negative != mb.negative);
    mr.negative = !mr.limbs.empty() && ma.negative;
    q = from_mag(std::move(mq));
    r = from_mag(std::move(mr));
}

Integer operator/(const Integer& a, const Integer& b) {
    Integer q, r;
    Integer::divmod(a, b, q, r);
    return q;
}

Integer operator%(const Integer& a, const Integer& b) {
    Integer q, r;
    Integer::divmod(a, b, q, r);
    return r;
}

Integer Integer::exact_div(const Integer& a, const Integer& b) {
    Integer q, r;
    divmod(a, b, q, r);
    assert(r.is_zero());
    return q;
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) {
        uint64_t g = std::gcd(u64_abs(a.small_), u64_abs(b.small_));
        Mag m;
        m.limbs = mag_from_u64(g);
        return from_mag(std::move(m));
    }
    Mag ma = a.to_mag(), mb = b.to_mag();
    Mag m;
    m.limbs = gcd_mag(ma.limbs, mb.limbs);
    return from_mag(std::move(m));
}

Integer Integer::pow(const Integer& base, unsigned e) {
    Integer r(1), b = base;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool operator==(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    return Integer::cmp(a, b) == 0;
}

int Integer::cmp(const Integer& a, const Integer& b) {
    if (!a.big_ && !b.big_) return a.small_ < b.small_ ? -1 : (a.small_ > b.small_ ? 1 : 0);
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    Mag ma = a.to_mag(), mb = b.to_mag();
    int c = cmp_mag(ma.limbs, mb.limbs);
    return sa < 0 ? -c : c;
}

Integer Integer::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("empty integer literal");
    Integer r(0);
    Integer ten(10);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad digit in integer literal");
        r = r * ten + Integer(s[i] - '0');
    }
    return neg ? -r : r;
}

std::string Integer::to_string() const {
    if (!big_) return std::to_string(small_);
    Mag m = *big_;
    std::string out;
    std::vector<uint32_t> chunk_div = mag_from_u64(1000000000u);
    std::vector<uint32_t> cur = m.limbs;
    std::vector<std::string> chunks;
    while (!cur.empty()) {
        std::vector<uint32_t> q, r;
        divmod_mag(cur, chunk_div, q, r);
        uint64_t rv = r.empty() ? 0 : (r.size() == 1 ? r[0] : (uint64_t(r[1]) << 32 | r[0]));
        chunks.push_back(std::to_string(rv));
        cur = q;
    }
    if (chunks.empty()) return "0";
    out = m.negative ? "-" : "";
    out += chunks.back();
    for (size_t i = chunks.size() - 1; i-- > 0;) {
        std::string c = chunks[i];
        out += std::string(9 - c.size(), '0') + c;
    }
    return out;
}

double Integer::to_double() const {
    long e;
    double m = to_double_scaled(e);
    return std::ldexp(m, static_cast<int>(e));
}

double Integer::to_double_scaled(long& exp2_out) const {
    if (!big_) {
        if (small_ == 0) {
            exp2_out = 0;
            return 0.0;
        }
        int e;
        double m = std::frexp(static_cast<double>(small_), &e);
        exp2_out = e;
        return m;
    }
    const auto& l = big_->limbs;
    double acc = 0.0;
    size_t n = l.size();
    size_t take = std::min<size_t>(n, 3);  // 96 top bits are plenty for a double
    for (size_t i = 0; i < take; ++i) acc = acc * 4294967296.0 + l[n - 1 - i];
    long e = static_cast<long>((n - take) * 32);
    int fe;
    double m = std::frexp(acc, &fe);
    exp2_out = e + fe;
    return big_->negative ? -m : m;
}

// ---------------------------------------------------------------------------

Rational::Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = Integer(1);
        return;
    }
    Integer g = Integer::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = Integer::exact_div(num_, g);
        den_ = Integer::exact_div(den_, g);
    }
}

Rational Rational::from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(Integer::from_string(s));
    return Rational(Integer::from_string(s.substr(0, slash)), Integer::from_string(s.substr(slash + 1)));
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Rational r;
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.is_zero() || b.is_zero()) return Rational();
    // cross-reduce to keep the fast path small
    Integer g1 = Integer::gcd(a.num_, b.den_);
    Integer g2 = Integer::gcd(b.num_, a.den_);
    Rational r;
    r.num_ = Integer::exact_div(a.num_, g1) * Integer::exact_div(b.num_, g2);
    r.den_ = Integer::exact_div(a.den_, g2) * Integer::exact_div(b.den_, g1);
    r.normalize();
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational division by zero");
    return a * b.reciprocal();
}

bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

bool operator<(const Rational& a, const Rational& b) {
    return Integer::cmp(a.num_ * b.den_, b.num_ * a.den_) < 0;
}

std::string Rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const {
    long en, ed;
    double mn = num_.to_double_scaled(en);
    double md = den_.to_double_scaled(ed);
    return std::ldexp(mn / md, static_cast<int>(en - ed));
}

}  // namespace umbrella
