#include "umbrella/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace umbrella {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

void UniPoly::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UniPoly::eval(const Rational& y) const {
    Rational acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i];
    return acc;
}

double UniPoly::eval(double y) const {
    double acc = 0.0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * y + c_[i].to_double();
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rational(static_cast<long long>(i)) * c_[i];
    return UniPoly(std::move(d));
}

std::string UniPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = c_.size(); i-- > 0;) {
        os << "(" << c_[i].to_string() << ")*y^" << i;
        if (i) os << " + ";
    }
    return os.str();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff((int)i) + b.coeff((int)i);
    return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Rational(-1) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& c, const UniPoly& a) {
    std::vector<Rational> r(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = c * a.c_[i];
    return UniPoly(std::move(r));
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quo;
    int db = b.degree();
    if ((int)rem.size() - 1 >= db) quo.assign(rem.size() - db, Rational());
    while ((int)rem.size() - 1 >= db) {
        while (!rem.empty() && rem.back().is_zero()) rem.pop_back();
        if ((int)rem.size() - 1 < db) break;
        int shift = (int)rem.size() - 1 - db;
        Rational f = rem.back() / b.leading();
        quo[shift] = f;
        for (int i = 0; i <= db; ++i) rem[shift + i] -= f * b.c_[i];
        rem.pop_back();
    }
    q = UniPoly(std::move(quo));
    r = UniPoly(std::move(rem));
}

UniPoly UniPoly::gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    if (x.is_zero()) return x;
    return x.leading().reciprocal() * x;  // monic
}

UniPoly UniPoly::square_free_part() const {
    if (is_zero()) return *this;
    if (degree() == 0) return UniPoly::constant(Rational(1));
    UniPoly g = gcd(*this, derivative());
    if (g.degree() == 0) return *this;
    UniPoly q, r;
    divmod(*this, g, q, r);
    assert(r.is_zero());
    return q;
}

// --- Sturm ------------------------------------------------------------------

SturmChain::SturmChain(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm chain of the zero polynomial");
    UniPoly f = p.square_free_part();
    seq_.push_back(f);
    if (f.degree() >= 1) {
        seq_.push_back(f.derivative());
        while (true) {
            const UniPoly& a = seq_[seq_.size() - 2];
            const UniPoly& b = seq_.back();
            UniPoly q, r;
            UniPoly::divmod(a, b, q, r);
            if (r.is_zero()) break;
            seq_.push_back(Rational(-1) * r);
        }
    }
    // Cauchy root bound of the square-free part
    Rational m;
    for (int i = 0; i < f.degree(); ++i) {
        Rational v = (f.coeff(i) / f.leading()).abs();
        if (m < v) m = v;
    }
    bound_ = Rational(1) + m;
}

int SturmChain::sign_changes(const Rational& x) const {
    int changes = 0, last = 0;
    for (const auto& p : seq_) {
        int s = p.eval(x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

int SturmChain::count_roots(const Rational& lo, const Rational& hi) const {
    if (!(lo < hi)) return 0;
    return sign_changes(lo) - sign_changes(hi);
}

int SturmChain::count_all_roots() const { return count_roots(-bound_, bound_); }

std::vector<RootInterval> isolate_real_roots(const UniPoly& p, const Rational& width_target) {
    if (p.is_zero()) throw std::domain_error("cannot isolate roots of the zero polynomial");
    std::vector<RootInterval> out;
    if (p.degree() == 0) return out;

    SturmChain chain(p);
    UniPoly sf = p.square_free_part();
    UniPoly mult_witness = UniPoly::gcd(p, p.derivative());  // nonconstant at multiple roots

    struct Seg {
        Rational lo, hi;
        int count;
    };
    Rational b = chain.cauchy_bound();
    std::vector<Seg> work;
    int total = chain.count_roots(-b, b);
    if (total > 0) work.push_back({-b, b, total});
    Rational half = Rational::of(1, 2);

    std::vector<Seg> isolated;
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 1) {
            isolated.push_back(s);
            continue;
        }
        Rational mid = (s.lo + s.hi) * half;
        if (sf.eval(mid).is_zero()) {
            isolated.push_back({mid, mid, 1});
            // nudge the split points off the root so left/right counts stay exact
            Rational eps = (s.hi - s.lo) * Rational::of(1, 1024);
            Rational ml = mid - eps, mr = mid + eps;
            while (chain.count_roots(ml, mr) != 1) {
                eps = eps * half;
                ml = mid - eps;
                mr = mid + eps;
            }
            int left = chain.count_roots(s.lo, ml);
            int right = chain.count_roots(mr, s.hi);
            if (left > 0) work.push_back({s.lo, ml, left});
            if (right > 0) work.push_back({mr, s.hi, right});
        } else {
            int left = chain.count_roots(s.lo, mid);
            int right = s.count - left;
            if (left > 0) work.push_back({s.lo, mid, left});
            if (right > 0) work.push_back({mid, s.hi, right});
        }
    }

    for (auto& s : isolated) {
        RootInterval r;
        if (s.lo == s.hi) {
            r.lo = r.hi = s.lo;
            r.approx = s.lo.to_double();
        } else {
            // the square-free part changes sign across an isolating interval
            Rational lo = s.lo, hi = s.hi;
            int slo = sf.eval(lo).sign();
            if (slo == 0) {
                r.lo = r.hi = lo;
                r.approx = lo.to_double();
                r.simple = mult_witness.degree() < 1 || !mult_witness.eval(lo).is_zero();
                out.push_back(r);
                continue;
            }
            while (width_target < hi - lo) {
                Rational mid = (lo + hi) * half;
                int sm = sf.eval(mid).sign();
                if (sm == 0) {
                    lo = hi = mid;
                    break;
                }
                if (sm == slo) lo = mid;
                else hi = mid;
            }
            r.lo = lo;
            r.hi = hi;
            r.approx = ((lo + hi) * half).to_double();
        }
        if (mult_witness.degree() >= 1) {
            if (r.lo == r.hi) r.simple = !mult_witness.eval(r.lo).is_zero();
            else {
                SturmChain wchain(mult_witness);
                r.simple = wchain.count_roots(r.lo, r.hi) == 0;
            }
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) {
        return a.lo < b.lo;
    });
    return out;
}

int sign_at_root(const UniPoly& q, const UniPoly& f, const RootInterval& r) {
    if (q.is_zero()) return 0;
    if (r.lo == r.hi) return q.eval(r.lo).sign();

    UniPoly sf = f.square_free_part();
    // q vanishes at the root iff the root is shared with gcd(sf, q)
    UniPoly g = UniPoly::gcd(sf, q);
    if (g.degree() >= 1) {
        SturmChain gchain(g);
        if (gchain.count_roots(r.lo, r.hi) > 0) return 0;
    }
    // refine until q has no root inside, then the endpoint sign is the answer
    Rational lo = r.lo, hi = r.hi;
    int slo = sf.eval(lo).sign();
    Rational half = Rational::of(1, 2);
    SturmChain qchain(q);
    while (qchain.count_roots(lo, hi) > 0) {
        Rational mid = (lo + hi) * half;
        int sm = sf.eval(mid).sign();
        if (sm == 0) return q.eval(mid).sign();
        if (sm == slo) lo = mid;
        else hi = mid;
    }
    int s = q.eval(lo).sign();
    if (s == 0) s = q.eval(hi).sign();
    return s;
}

// --- QuadExt -----------------------------------------------------------------

double QuadExt::to_double() const { return a.to_double() + b.to_double() * std::sqrt(D.to_double()); }

int QuadExt::sign() const {
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // compare |a| vs |b|*sqrt(D): sign decided by a^2 - b^2 D
    Rational d = a * a - b * b * D;
    int sd = d.sign();
    if (sd == 0) return 0;
    return sd > 0 ? sa : sb;
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    assert(x.D == y.D);
    return QuadExt(x.a + y.a, x.b + y.b, x.D);
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    assert(x.D == y.D);
    return QuadExt(x.a * y.a + x.b * y.b * x.D, x.a * y.b + x.b * y.a, x.D);
}

QuadExt operator*(const Rational& c, const QuadExt& x) { return QuadExt(c * x.a, c * x.b, x.D); }

}  // namespace umbrella
