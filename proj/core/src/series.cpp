#include "umbrella/series.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace umbrella {

namespace {

void check_same_order(int a, int b) {
    if (a != b) throw std::invalid_argument("series operands have mismatched truncation orders");
}

double ipow(double x, int e) {
    if (e == 0) return 1.0;
    if (e < 0) return 1.0 / ipow(x, -e);
    double r = 1.0, b = x;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

}  // namespace

Series2 finalize2(int order, std::map<Exp2, Rational>&& acc) {
    Series2 r(order);
    r.terms_.reserve(acc.size());
    for (auto& [q, c] : acc) {
        if (!c.is_zero() && q.total() <= order) r.terms_.emplace_back(q, std::move(c));
    }
    return r;
}

Series4 finalize4(int order, std::map<Exp4, Rational>&& acc) {
    Series4 r(order);
    r.terms_.reserve(acc.size());
    for (auto& [q, c] : acc) {
        if (!c.is_zero() && q.total() <= order) r.terms_.emplace_back(q, std::move(c));
    }
    return r;
}

// --- Series2 ---------------------------------------------------------------

Series2 Series2::constant(int order, const Rational& c) { return monomial(order, {0, 0}, c); }

Series2 Series2::monomial(int order, Exp2 q, const Rational& c) {
    Series2 r(order);
    if (!c.is_zero() && q.total() <= order) r.terms_.emplace_back(q, c);
    return r;
}

Series2 Series2::from_terms(int order, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    Series2 r(order);
    r.terms_.reserve(terms.size());
    for (auto& [q, c] : terms) {
        if (q.total() > order) continue;
        if (!r.terms_.empty() && r.terms_.back().first == q) r.terms_.back().second += c;
        else r.terms_.emplace_back(q, std::move(c));
    }
    std::erase_if(r.terms_, [](const Term& t) { return t.second.is_zero(); });
    return r;
}

Rational Series2::coefficient(Exp2 q) const {
    for (const auto& [e, c] : terms_)
        if (e == q) return c;
    return Rational();
}

int Series2::min_total_degree() const {
    if (terms_.empty()) return 0;
    int m = terms_[0].first.total();
    for (const auto& [q, c] : terms_) m = std::min(m, q.total());
    return m;
}

void Series2::add_term(Exp2 q, const Rational& c) {
    *this = *this + Series2::monomial(order_, q, c);
}

bool Series2::exponents_at_least(int lo) const {
    for (const auto& [q, c] : terms_)
        if (q.q1 < lo || q.q2 < lo) return false;
    return true;
}

bool Series2::divisible_by(Exp2 q) const {
    for (const auto& [e, c] : terms_)
        if (e.q1 < q.q1 || e.q2 < q.q2) return false;
    return true;
}

double Series2::evaluate(double t, double s) const {
    double acc = 0.0;
    for (const auto& [q, c] : terms_) acc += c.to_double() * ipow(t, q.q1) * ipow(s, q.q2);
    return acc;
}

std::string Series2::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [q, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")*t^" << q.q1 << "*s^" << q.q2;
    }
    return os.str();
}

Series2 operator+(const Series2& a, const Series2& b) {
    check_same_order(a.order(), b.order());
    Series2 r(a.order());
    r.terms_.reserve(a.terms().size() + b.terms().size());
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            r.terms_.push_back(*ia++);
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            r.terms_.push_back(*ib++);
        } else {
            Rational c = ia->second + ib->second;
            if (!c.is_zero()) r.terms_.emplace_back(ia->first, std::move(c));
            ++ia;
            ++ib;
        }
    }
    return r;
}

Series2 operator-(const Series2& a) {
    Series2 r = a;
    return Rational(-1) * r;
}

Series2 operator-(const Series2& a, const Series2& b) { return a + (-b); }

Series2 operator*(const Series2& a, const Series2& b) {
    check_same_order(a.order(), b.order());
    std::vector<Series2::Term> acc;
    acc.reserve(a.terms().size() * b.terms().size());
    for (const auto& [qa, ca] : a.terms()) {
        for (const auto& [qb, cb] : b.terms()) {
            Exp2 q{qa.q1 + qb.q1, qa.q2 + qb.q2};
            if (q.total() > a.order()) continue;
            acc.emplace_back(q, ca * cb);
        }
    }
    return Series2::from_terms(a.order(), std::move(acc));
}

Series2 operator*(const Rational& c, const Series2& a) {
    std::map<Exp2, Rational> acc;
    for (const auto& [q, v] : a.terms()) acc[q] = c * v;
    return finalize2(a.order(), std::move(acc));
}

Series2 truncate(const Series2& a, int new_order) {
    std::map<Exp2, Rational> acc;
    for (const auto& [q, c] : a.terms())
        if (q.total() <= new_order) acc[q] = c;
    return finalize2(new_order, std::move(acc));
}

Series2 partial(const Series2& a, int var) {
    std::map<Exp2, Rational> acc;
    for (const auto& [q, c] : a.terms()) {
        int e = var == 0 ? q.q1 : q.q2;
        if (e == 0) continue;
        Exp2 r = var == 0 ? Exp2{q.q1 - 1, q.q2} : Exp2{q.q1, q.q2 - 1};
        acc[r] += Rational(e) * c;
    }
    return finalize2(a.order() - 1, std::move(acc));
}

Series2 mul_monomial(const Series2& a, Exp2 shift, const Rational& c) {
    std::map<Exp2, Rational> acc;
    for (const auto& [q, v] : a.terms()) acc[Exp2{q.q1 + shift.q1, q.q2 + shift.q2}] = c * v;
    return finalize2(a.order(), std::move(acc));
}

Series2 divide_by_monomial(const Series2& a, Exp2 q) { return mul_monomial(a, {-q.q1, -q.q2}); }

// --- Series4 ---------------------------------------------------------------

Series4 Series4::constant(int order, const Rational& c) { return monomial(order, Exp4{}, c); }

Series4 Series4::monomial(int order, Exp4 q, const Rational& c) {
    Series4 r(order);
    if (!c.is_zero() && q.total() <= order) r.terms_.emplace_back(q, c);
    return r;
}

Series4 Series4::variable(int order, int i) {
    Exp4 q;
    q[i] = 1;
    return monomial(order, q, Rational(1));
}

Series4 Series4::from_terms(int order, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    Series4 r(order);
    r.terms_.reserve(terms.size());
    for (auto& [q, c] : terms) {
        if (q.total() > order) continue;
        if (!r.terms_.empty() && r.terms_.back().first == q) r.terms_.back().second += c;
        else r.terms_.emplace_back(q, std::move(c));
    }
    std::erase_if(r.terms_, [](const Term& t) { return t.second.is_zero(); });
    return r;
}

Rational Series4::coefficient(const Exp4& q) const {
    for (const auto& [e, c] : terms_)
        if (e == q) return c;
    return Rational();
}

Rational Series4::constant_term() const { return coefficient(Exp4{}); }

int Series4::min_total_degree() const {
    if (terms_.empty()) return 0;
    int m = terms_[0].first.total();
    for (const auto& [q, c] : terms_) m = std::min(m, q.total());
    return m;
}

double Series4::evaluate(const std::array<double, 4>& x) const {
    double acc = 0.0;
    for (const auto& [q, c] : terms_) {
        double v = c.to_double();
        for (int i = 0; i < 4; ++i) v *= ipow(x[i], q[i]);
        acc += v;
    }
    return acc;
}

std::string Series4::to_string() const {
    if (terms_.empty()) return "0";
    static const char* names[4] = {"x", "u", "y", "v"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [q, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        for (int i = 0; i < 4; ++i)
            if (q[i]) os << "*" << names[i] << "^" << q[i];
    }
    return os.str();
}

Series4 operator+(const Series4& a, const Series4& b) {
    check_same_order(a.order(), b.order());
    Series4 r(a.order());
    r.terms_.reserve(a.terms().size() + b.terms().size());
    auto ia = a.terms().begin(), ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            r.terms_.push_back(*ia++);
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            r.terms_.push_back(*ib++);
        } else {
            Rational c = ia->second + ib->second;
            if (!c.is_zero()) r.terms_.emplace_back(ia->first, std::move(c));
            ++ia;
            ++ib;
        }
    }
    return r;
}

Series4 operator-(const Series4& a) { return Rational(-1) * a; }
Series4 operator-(const Series4& a, const Series4& b) { return a + (-b); }

Series4 operator*(const Series4& a, const Series4& b) {
    check_same_order(a.order(), b.order());
    std::vector<Series4::Term> acc;
    acc.reserve(a.terms().size() * 4);
    for (const auto& [qa, ca] : a.terms()) {
        if (qa.total() > a.order()) continue;
        for (const auto& [qb, cb] : b.terms()) {
            if (qa.total() + qb.total() > a.order()) continue;
            Exp4 q;
            for (int i = 0; i < 4; ++i) q[i] = qa[i] + qb[i];
            acc.emplace_back(q, ca * cb);
        }
    }
    return Series4::from_terms(a.order(), std::move(acc));
}

Series4 operator*(const Rational& c, const Series4& a) {
    std::map<Exp4, Rational> acc;
    for (const auto& [q, v] : a.terms()) acc[q] = c * v;
    return finalize4(a.order(), std::move(acc));
}

Series4 truncate(const Series4& a, int new_order) {
    std::map<Exp4, Rational> acc;
    for (const auto& [q, c] : a.terms())
        if (q.total() <= new_order) acc[q] = c;
    return finalize4(new_order, std::move(acc));
}

Series4 partial(const Series4& a, int var) {
    std::map<Exp4, Rational> acc;
    for (const auto& [q, c] : a.terms()) {
        if (q[var] == 0) continue;
        Exp4 r = q;
        r[var] -= 1;
        acc[r] += Rational(q[var]) * c;
    }
    return finalize4(a.order() - 1, std::move(acc));
}

// --- composition -----------------------------------------------------------

namespace {

template <class SeriesT>
void check_composable(const std::array<SeriesT, 4>& args) {
    for (const auto& a : args) {
        if constexpr (std::is_same_v<SeriesT, Series2>) {
            if (!a.coefficient({0, 0}).is_zero())
                throw std::invalid_argument("composition argument has a nonzero constant term");
        } else {
            if (!a.constant_term().is_zero())
                throw std::invalid_argument("composition argument has a nonzero constant term");
        }
    }
}

}  // namespace

ComposeContext2::ComposeContext2(std::array<Series2, 4> args) : args_(std::move(args)) {
    order_ = args_[0].order();
    for (const auto& a : args_) check_same_order(order_, a.order());
    check_composable(args_);
    cache_.emplace(Exp4{}, Series2::constant(order_, Rational(1)));
}

const Series2& ComposeContext2::power(const Exp4& q) {
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    int i = 0;
    while (q[i] == 0) ++i;
    Exp4 prev = q;
    prev[i] -= 1;
    Series2 val = power(prev) * args_[i];
    return cache_.emplace(q, std::move(val)).first->second;
}

Series2 compose(const Series4& g, ComposeContext2& ctx) {
    Series2 acc(ctx.order());
    for (const auto& [q, c] : g.terms()) {
        if (q.total() > ctx.order()) continue;
        acc = acc + c * ctx.power(q);
    }
    return acc;
}

Series2 compose(const Series4& g, const std::array<Series2, 4>& args) {
    check_same_order(g.order(), args[0].order());
    ComposeContext2 ctx(args);
    return compose(g, ctx);
}

ComposeContext4::ComposeContext4(std::array<Series4, 4> args) : args_(std::move(args)) {
    order_ = args_[0].order();
    for (const auto& a : args_) check_same_order(order_, a.order());
    check_composable(args_);
    cache_.emplace(Exp4{}, Series4::constant(order_, Rational(1)));
}

const Series4& ComposeContext4::power(const Exp4& q) {
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    int i = 0;
    while (q[i] == 0) ++i;
    Exp4 prev = q;
    prev[i] -= 1;
    Series4 val = power(prev) * args_[i];
    return cache_.emplace(q, std::move(val)).first->second;
}

Series4 compose(const Series4& g, ComposeContext4& ctx) {
    Series4 acc(ctx.order());
    for (const auto& [q, c] : g.terms()) {
        if (q.total() > ctx.order()) continue;
        acc = acc + c * ctx.power(q);
    }
    return acc;
}

// --- MapJet4 ----------------------------------------------------------------

MapJet4::MapJet4(std::array<Series4, 4> components) : components_(std::move(components)) {
    for (const auto& c : components_) {
        check_same_order(components_[0].order(), c.order());
        if (!c.constant_term().is_zero())
            throw std::invalid_argument("map jet component has a constant term");
    }
    Mat4Q l = linear_part();
    inverse(l);  // throws if singular
}

MapJet4 MapJet4::identity(int order) { return linear(order, Mat4Q::identity()); }

MapJet4 MapJet4::linear(int order, const Mat4Q& m) {
    std::array<Series4, 4> comp{Series4(order), Series4(order), Series4(order), Series4(order)};
    for (int i = 0; i < 4; ++i) {
        std::vector<Series4::Term> terms;
        for (int j = 0; j < 4; ++j) {
            Exp4 q;
            q[j] = 1;
            terms.emplace_back(q, m(i, j));
        }
        comp[i] = Series4::from_terms(order, std::move(terms));
    }
    return MapJet4(std::move(comp));
}

Mat4Q MapJet4::linear_part() const {
    Mat4Q l;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Exp4 q;
            q[j] = 1;
            l(i, j) = components_[i].coefficient(q);
        }
    return l;
}

MapJet4 compose(const MapJet4& outer, const MapJet4& inner) {
    ComposeContext4 ctx(inner.components());
    std::array<Series4, 4> comp{Series4(outer.order()), Series4(outer.order()),
                                Series4(outer.order()), Series4(outer.order())};
    for (int i = 0; i < 4; ++i) comp[i] = compose(outer.component(i), ctx);
    return MapJet4(std::move(comp));
}

std::array<Series2, 4> apply_map(const MapJet4& map, const std::array<Series2, 4>& args) {
    ComposeContext2 ctx(args);
    std::array<Series2, 4> out{Series2(ctx.order()), Series2(ctx.order()), Series2(ctx.order()),
                               Series2(ctx.order())};
    for (int i = 0; i < 4; ++i) out[i] = compose(map.component(i), ctx);
    return out;
}

MapJet4 invert(const MapJet4& map) {
    const int order = map.order();
    Mat4Q linv = inverse(map.linear_part());

    // nonlinear part of the map
    std::array<Series4, 4> higher{Series4(order), Series4(order), Series4(order), Series4(order)};
    for (int i = 0; i < 4; ++i) {
        std::vector<Series4::Term> t;
        for (const auto& [q, c] : map.component(i).terms())
            if (q.total() >= 2) t.emplace_back(q, c);
        higher[i] = Series4::from_terms(order, std::move(t));
    }

    auto apply_linv = [&](const std::array<Series4, 4>& v) {
        std::array<Series4, 4> out{Series4(order), Series4(order), Series4(order), Series4(order)};
        for (int i = 0; i < 4; ++i) {
            Series4 acc(order);
            for (int j = 0; j < 4; ++j)
                if (!linv(i, j).is_zero()) acc = acc + linv(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    };

    std::array<Series4, 4> id;
    id.fill(Series4(order));
    for (int i = 0; i < 4; ++i) id[i] = Series4::variable(order, i);

    // iteration k settles degree k+1, so each round runs at the smallest
    // truncation order that can carry the newly pinned degree
    auto at_order = [](const Series4& s, int o) {
        std::vector<Series4::Term> keep;
        for (const auto& [q, c] : s.terms())
            if (q.total() <= o) keep.push_back({q, c});
        return Series4::from_terms(o, std::move(keep));
    };

    std::array<Series4, 4> h = apply_linv(id);
    for (int it = 1; it < order; ++it) {
        const int target = std::min(order, it + 2);
        std::array<Series4, 4> h_t;
        h_t.fill(Series4(target));
        for (int i = 0; i < 4; ++i) h_t[i] = at_order(h[i], target);
        ComposeContext4 ctx(h_t);
        std::array<Series4, 4> rhs;
        rhs.fill(Series4(target));
        bool all_zero = true;
        for (int i = 0; i < 4; ++i) {
            Series4 nh = compose(at_order(higher[i], target), ctx);
            all_zero = all_zero && nh.is_zero();
            rhs[i] = Series4::variable(target, i) - nh;
        }
        if (all_zero) break;
        for (int i = 0; i < 4; ++i) {
            Series4 acc(target);
            for (int j = 0; j < 4; ++j)
                if (!linv(i, j).is_zero()) acc = acc + linv(i, j) * rhs[j];
            h[i] = at_order(acc, order);
        }
    }
    for (int i = 0; i < 4; ++i) h[i] = at_order(h[i], order);
    return MapJet4(std::move(h));
}

// --- serialization ----------------------------------------------------------

std::string series2_to_json(const Series2& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [q, c] : s.terms()) {
        nlohmann::ordered_json rec;
        rec["exp"] = {q.q1, q.q2};
        rec["coeff"] = c.to_string();
        arr.push_back(rec);
    }
    return arr.dump();
}

Series2 series2_from_json(const std::string& text, int order) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<Series2::Term> terms;
    for (const auto& rec : arr) {
        Exp2 q{rec.at("exp").at(0).get<int>(), rec.at("exp").at(1).get<int>()};
        terms.emplace_back(q, Rational::from_string(rec.at("coeff").get<std::string>()));
    }
    return Series2::from_terms(order, std::move(terms));
}

std::string series4_to_json(const Series4& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [q, c] : s.terms()) {
        nlohmann::ordered_json rec;
        rec["exp"] = {q[0], q[1], q[2], q[3]};
        rec["coeff"] = c.to_string();
        arr.push_back(rec);
    }
    return arr.dump();
}

}  // namespace umbrella
