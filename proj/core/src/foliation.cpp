#include "umbrella/foliation.hpp"

#include <cmath>

#include "json_detail.hpp"
#include "umbrella/rng.hpp"

namespace umbrella {

namespace {

Mat4Q blocks_to_mat4(const Mat2Q& tl, const Mat2Q& tr, const Mat2Q& bl, const Mat2Q& br) {
    Mat4Q m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            m(i, j) = tl(i, j);
            m(i, j + 2) = tr(i, j);
            m(i + 2, j) = bl(i, j);
            m(i + 2, j + 2) = br(i, j);
        }
    return m;
}

Mat2Q zero2() { return Mat2Q{}; }
Mat2Q id2() { return Mat2Q::identity(); }

/// Jet of phi itself (before the psi normalization).
MapJet4 raw_map_jet(const DeformationJet& jet, int order) {
    Mat4Q dphi = blocks_to_mat4(jet.A, jet.B, jet.C, jet.D);
    std::array<std::vector<Series4::Term>, 4> terms;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Exp4 q;
            q[j] = 1;
            terms[i].emplace_back(q, dphi(i, j));
        }
    for (const auto& h : jet.higher) terms[h.component].emplace_back(h.exp, h.coeff);
    std::array<Series4, 4> comp{Series4(order), Series4(order), Series4(order), Series4(order)};
    for (int i = 0; i < 4; ++i) comp[i] = Series4::from_terms(order, std::move(terms[i]));
    return MapJet4(std::move(comp));
}

}  // namespace

Mat4Q omega_matrix_q() { return blocks_to_mat4(zero2(), id2(), Mat2Q{} - id2(), zero2()); }
Mat4Q complex_structure_q() { return blocks_to_mat4(zero2(), Mat2Q{} - id2(), id2(), zero2()); }

DeformationJet DeformationJet::identity() {
    DeformationJet j;
    j.A = id2();
    j.B = zero2();
    j.C = zero2();
    j.D = id2();
    j.mode = JetMode::Symplectic;
    return j;
}

void DeformationJet::validate(int jet_order) const {
    auto check = [](const Mat2Q& lhs, const Mat2Q& rhs, const char* identity) {
        if (!(lhs == rhs))
            throw JetValidationError(identity,
                                     std::string("symplectic identity failed: ") + identity);
    };
    Mat2Q At = A.transpose(), Ct = C.transpose(), Dt = D.transpose(), Bt = B.transpose();
    check(At * D - Ct * B, id2(), "A^t*D - C^t*B = I");
    check(At * C, Ct * A, "A^t*C = C^t*A");
    check(Dt * B, Bt * D, "D^t*B = B^t*D");

    if (mode != JetMode::Symplectic || higher.empty()) return;

    // jet-level pullback of the form: Dphi(p)^t Omega Dphi(p) = Omega,
    // checked through the degrees the given jet determines
    int max_deg = 1;
    for (const auto& h : higher) max_deg = std::max(max_deg, h.exp.total());
    int order = max_deg + 1;
    MapJet4 phi = raw_map_jet(*this, order);
    std::array<std::array<Series4, 4>, 4> jac;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) jac[i][j] = partial(phi.component(i), j);
    int check_deg = max_deg - 1;
    Mat4Q omega = omega_matrix_q();
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            // (J^t Omega J)(k,l) with Omega = [[0,I],[-I,0]]
            Series4 m = jac[0][k] * jac[2][l] + jac[1][k] * jac[3][l] - jac[2][k] * jac[0][l] -
                        jac[3][k] * jac[1][l];
            Series4 expected = Series4::constant(m.order(), omega(k, l));
            if (truncate(m, check_deg) != truncate(expected, check_deg))
                throw JetValidationError("phi^* omega = omega",
                                         "symplectic pullback fails at jet level");
        }
}

DerivedLinearData derive_linear_data(const DeformationJet& jet) {
    jet.validate();
    DerivedLinearData d;
    Mat2Q Bt = jet.B.transpose(), Dt = jet.D.transpose();
    d.psi = blocks_to_mat4(Dt, Mat2Q{} - Bt, Bt, Dt);
    d.E = Bt * jet.A + Dt * jet.C;
    d.G = Bt * jet.B + Dt * jet.D;
    d.delta = det2(d.G);
    if (!(Rational(0) < d.delta))
        throw JetValidationError("det G > 0", "G = B^t*B + D^t*D is not positive definite");
    d.Gprime = inverse2(d.G);
    d.Eprime = Mat2Q{} - (d.Gprime * d.E);

    Mat4Q j = complex_structure_q();
    if (!(d.psi * j == j * d.psi))
        throw JetValidationError("psi*J = J*psi", "psi does not commute with J");
    Mat4Q dcomp = d.psi * blocks_to_mat4(jet.A, jet.B, jet.C, jet.D);
    if (!(dcomp == blocks_to_mat4(id2(), zero2(), d.E, d.G)))
        throw JetValidationError("D(psi.phi)(0) = [[I,0],[E,G]]",
                                 "normalized differential is not lower block triangular");
    return d;
}

std::array<Series2, 4> umbrella_map(int order) {
    if (order < 3) throw std::invalid_argument("umbrella map needs order >= 3");
    std::array<Series2, 4> pi{Series2(order), Series2(order), Series2(order), Series2(order)};
    pi[0] = Series2::monomial(order, {1, 1}, Rational(1));
    pi[1] = Series2::monomial(order, {3, 0}, Rational::of(2, 3));
    pi[2] = Series2::monomial(order, {2, 0}, Rational(1));
    pi[3] = Series2::monomial(order, {0, 1}, Rational(1));
    return pi;
}

Series4 rho_series(int order) {
    return Series4::from_terms(order, {{Exp4{{2, 0, 0, 0}}, Rational(1)},
                                       {Exp4{{0, 0, 1, 2}}, Rational(-1)},
                                       {Exp4{{0, 2, 0, 0}}, Rational::of(9, 4)},
                                       {Exp4{{0, 0, 3, 0}}, Rational(-1)}});
}

MapJet4 normalized_map_jet(const DeformationJet& jet, int order) {
    DerivedLinearData lin = derive_linear_data(jet);
    Mat4Q linear = blocks_to_mat4(id2(), zero2(), lin.E, lin.G);
    std::array<std::vector<Series4::Term>, 4> terms;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Exp4 q;
            q[j] = 1;
            terms[i].emplace_back(q, linear(i, j));
        }
    // psi acts linearly on the higher coefficients of phi
    for (const auto& h : jet.higher)
        for (int i = 0; i < 4; ++i) {
            Rational c = lin.psi(i, h.component) * h.coeff;
            if (!c.is_zero()) terms[i].emplace_back(h.exp, c);
        }
    std::array<Series4, 4> comp{Series4(order), Series4(order), Series4(order), Series4(order)};
    for (int i = 0; i < 4; ++i) comp[i] = Series4::from_terms(order, std::move(terms[i]));
    return MapJet4(std::move(comp));
}

CharField characteristic_field(const DeformationJet& jet, int order) {
    if (order < 5) throw std::invalid_argument("characteristic field needs order >= 5");
    CharField out{Series2(order - 1), Series2(order - 1), derive_linear_data(jet)};

    MapJet4 phi = normalized_map_jet(jet, order);
    MapJet4 inv = invert(phi);
    Series4 rho = rho_series(order);
    ComposeContext4 inv_ctx(inv.components());
    Series4 rho_prime = compose(rho, inv_ctx);

    std::array<Series2, 4> f = apply_map(phi, umbrella_map(order));
    std::array<Series2, 4> f_lo;
    f_lo.fill(Series2(order - 1));
    for (int i = 0; i < 4; ++i) f_lo[i] = truncate(f[i], order - 1);
    ComposeContext2 fctx(f_lo);

    std::array<Series2, 4> grad;
    grad.fill(Series2(order - 1));
    for (int i = 0; i < 4; ++i) grad[i] = compose(partial(rho_prime, i), fctx);

    std::array<Series2, 4> xt, xs;
    xt.fill(Series2(order - 1));
    xs.fill(Series2(order - 1));
    for (int i = 0; i < 4; ++i) {
        xt[i] = partial(f[i], 0);
        xs[i] = partial(f[i], 1);
    }

    // <J w, R> with J(a,b,c,d) = (-c,-d,a,b)
    auto pair_with_j = [&](const std::array<Series2, 4>& w) {
        return -(w[2] * grad[0]) - w[3] * grad[1] + w[0] * grad[2] + w[1] * grad[3];
    };
    out.alpha = pair_with_j(xs);
    out.beta = -pair_with_j(xt);
    return out;
}

CoeffRecord coefficient_formulas(const DerivedLinearData& lin) {
    const Rational &g11 = lin.G(0, 0), &g12 = lin.G(0, 1), &g22 = lin.G(1, 1);
    const Rational &e11 = lin.E(0, 0), &e21 = lin.E(1, 0);
    const Rational &ep11 = lin.Eprime(0, 0), &ep12 = lin.Eprime(0, 1);
    const Rational& gp11 = lin.Gprime(0, 0);
    CoeffRecord r;
    r.a11 = Rational(-2) * g12;
    r.a02 = g12 * ep11 + g22 * ep12;
    r.a30 = Rational(-3) * g22;
    r.b21 = Rational(4) * g11;
    r.b12 = Rational(2) * e11 - Rational(2) * (g11 * ep11 + g12 * ep12);
    r.b03 = gp11 - e11 * ep11 - e21 * ep12;
    r.b40 = Rational(6) * g12;
    return r;
}

CoeffRecord extract_coefficients(const CharField& field) {
    CoeffRecord r;
    r.a11 = field.alpha.coefficient({1, 1});
    r.a02 = field.alpha.coefficient({0, 2});
    r.a30 = field.alpha.coefficient({3, 0});
    r.b21 = field.beta.coefficient({2, 1});
    r.b12 = field.beta.coefficient({1, 2});
    r.b03 = field.beta.coefficient({0, 3});
    r.b40 = field.beta.coefficient({4, 0});
    return r;
}

bool is_generic(const CharField& field) {
    CoeffRecord c = extract_coefficients(field);
    return !field.lin.G(0, 1).is_zero() && !c.a02.is_zero() && !c.b12.is_zero() && !c.b03.is_zero();
}

NonvanishingReport check_nonvanishing(const CharField& field, double r0, double r1, int samples,
                                      uint64_t seed) {
    NonvanishingReport rep;
    rep.samples = samples;
    double max_coeff = 0.0;
    for (const auto& [q, c] : field.alpha.terms()) max_coeff = std::max(max_coeff, std::fabs(c.to_double()));
    for (const auto& [q, c] : field.beta.terms()) max_coeff = std::max(max_coeff, std::fabs(c.to_double()));
    rep.threshold = 1e-12 * std::max(1.0, max_coeff) * r0 * r0 * r0;

    Rng rng(seed);
    double best = -1.0;
    for (int i = 0; i < samples; ++i) {
        double r = rng.uniform(r0, r1);
        double th = rng.uniform(0.0, 2.0 * M_PI);
        double t = r * std::cos(th), s = r * std::sin(th);
        double a = field.alpha.evaluate(t, s), b = field.beta.evaluate(t, s);
        double norm = std::hypot(a, b);
        if (best < 0.0 || norm < best) {
            best = norm;
            rep.min_t = t;
            rep.min_s = s;
        }
    }
    rep.min_norm = best < 0.0 ? 0.0 : best;
    rep.pass = rep.min_norm > rep.threshold;
    return rep;
}

// --- serialization -----------------------------------------------------------

DeformationJet jet_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DeformationJet jet;
    jet.A = detail::mat2_from_json(j.at("A"));
    jet.B = detail::mat2_from_json(j.at("B"));
    jet.C = detail::mat2_from_json(j.at("C"));
    jet.D = detail::mat2_from_json(j.at("D"));
    if (j.contains("higher")) {
        for (const auto& rec : j.at("higher")) {
            HigherTerm h;
            int comp = rec.at("component").get<int>();
            if (comp < 1 || comp > 4) throw std::invalid_argument("higher term component must be 1..4");
            h.component = comp - 1;
            const auto& e = rec.at("exp");
            if (!e.is_array() || e.size() != 4)
                throw std::invalid_argument("higher term exponent must have 4 entries");
            for (int i = 0; i < 4; ++i) h.exp[i] = e[i].get<int>();
            if (h.exp.total() < 2) throw std::invalid_argument("higher term must have total degree >= 2");
            h.coeff = detail::rational_from_json(rec.at("coeff"));
            jet.higher.push_back(h);
        }
    }
    std::string mode = j.value("mode", "linear-symplectic-only");
    if (mode == "symplectic") jet.mode = JetMode::Symplectic;
    else if (mode == "linear-symplectic-only") jet.mode = JetMode::LinearSymplecticOnly;
    else throw std::invalid_argument("mode must be \"symplectic\" or \"linear-symplectic-only\"");
    return jet;
}

std::string jet_to_json(const DeformationJet& jet) {
    detail::ojson j;
    j["A"] = detail::mat2_json(jet.A);
    j["B"] = detail::mat2_json(jet.B);
    j["C"] = detail::mat2_json(jet.C);
    j["D"] = detail::mat2_json(jet.D);
    detail::ojson higher = detail::ojson::array();
    for (const auto& h : jet.higher) {
        detail::ojson rec;
        rec["component"] = h.component + 1;
        rec["exp"] = {h.exp[0], h.exp[1], h.exp[2], h.exp[3]};
        rec["coeff"] = h.coeff.to_string();
        higher.push_back(rec);
    }
    j["higher"] = higher;
    j["mode"] = jet.mode == JetMode::Symplectic ? "symplectic" : "linear-symplectic-only";
    return j.dump(2);
}

std::string linear_data_to_json(const DerivedLinearData& lin) {
    detail::ojson j;
    j["psi"] = detail::mat4_json(lin.psi);
    j["E"] = detail::mat2_json(lin.E);
    j["G"] = detail::mat2_json(lin.G);
    j["Eprime"] = detail::mat2_json(lin.Eprime);
    j["Gprime"] = detail::mat2_json(lin.Gprime);
    j["delta"] = lin.delta.to_string();
    return j.dump(2);
}

std::string char_field_to_json(const CharField& field) {
    detail::ojson j;
    j["order"] = field.alpha.order();
    j["alpha"] = detail::series2_json(field.alpha);
    j["beta"] = detail::series2_json(field.beta);
    return j.dump(2);
}

}  // namespace umbrella
