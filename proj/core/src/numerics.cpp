#include "umbrella/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json_detail.hpp"

namespace umbrella {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

// --- PolyField -----------------------------------------------------------------

PolyField PolyField::from_char_field(const CharField& f) {
    PolyField p;
    for (const auto& [q, c] : f.alpha.terms()) {
        if (q.q1 < 0 || q.q2 < 0) throw std::invalid_argument("alpha has negative exponents");
        p.alpha_.emplace_back(q.q1, q.q2, c.to_double());
    }
    for (const auto& [q, c] : f.beta.terms()) {
        if (q.q1 < 0 || q.q2 < 0) throw std::invalid_argument("beta has negative exponents");
        p.beta_.emplace_back(q.q1, q.q2, c.to_double());
    }
    return p;
}

PolyField PolyField::from_planar(const PlanarField& f) {
    PolyField p;
    for (const auto& [q, c] : f.f1.terms()) {
        if (q.q1 + 1 < 0 || q.q2 < 0) throw std::invalid_argument("field is not canonical");
        p.alpha_.emplace_back(q.q1 + 1, q.q2, c.to_double());
    }
    for (const auto& [q, c] : f.f2.terms()) {
        if (q.q1 < 0 || q.q2 + 1 < 0) throw std::invalid_argument("field is not canonical");
        p.beta_.emplace_back(q.q1, q.q2 + 1, c.to_double());
    }
    return p;
}

PolyField PolyField::from_terms(std::vector<std::tuple<int, int, double>> alpha,
                                std::vector<std::tuple<int, int, double>> beta) {
    PolyField p;
    p.alpha_ = std::move(alpha);
    p.beta_ = std::move(beta);
    return p;
}

void PolyField::eval(double t, double s, double& a, double& b) const {
    double tp[16], sp[16];
    tp[0] = sp[0] = 1.0;
    for (int i = 1; i < 16; ++i) {
        tp[i] = tp[i - 1] * t;
        sp[i] = sp[i - 1] * s;
    }
    a = 0.0;
    b = 0.0;
    for (const auto& [e1, e2, c] : alpha_) a += c * tp[e1] * sp[e2];
    for (const auto& [e1, e2, c] : beta_) b += c * tp[e1] * sp[e2];
}

double PolyField::max_coeff() const {
    double m = 0.0;
    for (const auto& [e1, e2, c] : alpha_) m = std::max(m, std::fabs(c));
    for (const auto& [e1, e2, c] : beta_) m = std::max(m, std::fabs(c));
    return m;
}

// --- integrator ------------------------------------------------------------------

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::ExitedBall: return "EXITED_BALL";
        case Termination::EnteredCore: return "ENTERED_CORE";
        case Termination::StepLimit: return "STEP_LIMIT";
        case Termination::StepUnderflow: return "STEP_UNDERFLOW";
        case Termination::ReachedTau: return "REACHED_TAU";
    }
    return "STEP_LIMIT";
}

OrbitTrace integrate_orbit(const PolyField& field, double t0, double s0, int direction,
                           const IntegratorConfig& cfg) {
    if (t0 == 0.0 && s0 == 0.0) throw std::invalid_argument("orbit seed at the origin");
    OrbitTrace trace;
    trace.direction = direction;

    const double slow = cfg.slow_threshold_factor * cfg.exit_radius;
    // rhs state: (t, s, tau); error control on the phase components only
    auto rhs = [&](const std::array<double, 3>& y, std::array<double, 3>& dy) {
        double a, b;
        field.eval(y[0], y[1], a, b);
        a *= direction;
        b *= direction;
        double n = std::hypot(a, b);
        if (n < slow && n > 0.0) {
            dy = {a / n, b / n, 1.0 / n};  // arc-length mode
        } else {
            dy = {a, b, 1.0};
        }
    };

    // Dormand-Prince 5(4)
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double B4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    std::array<double, 3> y{t0, s0, 0.0};
    trace.samples.push_back({0.0, t0, s0});
    trace.min_radius = std::hypot(t0, s0);

    std::array<double, 3> k[7];
    rhs(y, k[0]);
    double h = 1e-4;
    {
        double ny = std::hypot(y[0], y[1]), nf = std::hypot(k[0][0], k[0][1]);
        if (nf > 0.0) h = 0.01 * std::max(ny, 1e-8) / nf;
    }

    for (long step = 0; step < cfg.max_steps; ++step) {
        if (h < 1e-14) {
            trace.reason = Termination::StepUnderflow;
            return trace;
        }
        bool clipped = false;
        if (cfg.max_tau > 0.0) {
            // in plain time mode tau advances by h per step, so clip onto it
            double a0, b0;
            field.eval(y[0], y[1], a0, b0);
            if (std::hypot(a0, b0) >= slow && y[2] + h >= cfg.max_tau) {
                h = cfg.max_tau - y[2];
                clipped = true;
                if (h <= 0.0) {
                    trace.reason = Termination::ReachedTau;
                    return trace;
                }
            }
        }
        std::array<double, 3> ytmp;
        for (int i = 1; i < 7; ++i) {
            for (int d = 0; d < 3; ++d) {
                double acc = 0.0;
                for (int j = 0; j < i; ++j) acc += A[i][j] * k[j][d];
                ytmp[d] = y[d] + h * acc;
            }
            rhs(ytmp, k[i]);
        }
        // 5th order solution is the stage-7 argument (FSAL tableau)
        std::array<double, 3> y5 = ytmp;
        double err = 0.0;
        for (int d = 0; d < 2; ++d) {
            double acc4 = 0.0;
            for (int j = 0; j < 7; ++j) acc4 += B4[j] * k[j][d];
            double y4 = y[d] + h * acc4;
            double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[d]), std::fabs(y5[d]));
            double e = (y5[d] - y4) / sc;
            err += e * e;
        }
        err = std::sqrt(err / 2.0);
        if (err <= 1.0) {
            y = y5;
            k[0] = k[6];
            rhs(y, k[0]);  // mode may have flipped; recompute
            trace.samples.push_back({y[2], y[0], y[1]});
            double r = std::hypot(y[0], y[1]);
            trace.min_radius = std::min(trace.min_radius, r);
            if (r >= cfg.exit_radius) {
                trace.reason = Termination::ExitedBall;
                return trace;
            }
            if (r <= cfg.core_radius) {
                trace.reason = Termination::EnteredCore;
                return trace;
            }
            if (clipped && cfg.max_tau > 0.0 && y[2] >= cfg.max_tau * (1.0 - 1e-15)) {
                trace.reason = Termination::ReachedTau;
                return trace;
            }
        }
        double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(fac, 0.2, 5.0);
    }
    trace.reason = Termination::StepLimit;
    return trace;
}

SeparatrixReport verify_separatrix(const PolyField& field, double c, int power, double t0,
                                   double tolerance, const IntegratorConfig& cfg, double offset) {
    SeparatrixReport rep;
    rep.c = c;
    rep.power = power;
    rep.t0 = t0;

    double s0 = c * std::pow(t0, power);
    double a, b;
    field.eval(t0, s0, a, b);
    double radial = 2.0 * (t0 * a + s0 * b);
    if (radial == 0.0) {
        rep.note = "direction test inconclusive: radial derivative vanishes at the seed";
        return rep;
    }
    rep.direction = radial < 0.0 ? 1 : -1;

    OrbitTrace trace = integrate_orbit(field, t0, s0, rep.direction, cfg);
    rep.entered_core = trace.reason == Termination::EnteredCore;
    double sup = 0.0;
    for (const auto& [tau, t, s] : trace.samples) {
        if (t == 0.0) continue;
        sup = std::max(sup, std::fabs(s / std::pow(t, power) - c));
    }
    rep.sup_deviation = sup;

    IntegratorConfig off_cfg = cfg;
    off_cfg.core_radius = std::min(cfg.core_radius, 1e-4 * cfg.exit_radius);
    OrbitTrace off = integrate_orbit(field, t0, s0 + offset, rep.direction, off_cfg);
    rep.offset_escaped = off.reason != Termination::EnteredCore;
    rep.offset_min_radius = off.min_radius;

    rep.pass = rep.entered_core && sup <= tolerance && rep.offset_escaped;
    return rep;
}

double separatrix_core_radius(double t0, double kappa) {
    double k = std::max(1.0, std::fabs(kappa));
    return std::clamp(t0 * std::pow(10.0, -3.3 / k), 5e-4, t0 / 2.0);
}

// --- symplectic sampling ----------------------------------------------------------

Mat4D omega_matrix_d() {
    Mat4D o{};
    o(0, 2) = 1.0;
    o(1, 3) = 1.0;
    o(2, 0) = -1.0;
    o(3, 1) = -1.0;
    return o;
}

Mat4D expm(const Mat4D& m) {
    double norm = 0.0;
    for (int i = 0; i < 4; ++i) {
        double row = 0.0;
        for (int j = 0; j < 4; ++j) row += std::fabs(m(i, j));
        norm = std::max(norm, row);
    }
    int scale = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++scale;
    }
    Mat4D a = m;
    double f = std::ldexp(1.0, -scale);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) *= f;

    Mat4D result = Mat4D::identity(), term = Mat4D::identity();
    for (int k = 1; k <= 20; ++k) {
        term = term * a;
        double inv = 1.0 / k;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) term(i, j) *= inv;
        result = result + term;
    }
    for (int i = 0; i < scale; ++i) result = result * result;
    return result;
}

SymplecticSample sample_symplectic(Rng& rng) {
    Mat4D w{};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) w(i, j) = w(j, i) = rng.uniform(-1.0, 1.0);
    Mat4D omega = omega_matrix_d();
    Mat4D h = omega * w;
    SymplecticSample s;
    s.M = expm(h);
    Mat4D res = s.M.transpose() * omega * s.M - omega;
    s.residual = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s.residual = std::max(s.residual, std::fabs(res(i, j)));
    return s;
}

namespace {

Rational random_unit_rational(Rng& rng, bool nonzero = false) {
    // power-of-two denominators: exact, uniform-ish in [-1, 1], and products
    // stay compact instead of compounding prime factors
    long long den = 1LL << rng.int_in(0, 2);
    long long num = rng.int_in(-den, den);
    while (nonzero && num == 0) num = rng.int_in(-den, den);
    return Rational::of(num, den);
}

Mat4Q blocks4(const Mat2Q& tl, const Mat2Q& tr, const Mat2Q& bl, const Mat2Q& br) {
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

}  // namespace

Mat4Q sample_symplectic_rational(Rng& rng) {
    Mat4Q m = Mat4Q::identity();
    int factors = static_cast<int>(rng.int_in(3, 5));
    for (int f = 0; f < factors; ++f) {
        int kind = static_cast<int>(rng.below(4));
        Mat2Q id = Mat2Q::identity(), zero{};
        Mat4Q g;
        switch (kind) {
            case 0: {  // upper shear [[I, S], [0, I]], S symmetric
                Mat2Q s;
                s(0, 0) = random_unit_rational(rng);
                s(1, 1) = random_unit_rational(rng);
                s(0, 1) = s(1, 0) = random_unit_rational(rng);
                g = blocks4(id, s, zero, id);
                break;
            }
            case 1: {  // lower shear [[I, 0], [S, I]]
                Mat2Q s;
                s(0, 0) = random_unit_rational(rng);
                s(1, 1) = random_unit_rational(rng);
                s(0, 1) = s(1, 0) = random_unit_rational(rng);
                g = blocks4(id, zero, s, id);
                break;
            }
            case 2: {  // block [[M, 0], [0, (M^t)^{-1}]] with unit-determinant M
                Mat2Q a = id, b = id;
                a(0, 1) = random_unit_rational(rng);
                b(1, 0) = random_unit_rational(rng);
                Mat2Q mm = a * b;
                g = blocks4(mm, zero, zero, inverse2(mm.transpose()));
                break;
            }
            default: {  // the form itself
                Mat2Q minus_id = zero - id;
                g = blocks4(zero, id, minus_id, zero);
                break;
            }
        }
        m = m * g;
    }
    return m;
}

DeformationJet sample_jet(Rng& rng, int higher_terms) {
    Mat4Q m = sample_symplectic_rational(rng);
    DeformationJet jet;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            jet.A(i, j) = m(i, j);
            jet.B(i, j) = m(i, j + 2);
            jet.C(i, j) = m(i + 2, j);
            jet.D(i, j) = m(i + 2, j + 2);
        }
    jet.mode = JetMode::LinearSymplecticOnly;
    for (int k = 0; k < higher_terms; ++k) {
        HigherTerm h;
        h.component = static_cast<int>(rng.below(4));
        int degree = static_cast<int>(rng.int_in(2, 3));
        h.exp = Exp4{};
        for (int d = 0; d < degree; ++d) h.exp[static_cast<int>(rng.below(4))] += 1;
        h.coeff = random_unit_rational(rng, true);
        jet.higher.push_back(h);
    }
    return jet;
}

ClaimReport verify_claim(int count, uint64_t seed, double g12_threshold) {
    ClaimReport rep;
    rep.seed = seed;
    rep.samples = count;
    rep.min_delta = std::numeric_limits<double>::infinity();
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        Rng stream = rng.split(static_cast<uint64_t>(i));
        SymplecticSample sample = sample_symplectic(stream);
        rep.max_residual = std::max(rep.max_residual, sample.residual);

        double bt[2][2], dt[2][2];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                bt[r][c] = sample.M(r, c + 2);
                dt[r][c] = sample.M(r + 2, c + 2);
            }
        double g11 = 0, g12 = 0, g22 = 0;
        for (int r = 0; r < 2; ++r) {
            g11 += bt[r][0] * bt[r][0] + dt[r][0] * dt[r][0];
            g12 += bt[r][0] * bt[r][1] + dt[r][0] * dt[r][1];
            g22 += bt[r][1] * bt[r][1] + dt[r][1] * dt[r][1];
        }
        if (std::fabs(g12) <= g12_threshold) continue;
        ++rep.admitted;

        double delta = g11 * g22 - g12 * g12;
        rep.min_delta = std::min(rep.min_delta, delta);
        double disc = 4 * g11 * g11 + 9 * g22 * g22 + 12 * g11 * g22 - 24 * g12 * g12;
        double witness = 2 * g11 - 3 * g22;
        rep.max_identity_residual =
            std::max(rep.max_identity_residual, std::fabs(disc - 24 * delta - witness * witness));

        double sq = std::sqrt(disc);
        double a = g11 - 1.5 * g22;
        double l1p = a - 0.5 * sq, l2p = 2.0 * sq;
        double l1m = a + 0.5 * sq, l2m = -2.0 * sq;
        bool ok = disc >= 24 * delta - 1e-9 && delta > 0.0 && l1p * l2p < 0.0 && l1m * l2m < 0.0;
        if (!ok) ++rep.violations;
    }
    rep.pass = rep.admitted > 0 && rep.violations == 0;
    return rep;
}

// --- reports ----------------------------------------------------------------------

std::string claim_report_to_json(const ClaimReport& r) {
    detail::ojson j;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["admitted"] = r.admitted;
    j["violations"] = r.violations;
    j["max_symplectic_residual"] = r.max_residual;
    j["max_identity_residual"] = r.max_identity_residual;
    j["min_delta"] = r.min_delta;
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string separatrix_report_to_json(const SeparatrixReport& r) {
    detail::ojson j;
    j["c"] = r.c;
    j["power"] = r.power;
    j["t0"] = r.t0;
    j["direction"] = r.direction;
    j["sup_deviation"] = r.sup_deviation;
    j["entered_core"] = r.entered_core;
    j["offset_escaped"] = r.offset_escaped;
    j["offset_min_radius"] = r.offset_min_radius;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    return j.dump(2);
}

std::string nonvanishing_report_to_json(const NonvanishingReport& r) {
    detail::ojson j;
    j["min_norm"] = r.min_norm;
    j["min_at"] = {r.min_t, r.min_s};
    j["threshold"] = r.threshold;
    j["samples"] = r.samples;
    j["pass"] = r.pass;
    return j.dump(2);
}

std::string orbit_to_csv(const OrbitTrace& trace) {
    std::string out = "tau,t,s\n";
    for (const auto& [tau, t, s] : trace.samples) {
        out += fmt_double(tau);
        out += ',';
        out += fmt_double(t);
        out += ',';
        out += fmt_double(s);
        out += '\n';
    }
    return out;
}

}  // namespace umbrella
