#include <doctest.h>

#include <cmath>

#include "umbrella/foliation.hpp"
#include "umbrella/numerics.hpp"
#include "umbrella/rng.hpp"

using namespace umbrella;

namespace {

PolyField linear_saddle() {
    // tdot = -t, sdot = s
    return PolyField::from_terms({{1, 0, -1.0}}, {{0, 1, 1.0}});
}

PolyField standard_poly() {
    return PolyField::from_char_field(characteristic_field(DeformationJet::identity(), 7));
}

/// Edge truncation of the generic system: both parabolas s = c t^2 are
/// exactly invariant, which keeps inward separatrix tracking well posed.
PolyField truncation_field(double g11, double g12, double g22) {
    return PolyField::from_terms({{1, 1, -2 * g12}, {3, 0, -3 * g22}},
                                 {{2, 1, 4 * g11}, {4, 0, 6 * g12}});
}

double integrate_to_tau(const PolyField& f, double tol, double tau) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = 1e-18;
    cfg.exit_radius = 100.0;
    cfg.core_radius = 1e-12;
    cfg.max_tau = tau;
    cfg.slow_threshold_factor = 0.0;  // plain time throughout
    OrbitTrace tr = integrate_orbit(f, 1.0, 0.0, 1, cfg);
    REQUIRE(tr.reason == Termination::ReachedTau);
    return tr.samples.back()[1];
}

}  // namespace

TEST_SUITE_BEGIN("numerics");

TEST_CASE("linear field reaches e^{-1} at tau = 1") {
    double t1 = integrate_to_tau(linear_saddle(), 1e-9, 1.0);
    CHECK(std::fabs(t1 - std::exp(-1.0)) < 1e-8);
}

TEST_CASE("integrator error shrinks with the tolerance") {
    double e_loose = std::fabs(integrate_to_tau(linear_saddle(), 1e-5, 1.0) - std::exp(-1.0));
    double e_tight = std::fabs(integrate_to_tau(linear_saddle(), 1e-11, 1.0) - std::exp(-1.0));
    CHECK(e_tight < e_loose);
    CHECK(e_tight < 1e-10);
}

TEST_CASE("t-axis orbit of the standard field creeps into the core") {
    IntegratorConfig cfg;
    OrbitTrace tr = integrate_orbit(standard_poly(), 0.05 * 0.999, 0.0, 1, cfg);
    CHECK(tr.reason == Termination::EnteredCore);
    double prev = 1.0;
    for (const auto& [tau, t, s] : tr.samples) {
        CHECK(std::fabs(s) <= 1e-12);
        double r = std::hypot(t, s);
        CHECK(r <= prev + 1e-12);
        prev = r;
    }
}

TEST_CASE("off-axis standard orbits exit in both time directions") {
    IntegratorConfig cfg;
    for (int dir : {1, -1}) {
        OrbitTrace tr = integrate_orbit(standard_poly(), 0.03, 0.03, dir, cfg);
        CHECK(tr.reason == Termination::ExitedBall);
        CHECK(tr.min_radius > cfg.core_radius);
    }
    CHECK_THROWS(integrate_orbit(standard_poly(), 0.0, 0.0, 1, IntegratorConfig{}));
}

TEST_CASE("matrix exponential basics") {
    Mat4D zero{};
    Mat4D id = expm(zero);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));

    Mat4D n{};  // nilpotent upper shift
    n(0, 1) = 2.0;
    Mat4D e = expm(n);
    CHECK(e(0, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampled symplectic matrices satisfy the defining identities") {
    Rng rng(11);
    Mat4D omega = omega_matrix_d();
    for (int i = 0; i < 1000; ++i) {
        SymplecticSample s = sample_symplectic(rng);
        CHECK(s.residual <= 1e-9);
        // A^t D - C^t B = I within the same tolerance
        double atd_ctb[2][2] = {{0, 0}, {0, 0}};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                double acc = 0.0;
                for (int k = 0; k < 2; ++k)
                    acc += s.M(k, r) * s.M(k + 2, c + 2) - s.M(k + 2, r) * s.M(k, c + 2);
                atd_ctb[r][c] = acc;
            }
        CHECK(std::fabs(atd_ctb[0][0] - 1.0) <= 1e-9);
        CHECK(std::fabs(atd_ctb[1][1] - 1.0) <= 1e-9);
        CHECK(std::fabs(atd_ctb[0][1]) <= 1e-9);
        CHECK(std::fabs(atd_ctb[1][0]) <= 1e-9);
        (void)omega;
    }
}

TEST_CASE("rational symplectic samples validate exactly") {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        DeformationJet jet = sample_jet(rng, 0);
        CHECK_NOTHROW(jet.validate());
    }
}

TEST_CASE("claim holds over a seeded Monte-Carlo run") {
    ClaimReport rep = verify_claim(2000, 271828);
    CHECK(rep.pass);
    CHECK(rep.admitted > 1000);
    CHECK(rep.violations == 0);
    CHECK(rep.max_residual <= 1e-9);
    CHECK(rep.max_identity_residual <= 1e-9);
    CHECK(rep.min_delta > 0.0);

    // hand case: G = [[1,1/2],[1/2,1]]
    double sq19 = std::sqrt(19.0);
    double l1 = -(1 + sq19) / 2, l2 = 2 * sq19;
    CHECK(l1 * l2 < 0.0);
}

TEST_CASE("claim report is reproducible for a fixed seed") {
    ClaimReport a = verify_claim(500, 99);
    ClaimReport b = verify_claim(500, 99);
    CHECK(claim_report_to_json(a) == claim_report_to_json(b));
}

TEST_CASE("separatrix verification on the reference truncated system") {
    double g11 = 1.0, g12 = 0.5, g22 = 1.0;
    double disc = 4 * g11 * g11 + 9 * g22 * g22 + 12 * g11 * g22 - 24 * g12 * g12;
    double cplus = (-(3 * g22 + 2 * g11) + std::sqrt(disc)) / (4 * g12);
    double cminus = (-(3 * g22 + 2 * g11) - std::sqrt(disc)) / (4 * g12);
    PolyField f = truncation_field(g11, g12, g22);
    double a = g11 - 1.5 * g22;
    for (double sign : {1.0, -1.0}) {
        double c = sign > 0 ? cplus : cminus;
        double kappa = std::fabs(2 * std::sqrt(disc) / (a - sign * 0.5 * std::sqrt(disc)));
        IntegratorConfig cfg;
        cfg.rel_tol = 1e-12;
        cfg.abs_tol = 1e-20;
        cfg.core_radius = separatrix_core_radius(0.02, kappa);
        SeparatrixReport rep = verify_separatrix(f, c, 2, 0.02, 1e-4, cfg);
        CAPTURE(c);
        CAPTURE(rep.sup_deviation);
        CHECK(rep.pass);
        CHECK(rep.entered_core);
        CHECK(rep.sup_deviation <= 1e-4);
        CHECK(rep.offset_escaped);
        CHECK(rep.offset_min_radius > 1e-4 * cfg.exit_radius);
    }
}

TEST_CASE("separatrix verification along the invariant axis") {
    SeparatrixReport rep = verify_separatrix(standard_poly(), 0.0, 1, 0.02, 1e-4, IntegratorConfig{});
    CHECK(rep.pass);
    CHECK(rep.direction == 1);  // -3t^3 pulls the positive axis inward

    // on-separatrix orbits reach the core in exactly one time direction
    OrbitTrace backward = integrate_orbit(standard_poly(), 0.02, 0.0, -1, IntegratorConfig{});
    CHECK(backward.reason == Termination::ExitedBall);
}

TEST_CASE("orbit csv format") {
    IntegratorConfig cfg;
    cfg.max_steps = 50;
    OrbitTrace tr = integrate_orbit(linear_saddle(), 0.5, 0.25, 1, cfg);
    std::string csv = orbit_to_csv(tr);
    CHECK(csv.rfind("tau,t,s\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(tr.samples.size()) + 1);
    CHECK(csv.find("0.5") != std::string::npos);
}

TEST_CASE("poly field construction guards") {
    Series2 bad = Series2::monomial(7, {-1, 2}, Rational(1));
    CharField cf{bad, Series2(7), derive_linear_data(DeformationJet::identity())};
    CHECK_THROWS(PolyField::from_char_field(cf));
}

TEST_SUITE_END();
