#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "umbrella/analysis.hpp"
#include "umbrella/foliation.hpp"
#include "umbrella/newton.hpp"
#include "umbrella/rng.hpp"

namespace umbrella {

/// Polynomial planar field compiled to doubles for fast evaluation.
class PolyField {
public:
    PolyField() = default;
    static PolyField from_char_field(const CharField& f);
    static PolyField from_planar(const PlanarField& f);  // multiplies back x_i f_i
    static PolyField from_terms(std::vector<std::tuple<int, int, double>> alpha,
                                std::vector<std::tuple<int, int, double>> beta);

    void eval(double t, double s, double& a, double& b) const;
    double max_coeff() const;

private:
    std::vector<std::tuple<int, int, double>> alpha_, beta_;
};

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-16;
    double exit_radius = 0.05;
    double core_radius = 5e-6;  // 1e-4 * exit by default
    long max_steps = 2000000;
    /// Below this field magnitude (relative to exit radius) the integrator
    /// switches to arc-length parametrization; tau keeps accumulating.
    double slow_threshold_factor = 1e-2;
    /// Optional stop at a fixed time; the final step lands on it exactly
    /// (never triggers once arc-length mode has engaged mid-run).
    double max_tau = 0.0;  // 0 disables
};

enum class Termination { ExitedBall, EnteredCore, StepLimit, StepUnderflow, ReachedTau };

struct OrbitTrace {
    std::vector<std::array<double, 3>> samples;  // (tau, t, s)
    Termination reason = Termination::StepLimit;
    double min_radius = 0.0;
    int direction = 1;
};

std::string termination_name(Termination t);

/// Dormand-Prince RK45 with PI step control; direction +1 integrates the
/// field, -1 its negative.
OrbitTrace integrate_orbit(const PolyField& field, double t0, double s0, int direction,
                           const IntegratorConfig& cfg);

struct SeparatrixReport {
    double c = 0.0;
    int power = 2;
    double t0 = 0.0;
    int direction = 0;            // chosen origin-approaching time direction
    double sup_deviation = 0.0;   // sup |s/t^power - c| along the trace
    bool entered_core = false;
    bool offset_escaped = false;  // perturbed seed stayed out of the core
    double offset_min_radius = 0.0;
    bool pass = false;
    std::string note;
};

/// Seeds on s = c t^power at t = t0, picks the origin-approaching time
/// direction from the radial derivative, integrates, and measures the
/// deviation from the curve. Also checks that an offset seed fails to
/// reach the deep core (1e-4 of the exit radius), i.e. is repelled by
/// the transverse eigenvalue instead of following the curve in.
SeparatrixReport verify_separatrix(const PolyField& field, double c, int power, double t0,
                                   double tolerance, const IntegratorConfig& cfg,
                                   double offset = 1e-3);

/// Measurement depth for tracking a separatrix into a saddle: transverse
/// error amplifies like (t0 / t_core)^kappa for kappa = |lambda2/lambda1|,
/// so the core radius backs off as kappa grows.
double separatrix_core_radius(double t0, double kappa);

// --- symplectic sampling -------------------------------------------------------

struct SymplecticSample {
    Mat4D M;
    double residual;  // max-abs of M^t Omega M - Omega
};

Mat4D omega_matrix_d();
Mat4D expm(const Mat4D& m);

/// M = exp(Omega W) for random symmetric W with entries uniform in [-1, 1].
SymplecticSample sample_symplectic(Rng& rng);

/// Exact rational symplectic matrix: a short product of shear, diagonal
/// and rotation generators with small rational entries.
Mat4Q sample_symplectic_rational(Rng& rng);

/// Random jet: rational symplectic linear part plus optional random
/// higher terms of degree <= 3 with entries in [-1, 1] rationalized.
DeformationJet sample_jet(Rng& rng, int higher_terms);

struct ClaimReport {
    uint64_t seed = 0;
    int samples = 0;
    int admitted = 0;       // |g12| above the admission threshold
    int violations = 0;     // lambda1*lambda2 >= 0 at either root
    double max_residual = 0.0;        // symplectic residual over samples
    double max_identity_residual = 0.0;  // |D - 24 delta - (2g11-3g22)^2|
    double min_delta = 0.0;
    bool pass = false;
};

/// Monte-Carlo check that lambda1 and lambda2 have opposite signs at both
/// roots for G = B^t B + D^t D of sampled symplectic matrices.
ClaimReport verify_claim(int count, uint64_t seed, double g12_threshold = 1e-6);

std::string claim_report_to_json(const ClaimReport& r);
std::string separatrix_report_to_json(const SeparatrixReport& r);
std::string nonvanishing_report_to_json(const NonvanishingReport& r);
std::string orbit_to_csv(const OrbitTrace& trace);

}  // namespace umbrella
