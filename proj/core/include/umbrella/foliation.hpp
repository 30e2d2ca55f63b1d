#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "umbrella/matrix.hpp"
#include "umbrella/series.hpp"

namespace umbrella {

/// One coefficient of the deforming map above linear order, in the
/// (x, u, y, v) coordinates: component index 0..3, exponent, value.
struct HigherTerm {
    int component;
    Exp4 exp;
    Rational coeff;
};

enum class JetMode { Symplectic, LinearSymplecticOnly };

struct JetValidationError : std::runtime_error {
    std::string identity;
    JetValidationError(std::string id, const std::string& what)
        : std::runtime_error(what), identity(std::move(id)) {}
};

/// Jet of the deformation phi at the origin: the symplectic linear blocks
/// A, B, C, D and the degree >= 2 coefficients.
struct DeformationJet {
    Mat2Q A, B, C, D;
    std::vector<HigherTerm> higher;
    JetMode mode = JetMode::LinearSymplecticOnly;

    /// Checks A^t D - C^t B = I, A^t C = C^t A, D^t B = B^t D; throws
    /// JetValidationError naming the identity that fails. Symplectic mode
    /// additionally checks the pullback of the form through the jet order.
    void validate(int jet_order = 4) const;

    static DeformationJet identity();
};

/// Linear data computed from the jet: the complex-linear normalizer psi,
/// the blocks E, G of D(psi.phi)(0), their inverses, and det G.
struct DerivedLinearData {
    Mat4Q psi;
    Mat2Q E, G;
    Mat2Q Eprime, Gprime;  // blocks of the inverse differential
    Rational delta;        // det G
};

Mat4Q omega_matrix_q();       // the symplectic form
Mat4Q complex_structure_q();  // multiplication by i

DerivedLinearData derive_linear_data(const DeformationJet& jet);

/// The umbrella parametrization (ts, 2t^3/3, t^2, s) as series of the
/// given truncation order. Requires order >= 3.
std::array<Series2, 4> umbrella_map(int order);

/// x^2 - y v^2 + (9/4) u^2 - y^3.
Series4 rho_series(int order);

/// The jet of psi.phi as a 4-variable map jet.
MapJet4 normalized_map_jet(const DeformationJet& jet, int order);

/// The planar vector field (alpha, beta) of the characteristic foliation.
struct CharField {
    Series2 alpha, beta;
    DerivedLinearData lin;
};

/// alpha = <J f_s, grad rho' . f>, beta = -<J f_t, grad rho' . f> with
/// f = psi.phi.pi and rho' = rho.(psi.phi)^{-1}; exact through the given
/// order minus one. Requires order >= 5.
CharField characteristic_field(const DeformationJet& jet, int order);

/// Low-order coefficients of (alpha, beta): a_jk multiplies t^j s^k,
/// b_jk likewise, b40 is the t^4 coefficient of beta.
struct CoeffRecord {
    Rational a11, a02, a30, b21, b12, b03, b40;
    friend bool operator==(const CoeffRecord&, const CoeffRecord&) = default;
};

/// Closed forms of the seven displayed coefficients in terms of E, G and
/// the blocks of the inverse differential. These depend on linear data
/// only; see the regression tests for the derivation cross-checks.
CoeffRecord coefficient_formulas(const DerivedLinearData& lin);

/// The same record read off the computed series.
CoeffRecord extract_coefficients(const CharField& field);

/// g12 != 0 and a02, b12, b03 all nonzero (read from the field itself).
bool is_generic(const CharField& field);

struct NonvanishingReport {
    double min_norm = 0.0;
    double min_t = 0.0, min_s = 0.0;
    double threshold = 0.0;
    int samples = 0;
    bool pass = false;
};

/// Samples |(alpha, beta)| on the annulus r0 <= |(t,s)| <= r1 and fails
/// if any sample drops below 1e-12 times the field scale at r0.
NonvanishingReport check_nonvanishing(const CharField& field, double r0, double r1, int samples,
                                      uint64_t seed);

// --- serialization -----------------------------------------------------------

DeformationJet jet_from_json(const std::string& text);
std::string jet_to_json(const DeformationJet& jet);
std::string linear_data_to_json(const DerivedLinearData& lin);
std::string char_field_to_json(const CharField& field);

}  // namespace umbrella
