#pragma once

#include <optional>
#include <string>
#include <vector>

#include "umbrella/newton.hpp"
#include "umbrella/polynomial.hpp"

namespace umbrella {

struct Cone {
    std::pair<int, int> r_star;   // R^* bound (second quadrant or (0,1))
    std::pair<int, int> r_lower;  // R_* bound (fourth quadrant or (1,0))
};

/// Vertex data after the time rescaling d tau1 = (t,s)^Q d tau.
struct VertexProblem {
    Exp2 vertex;
    PlanarField rescaled;                   // f_i * (t,s)^{-Q}
    std::pair<Rational, Rational> lambda;   // constant terms (f_{1Q}, f_{2Q})
    Cone cone;
    bool right_end = false, left_end = false;
};

VertexProblem vertex_rescale(const PlanarField& field, Exp2 vertexQ, const Cone& cone,
                             bool right_end, bool left_end);
VertexProblem vertex_problem(const PlanarField& field, const NewtonDiagram& diagram, int index);

enum class SectorVerdict {
    NoCharacteristicOrbitsVertical,
    NoCharacteristicOrbitsHorizontal,
    SaddleBehavior,
    Deferred,   // one zero eigenvalue, awaits adjacency resolution
    Unresolved,
};

std::string verdict_name(SectorVerdict v);

/// End-vertex rules, then the resonance-line test for nonzero spectra,
/// then deferral when exactly one eigenvalue vanishes.
SectorVerdict resonance_classify(const VertexProblem& problem);

/// Keeps exactly the support points on the closed edge segment. Throws on
/// a degenerate (single-point) edge.
PlanarField edge_truncate(const PlanarField& field, const DiagramEdge& edge);

/// Power transformation y1 = t^{k1} s^{k2}, y2 = t^{r1} s^{r2} with
/// det [[k],[r]] = 1, followed by division by the maximal power of y1.
struct EdgeProblem {
    DiagramEdge edge;
    long long k1, k2;         // unimodular completion row
    int divided_power;        // power of y1 removed
    PlanarField transformed;  // the input field, pushed forward and divided
    PlanarField truncated;    // edge terms only, pushed forward and divided
    UniPoly axis_poly;        // y2^clear * f2'(0, y2), trailing zero roots removed
    int axis_clear_power;     // the Laurent clearing power
    int axis_zero_multiplicity;  // factored-out roots at y2 = 0
};

EdgeProblem edge_power_transform(const PlanarField& field, const DiagramEdge& edge);

enum class SingularityType { Saddle, Node, Degenerate };

/// Stationary point (0, c) of the truncated transformed system.
struct ElementarySingularity {
    RootInterval root;
    double c = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;
    int lambda1_sign = 0, lambda2_sign = 0;  // exact signs
    SingularityType type = SingularityType::Degenerate;
};

ElementarySingularity classify_root(const EdgeProblem& problem, const RootInterval& root);

/// Closed forms for the two singular directions of the generic umbrella
/// edge: discriminant, roots c+-, and both eigenvalue pairs.
struct CpmResult {
    Rational discriminant;  // 4 g11^2 + 9 g22^2 + 12 g11 g22 - 24 g12^2
    Rational delta;         // det G
    QuadExt c_plus, c_minus;
    QuadExt lambda1_plus, lambda2_plus;
    QuadExt lambda1_minus, lambda2_minus;
    bool claim_holds;  // lambda1*lambda2 < 0 at both roots, decided exactly
};

/// Requires g12 != 0 and det G > 0.
CpmResult cpm_closed_forms(const Mat2Q& G);

struct SeparatrixCurve {
    enum class Kind { AxisT, AxisS, PowerCurve };
    Kind kind;
    double c = 0.0;  // PowerCurve: s = c * t^power
    int power = 0;
    RootInterval root;  // exact data for power curves
};

struct SectorConclusion {
    SectorSpec::Kind kind;
    int element;  // vertex or edge index
    std::string description;
    SectorVerdict verdict;
    std::optional<std::pair<Rational, Rational>> lambda;
};

enum class PortraitClass { Saddle, Other, Unresolved };

struct Portrait {
    NewtonDiagram diagram;
    std::vector<SectorConclusion> sectors;
    std::vector<ElementarySingularity> singularities;
    std::vector<SeparatrixCurve> separatrices;
    PortraitClass classification = PortraitClass::Unresolved;
};

/// Assembles separatrices and the final verdict from per-sector analysis.
/// Unresolved is a value, never an error.
Portrait glue_portrait(const PlanarField& field, const NewtonDiagram& diagram,
                       std::vector<SectorConclusion> sectors,
                       std::vector<ElementarySingularity> singularities,
                       std::vector<SeparatrixCurve> power_curves);

/// Full pipeline: diagram, vertex classification, adjacency resolution,
/// edge root analysis, gluing.
Portrait analyze_field(const PlanarField& field);

std::string portrait_to_json(const Portrait& portrait);

}  // namespace umbrella
