#pragma once

#include <string>
#include <vector>

#include "umbrella/foliation.hpp"
#include "umbrella/series.hpp"

namespace umbrella {

/// Planar vector field in canonical form xdot_i = x_i f_i(x1, x2).
/// f1 may carry exponent -1 in the first slot, f2 in the second.
struct PlanarField {
    Series2 f1, f2;

    PlanarField() : f1(7), f2(7) {}
    PlanarField(Series2 a, Series2 b) : f1(std::move(a)), f2(std::move(b)) {}

    /// Canonical-form bounds: f1 in {q1 >= -1, q2 >= 0}, f2 in {q1 >= 0, q2 >= -1}.
    bool canonical_ok() const;
};

/// (f1, f2) = (alpha / t, beta / s).
PlanarField canonical_field(const CharField& field);

/// The union of the two supports, sorted.
std::vector<Exp2> support_of(const PlanarField& field);

struct DiagramEdge {
    Exp2 from, to;             // from = lower-right vertex, to = upper-left
    std::pair<int, int> R;     // primitive direction, second component > 0
};

/// Vertices run right to left along the lower-left boundary chain.
struct NewtonDiagram {
    std::vector<Exp2> vertices;
    std::vector<DiagramEdge> edges;
};

/// Walks the lower-left hull chain from the leftmost point of the bottom
/// support line to the lowest point of the left support line. Requires a
/// nonempty support inside {q_i >= -1}.
NewtonDiagram newton_diagram(const std::vector<Exp2>& support);

struct SectorSpec {
    enum class Kind { Vertex, Edge, Extended };
    Kind kind;
    int element;                    // index into vertices or edges
    std::pair<int, int> r_star;     // R^* (upper/left bound)
    std::pair<int, int> r_lower;    // R_* (lower/right bound); for Edge both hold R
    double epsilon;

    bool contains(double t, double s) const;
};

/// One vertex sector per vertex, one edge sector per edge. Their union
/// covers a punctured ball around the origin.
std::vector<SectorSpec> diagram_sectors(const NewtonDiagram& diagram, double epsilon);

/// |t|^r1 * |s|^r2 with the conventions 0^0 = 1, 0^negative = +inf.
double monomial_weight(double t, double s, std::pair<int, int> r);

// --- file formats -------------------------------------------------------------

struct FieldParseError : std::runtime_error {
    int line;
    FieldParseError(int line_, const std::string& what) : std::runtime_error(what), line(line_) {}
};

/// Line-oriented text format: a `# component q1 q2 coeff` header followed
/// by rows `1|2 <int> <int> <p/q>`.
PlanarField field_from_text(const std::string& text, int order = 7);
std::string field_to_text(const PlanarField& field);

std::string diagram_to_json(const NewtonDiagram& diagram);

}  // namespace umbrella
