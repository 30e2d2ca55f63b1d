#include "umbrella/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "json_detail.hpp"

namespace umbrella {

bool PlanarField::canonical_ok() const {
    for (const auto& [q, c] : f1.terms())
        if (q.q1 < -1 || q.q2 < 0) return false;
    for (const auto& [q, c] : f2.terms())
        if (q.q1 < 0 || q.q2 < -1) return false;
    return true;
}

PlanarField canonical_field(const CharField& field) {
    return PlanarField(divide_by_monomial(field.alpha, {1, 0}),
                       divide_by_monomial(field.beta, {0, 1}));
}

std::vector<Exp2> support_of(const PlanarField& field) {
    std::set<Exp2> s;
    for (const auto& [q, c] : field.f1.terms()) s.insert(q);
    for (const auto& [q, c] : field.f2.terms()) s.insert(q);
    return {s.begin(), s.end()};
}

namespace {

long long cross(Exp2 o, Exp2 a, Exp2 b) {
    return static_cast<long long>(a.q1 - o.q1) * (b.q2 - o.q2) -
           static_cast<long long>(a.q2 - o.q2) * (b.q1 - o.q1);
}

std::pair<int, int> primitive_direction(Exp2 from, Exp2 to) {
    int d1 = to.q1 - from.q1, d2 = to.q2 - from.q2;
    int g = std::gcd(std::abs(d1), std::abs(d2));
    d1 /= g;
    d2 /= g;
    if (d2 < 0) {
        d1 = -d1;
        d2 = -d2;
    }
    return {d1, d2};
}

}  // namespace

NewtonDiagram newton_diagram(const std::vector<Exp2>& support) {
    if (support.empty()) throw std::invalid_argument("newton diagram of an empty support");
    for (const auto& q : support)
        if (q.q1 < -1 || q.q2 < -1)
            throw std::invalid_argument("support point outside {q_i >= -1}");

    // first vertex: leftmost point of the bottom support line
    Exp2 cur = support[0];
    for (const auto& q : support)
        if (q.q2 < cur.q2 || (q.q2 == cur.q2 && q.q1 < cur.q1)) cur = q;

    NewtonDiagram d;
    d.vertices.push_back(cur);
    while (true) {
        // candidates strictly to the left; the chain keeps them strictly above
        Exp2 best{};
        bool found = false;
        for (const auto& q : support) {
            if (q.q1 >= cur.q1) continue;
            if (!found) {
                best = q;
                found = true;
                continue;
            }
            long long c = cross(cur, best, q);
            // pick the support line: every candidate must lie on or above it
            if (c > 0 || (c == 0 && q.q1 < best.q1)) best = q;
        }
        if (!found) break;
        d.edges.push_back({cur, best, primitive_direction(cur, best)});
        d.vertices.push_back(best);
        cur = best;
    }
    return d;
}

double monomial_weight(double t, double s, std::pair<int, int> r) {
    auto powi = [](double x, int e) {
        double ax = std::fabs(x);
        if (e == 0) return 1.0;
        if (ax == 0.0) return e > 0 ? 0.0 : std::numeric_limits<double>::infinity();
        return std::pow(ax, e);
    };
    return powi(t, r.first) * powi(s, r.second);
}

bool SectorSpec::contains(double t, double s) const {
    double band = std::max(std::fabs(t), std::fabs(s));
    if (band > epsilon) return false;
    switch (kind) {
        case Kind::Vertex:
            return monomial_weight(t, s, r_star) <= epsilon &&
                   monomial_weight(t, s, r_lower) <= epsilon;
        case Kind::Edge: {
            double w = monomial_weight(t, s, r_star);
            return w >= epsilon && w <= 1.0 / epsilon;
        }
        case Kind::Extended:
            return monomial_weight(t, s, r_lower) <= epsilon;
    }
    return false;
}

std::vector<SectorSpec> diagram_sectors(const NewtonDiagram& diagram, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0,1)");
    std::vector<SectorSpec> out;
    const int nv = static_cast<int>(diagram.vertices.size());
    for (int i = 0; i < nv; ++i) {
        SectorSpec s;
        s.kind = SectorSpec::Kind::Vertex;
        s.element = i;
        s.epsilon = epsilon;
        // R_* flips the edge on the right; boundary vertices take the axis directions
        if (i == 0) s.r_lower = {1, 0};
        else {
            auto r = diagram.edges[i - 1].R;
            s.r_lower = {-r.first, -r.second};
        }
        if (i == nv - 1) s.r_star = {0, 1};
        else s.r_star = diagram.edges[i].R;
        out.push_back(s);
    }
    for (int i = 0; i < static_cast<int>(diagram.edges.size()); ++i) {
        SectorSpec s;
        s.kind = SectorSpec::Kind::Edge;
        s.element = i;
        s.epsilon = epsilon;
        s.r_star = diagram.edges[i].R;
        s.r_lower = diagram.edges[i].R;
        out.push_back(s);
    }
    return out;
}

// --- file formats ---------------------------------------------------------------

PlanarField field_from_text(const std::string& text, int order) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<Series2::Term> t1, t2;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        std::istringstream ls(line);
        int comp, q1, q2;
        std::string coeff;
        if (!(ls >> comp >> q1 >> q2 >> coeff))
            throw FieldParseError(lineno, "expected `component q1 q2 coeff` at line " +
                                              std::to_string(lineno));
        if (comp != 1 && comp != 2)
            throw FieldParseError(lineno, "component must be 1 or 2 at line " + std::to_string(lineno));
        Rational c;
        try {
            c = Rational::from_string(coeff);
        } catch (const std::exception&) {
            throw FieldParseError(lineno, "bad coefficient `" + coeff + "` at line " +
                                              std::to_string(lineno));
        }
        (comp == 1 ? t1 : t2).push_back({Exp2{q1, q2}, c});
        any = true;
    }
    if (!any) throw FieldParseError(lineno, "field file contains no terms");
    return PlanarField(Series2::from_terms(order, std::move(t1)),
                       Series2::from_terms(order, std::move(t2)));
}

std::string field_to_text(const PlanarField& field) {
    std::ostringstream os;
    os << "# component q1 q2 coeff\n";
    for (const auto& [q, c] : field.f1.terms())
        os << "1 " << q.q1 << " " << q.q2 << " " << c.to_string() << "\n";
    for (const auto& [q, c] : field.f2.terms())
        os << "2 " << q.q1 << " " << q.q2 << " " << c.to_string() << "\n";
    return os.str();
}

std::string diagram_to_json(const NewtonDiagram& diagram) {
    detail::ojson j;
    detail::ojson verts = detail::ojson::array();
    for (const auto& v : diagram.vertices) verts.push_back({v.q1, v.q2});
    j["vertices"] = verts;
    detail::ojson edges = detail::ojson::array();
    for (const auto& e : diagram.edges) {
        detail::ojson rec;
        rec["from"] = {e.from.q1, e.from.q2};
        rec["to"] = {e.to.q1, e.to.q2};
        rec["R"] = {e.R.first, e.R.second};
        edges.push_back(rec);
    }
    j["edges"] = edges;
    return j.dump();
}

}  // namespace umbrella
