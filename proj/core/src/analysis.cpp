#include "umbrella/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json_detail.hpp"

namespace umbrella {

namespace {

std::string exp_str(Exp2 q) {
    return "(" + std::to_string(q.q1) + "," + std::to_string(q.q2) + ")";
}

Rational cross_r(std::pair<Rational, Rational> a, std::pair<Rational, Rational> b) {
    return a.first * b.second - a.second * b.first;
}

bool in_open_cone(std::pair<Rational, Rational> d, const Cone& cone) {
    std::pair<Rational, Rational> lo{Rational(cone.r_lower.first), Rational(cone.r_lower.second)};
    std::pair<Rational, Rational> hi{Rational(cone.r_star.first), Rational(cone.r_star.second)};
    return cross_r(lo, d).sign() > 0 && cross_r(d, hi).sign() > 0;
}

}  // namespace

std::string verdict_name(SectorVerdict v) {
    switch (v) {
        case SectorVerdict::NoCharacteristicOrbitsVertical: return "NO_CHARACTERISTIC_ORBITS_VERTICAL";
        case SectorVerdict::NoCharacteristicOrbitsHorizontal: return "NO_CHARACTERISTIC_ORBITS_HORIZONTAL";
        case SectorVerdict::SaddleBehavior: return "SADDLE_BEHAVIOR";
        case SectorVerdict::Deferred: return "DEFERRED";
        case SectorVerdict::Unresolved: return "UNRESOLVED";
    }
    return "UNRESOLVED";
}

VertexProblem vertex_rescale(const PlanarField& field, Exp2 vertexQ, const Cone& cone,
                             bool right_end, bool left_end) {
    std::vector<Exp2> sup = support_of(field);
    if (std::find(sup.begin(), sup.end(), vertexQ) == sup.end())
        throw std::invalid_argument("vertex " + exp_str(vertexQ) + " is not in the support");
    VertexProblem p;
    p.vertex = vertexQ;
    p.rescaled = PlanarField(divide_by_monomial(field.f1, vertexQ), divide_by_monomial(field.f2, vertexQ));
    p.lambda = {field.f1.coefficient(vertexQ), field.f2.coefficient(vertexQ)};
    p.cone = cone;
    p.right_end = right_end;
    p.left_end = left_end;
    return p;
}

VertexProblem vertex_problem(const PlanarField& field, const NewtonDiagram& diagram, int index) {
    const int nv = static_cast<int>(diagram.vertices.size());
    Cone cone;
    cone.r_lower = index == 0 ? std::pair<int, int>{1, 0}
                              : std::pair<int, int>{-diagram.edges[index - 1].R.first,
                                                    -diagram.edges[index - 1].R.second};
    cone.r_star = index == nv - 1 ? std::pair<int, int>{0, 1} : diagram.edges[index].R;
    return vertex_rescale(field, diagram.vertices[index], cone, index == 0, index == nv - 1);
}

SectorVerdict resonance_classify(const VertexProblem& p) {
    // Type I end vertices: one exponent equals -1
    if (p.right_end && p.vertex.q2 == -1) return SectorVerdict::NoCharacteristicOrbitsVertical;
    if (p.left_end && p.vertex.q1 == -1) return SectorVerdict::NoCharacteristicOrbitsHorizontal;

    const Rational &l1 = p.lambda.first, &l2 = p.lambda.second;
    if (!l1.is_zero() && !l2.is_zero()) {
        // resonance line <Q, Lambda> = 0 has direction (l2, -l1)
        std::pair<Rational, Rational> d{l2, -l1};
        std::pair<Rational, Rational> dneg{-l2, l1};
        bool meets = in_open_cone(d, p.cone) || in_open_cone(dneg, p.cone);
        if (meets && (l1 * l2).sign() < 0) return SectorVerdict::SaddleBehavior;
        return SectorVerdict::Unresolved;
    }
    if (l1.is_zero() != l2.is_zero()) return SectorVerdict::Deferred;
    return SectorVerdict::Unresolved;
}

PlanarField edge_truncate(const PlanarField& field, const DiagramEdge& edge) {
    if (edge.from == edge.to) throw std::invalid_argument("degenerate edge");
    auto on_segment = [&](Exp2 q) {
        long long c = static_cast<long long>(edge.to.q1 - edge.from.q1) * (q.q2 - edge.from.q2) -
                      static_cast<long long>(edge.to.q2 - edge.from.q2) * (q.q1 - edge.from.q1);
        if (c != 0) return false;
        return q.q1 >= std::min(edge.from.q1, edge.to.q1) && q.q1 <= std::max(edge.from.q1, edge.to.q1) &&
               q.q2 >= std::min(edge.from.q2, edge.to.q2) && q.q2 <= std::max(edge.from.q2, edge.to.q2);
    };
    auto filter = [&](const Series2& s) {
        std::vector<Series2::Term> keep;
        for (const auto& [q, c] : s.terms())
            if (on_segment(q)) keep.push_back({q, c});
        return Series2::from_terms(s.order(), std::move(keep));
    };
    return PlanarField(filter(field.f1), filter(field.f2));
}

EdgeProblem edge_power_transform(const PlanarField& field, const DiagramEdge& edge) {
    EdgeProblem out;
    out.edge = edge;
    const long long r1 = edge.R.first, r2 = edge.R.second;

    // unimodular completion: k1*r2 - k2*r1 = 1
    long long k1, k2;
    if (r2 == 1) {
        k1 = 1;
        k2 = 0;
    } else {
        // extended euclid on (r2, -r1)
        long long a = r2, b = -r1;
        long long x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0) {
            long long q = a / b;
            std::tie(a, b) = std::make_pair(b, a - q * b);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
            std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
        }
        if (a == -1) {
            a = 1;
            x0 = -x0;
            y0 = -y0;
        }
        if (a != 1) throw std::invalid_argument("edge direction is not primitive");
        k1 = x0;
        k2 = y0;
        // minimize |k| over k + m*(r1, r2)
        long long num = k1 * r1 + k2 * r2, den = r1 * r1 + r2 * r2;
        long long m = static_cast<long long>(std::llround(-static_cast<double>(num) / den));
        k1 += m * r1;
        k2 += m * r2;
    }
    assert(k1 * r2 - k2 * r1 == 1);
    out.k1 = k1;
    out.k2 = k2;

    auto remap = [&](Exp2 q) {
        return Exp2{static_cast<int>(r2 * q.q1 - r1 * q.q2), static_cast<int>(-k2 * q.q1 + k1 * q.q2)};
    };

    // F'_{Q'} = A F_Q per support monomial, for A with rows (k1,k2), (r1,r2).
    // Remapped exponents can raise the total degree, so the result order
    // grows with them; nothing is truncated away.
    auto push = [&](const PlanarField& f, int& min_first) {
        std::vector<Series2::Term> t1, t2;
        min_first = INT32_MAX;
        int order = f.f1.order();
        auto visit = [&](const Series2& s, bool is_f1) {
            for (const auto& [q, c] : s.terms()) {
                Exp2 qq = remap(q);
                min_first = std::min(min_first, qq.q1);
                order = std::max(order, qq.total());
                Rational c1 = Rational(is_f1 ? k1 : k2) * c;
                Rational c2 = Rational(is_f1 ? r1 : r2) * c;
                if (!c1.is_zero()) t1.push_back({qq, c1});
                if (!c2.is_zero()) t2.push_back({qq, c2});
            }
        };
        visit(f.f1, true);
        visit(f.f2, false);
        return PlanarField(Series2::from_terms(order, std::move(t1)),
                           Series2::from_terms(order, std::move(t2)));
    };

    int min_full = 0, min_trunc = 0;
    PlanarField full = push(field, min_full);
    PlanarField trunc = push(edge_truncate(field, edge), min_trunc);
    out.divided_power = min_full == INT32_MAX ? 0 : min_full;
    auto divide = [&](const PlanarField& f, int m) {
        return PlanarField(divide_by_monomial(f.f1, {m, 0}), divide_by_monomial(f.f2, {m, 0}));
    };
    out.transformed = divide(full, out.divided_power);
    out.truncated = divide(trunc, min_trunc == INT32_MAX ? 0 : min_trunc);

    // axis polynomial: f2'(0, y2) from the truncation, Laurent powers cleared
    int min_k = 0;
    std::vector<std::pair<int, Rational>> axis_terms;
    for (const auto& [q, c] : out.truncated.f2.terms()) {
        if (q.q1 != 0) continue;
        axis_terms.push_back({q.q2, c});
        min_k = std::min(min_k, q.q2);
    }
    out.axis_clear_power = -min_k;
    std::vector<Rational> coeffs;
    for (const auto& [k, c] : axis_terms) {
        int deg = k + out.axis_clear_power;
        if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1);
        coeffs[deg] += c;
    }
    UniPoly cleared(std::move(coeffs));
    out.axis_zero_multiplicity = 0;
    if (!cleared.is_zero()) {
        std::vector<Rational> c = cleared.coeffs();
        size_t lead_zeros = 0;
        while (lead_zeros < c.size() && c[lead_zeros].is_zero()) ++lead_zeros;
        out.axis_zero_multiplicity = static_cast<int>(lead_zeros);
        c.erase(c.begin(), c.begin() + lead_zeros);
        out.axis_poly = UniPoly(std::move(c));
    }
    return out;
}

ElementarySingularity classify_root(const EdgeProblem& p, const RootInterval& root) {
    ElementarySingularity sing;
    sing.root = root;
    sing.c = root.approx;
    if (!root.simple) {
        sing.type = SingularityType::Degenerate;
        return sing;
    }

    // lambda1 = f1'(0, c), from the cleared Laurent restriction
    int min_k1 = 0;
    std::vector<std::pair<int, Rational>> f1_terms;
    for (const auto& [q, c] : p.truncated.f1.terms()) {
        if (q.q1 != 0) continue;
        f1_terms.push_back({q.q2, c});
        min_k1 = std::min(min_k1, q.q2);
    }
    int clear1 = -min_k1;
    std::vector<Rational> c1(1);
    for (const auto& [k, c] : f1_terms) {
        int deg = k + clear1;
        if (static_cast<int>(c1.size()) <= deg) c1.resize(deg + 1);
        c1[deg] += c;
    }
    UniPoly p1(std::move(c1));

    // lambda2 = d/dy2 [ y2 f2'(0,y2) ] at c = c^{1-m} * cleared'(c), where
    // cleared = axis_poly with the factored zero roots restored
    UniPoly cleared = p.axis_poly;
    for (int i = 0; i < p.axis_zero_multiplicity; ++i)
        cleared = cleared * UniPoly({Rational(0), Rational(1)});
    UniPoly dax = cleared.derivative();

    int sign_c = sign_at_root(UniPoly({Rational(0), Rational(1)}), p.axis_poly, root);
    auto pow_sign = [&](int s, int e) { return e % 2 == 0 ? 1 : s; };
    auto ipw = [](double x, int e) {
        double r = 1.0;
        for (int i = 0; i < std::abs(e); ++i) r *= x;
        return e >= 0 ? r : 1.0 / r;
    };

    int s1 = sign_at_root(p1, p.axis_poly, root);
    if (clear1 > 0) s1 *= pow_sign(sign_c, clear1);
    int s2 = sign_at_root(dax, p.axis_poly, root);
    int m = p.axis_clear_power;
    if (m != 1) s2 *= pow_sign(sign_c, std::abs(1 - m));

    sing.lambda1_sign = s1;
    sing.lambda2_sign = s2;
    double cval = root.approx;
    sing.lambda1 = p1.eval(cval) * ipw(cval, -clear1);
    sing.lambda2 = dax.eval(cval) * ipw(cval, 1 - m);
    if (s1 == 0 || s2 == 0) sing.type = SingularityType::Degenerate;
    else if (s1 * s2 < 0) sing.type = SingularityType::Saddle;
    else sing.type = SingularityType::Node;
    return sing;
}

CpmResult cpm_closed_forms(const Mat2Q& G) {
    const Rational &g11 = G(0, 0), &g12 = G(0, 1), &g22 = G(1, 1);
    if (g12.is_zero()) throw std::domain_error("cpm closed forms need g12 != 0");
    CpmResult r{Rational(), Rational(), QuadExt(Rational(), Rational(), Rational(1)),
                QuadExt(Rational(), Rational(), Rational(1)), QuadExt(Rational(), Rational(), Rational(1)),
                QuadExt(Rational(), Rational(), Rational(1)), QuadExt(Rational(), Rational(), Rational(1)),
                QuadExt(Rational(), Rational(), Rational(1)), false};
    r.delta = g11 * g22 - g12 * g12;
    if (!(Rational(0) < r.delta)) throw std::domain_error("cpm closed forms need det G > 0");
    r.discriminant = Rational(4) * g11 * g11 + Rational(9) * g22 * g22 + Rational(12) * g11 * g22 -
                     Rational(24) * g12 * g12;
    // discriminant = 24 delta + (2 g11 - 3 g22)^2, so it is positive
    Rational witness = Rational(24) * r.delta + (Rational(2) * g11 - Rational(3) * g22) *
                                                    (Rational(2) * g11 - Rational(3) * g22);
    if (!(witness == r.discriminant)) throw std::logic_error("discriminant identity failed");

    const Rational& D = r.discriminant;
    Rational inv4g12 = (Rational(4) * g12).reciprocal();
    Rational b = Rational(-3) * g22 - Rational(2) * g11;
    r.c_plus = QuadExt(b * inv4g12, inv4g12, D);
    r.c_minus = QuadExt(b * inv4g12, -inv4g12, D);
    Rational a = g11 - Rational::of(3, 2) * g22;
    r.lambda1_plus = QuadExt(a, Rational::of(-1, 2), D);
    r.lambda1_minus = QuadExt(a, Rational::of(1, 2), D);
    r.lambda2_plus = QuadExt(Rational(0), Rational(2), D);
    r.lambda2_minus = QuadExt(Rational(0), Rational(-2), D);

    // the roots satisfy 2 g12 c^2 + (3 g22 + 2 g11) c + 3 g12 = 0 exactly
    auto residual = [&](const QuadExt& c) {
        QuadExt q = Rational(2) * g12 * (c * c) + (Rational(3) * g22 + Rational(2) * g11) * c +
                    QuadExt(Rational(3) * g12, Rational(0), D);
        return q.a.is_zero() && q.b.is_zero();
    };
    if (!residual(r.c_plus) || !residual(r.c_minus)) throw std::logic_error("cpm root residual non-zero");

    r.claim_holds = (r.lambda1_plus * r.lambda2_plus).sign() < 0 &&
                    (r.lambda1_minus * r.lambda2_minus).sign() < 0;
    return r;
}

Portrait glue_portrait(const PlanarField& field, const NewtonDiagram& diagram,
                       std::vector<SectorConclusion> sectors,
                       std::vector<ElementarySingularity> singularities,
                       std::vector<SeparatrixCurve> power_curves) {
    Portrait out;
    out.diagram = diagram;
    out.singularities = std::move(singularities);

    // adjacency resolution for deferred vertices (one zero eigenvalue)
    auto vertex_sector = [&](int idx) -> SectorConclusion* {
        for (auto& s : sectors)
            if (s.kind == SectorSpec::Kind::Vertex && s.element == idx) return &s;
        return nullptr;
    };
    auto edge_sector = [&](int idx) -> SectorConclusion* {
        for (auto& s : sectors)
            if (s.kind == SectorSpec::Kind::Edge && s.element == idx) return &s;
        return nullptr;
    };
    const int nv = static_cast<int>(diagram.vertices.size());
    for (int i = 0; i < nv; ++i) {
        SectorConclusion* sc = vertex_sector(i);
        if (!sc || sc->verdict != SectorVerdict::Deferred) continue;
        bool lambda2_zero = sc->lambda && sc->lambda->second.is_zero();
        int neighbor = lambda2_zero ? i + 1 : i - 1;
        int between_edge = lambda2_zero ? i : i - 1;
        SectorConclusion* nb = (neighbor >= 0 && neighbor < nv) ? vertex_sector(neighbor) : nullptr;
        if (nb && (nb->verdict == SectorVerdict::NoCharacteristicOrbitsVertical ||
                   nb->verdict == SectorVerdict::NoCharacteristicOrbitsHorizontal)) {
            sc->verdict = nb->verdict;
            if (SectorConclusion* es = edge_sector(between_edge); es && es->verdict == SectorVerdict::Deferred)
                es->verdict = nb->verdict;
        } else {
            sc->verdict = SectorVerdict::Unresolved;
        }
    }
    for (auto& s : sectors)
        if (s.verdict == SectorVerdict::Deferred) s.verdict = SectorVerdict::Unresolved;

    // separatrices: invariant axes at saddle end vertices, then power curves
    bool t_axis_invariant = true;
    for (const auto& [q, c] : field.f2.terms())
        if (q.q2 == -1) t_axis_invariant = false;
    bool s_axis_invariant = true;
    for (const auto& [q, c] : field.f1.terms())
        if (q.q1 == -1) s_axis_invariant = false;

    if (t_axis_invariant && nv > 0) {
        SectorConclusion* sc = vertex_sector(0);
        if (sc && sc->verdict == SectorVerdict::SaddleBehavior)
            out.separatrices.push_back({SeparatrixCurve::Kind::AxisT, 0.0, 1, RootInterval{}});
    }
    if (s_axis_invariant && nv > 0) {
        SectorConclusion* sc = vertex_sector(nv - 1);
        if (sc && sc->verdict == SectorVerdict::SaddleBehavior)
            out.separatrices.push_back({SeparatrixCurve::Kind::AxisS, 0.0, 1, RootInterval{}});
    }
    for (auto& c : power_curves) out.separatrices.push_back(std::move(c));

    bool any_unresolved = false;
    for (const auto& s : sectors)
        if (s.verdict == SectorVerdict::Unresolved) any_unresolved = true;
    out.sectors = std::move(sectors);

    if (any_unresolved) out.classification = PortraitClass::Unresolved;
    else if (out.separatrices.size() == 2) out.classification = PortraitClass::Saddle;
    else out.classification = PortraitClass::Other;
    return out;
}

Portrait analyze_field(const PlanarField& field) {
    NewtonDiagram diagram = newton_diagram(support_of(field));
    std::vector<SectorConclusion> sectors;
    const int nv = static_cast<int>(diagram.vertices.size());
    for (int i = 0; i < nv; ++i) {
        VertexProblem vp = vertex_problem(field, diagram, i);
        SectorConclusion sc;
        sc.kind = SectorSpec::Kind::Vertex;
        sc.element = i;
        sc.description = "vertex " + exp_str(vp.vertex);
        sc.lambda = vp.lambda;
        sc.verdict = resonance_classify(vp);
        sectors.push_back(std::move(sc));
    }

    std::vector<ElementarySingularity> singularities;
    std::vector<SeparatrixCurve> curves;
    for (int e = 0; e < static_cast<int>(diagram.edges.size()); ++e) {
        const DiagramEdge& edge = diagram.edges[e];
        SectorConclusion sc;
        sc.kind = SectorSpec::Kind::Edge;
        sc.element = e;
        sc.description = "edge " + exp_str(edge.from) + "-" + exp_str(edge.to);

        // an edge adjoining a deferred vertex on its degenerate side is
        // settled by the same adjacency resolution; mark and let gluing decide
        bool subsumed = false;
        if (sectors[e].verdict == SectorVerdict::Deferred && sectors[e].lambda &&
            sectors[e].lambda->second.is_zero())
            subsumed = true;  // vertex e defers leftward across this edge
        if (e + 1 < nv && sectors[e + 1].verdict == SectorVerdict::Deferred &&
            sectors[e + 1].lambda && sectors[e + 1].lambda->first.is_zero())
            subsumed = true;  // vertex e+1 defers rightward across this edge
        if (subsumed) {
            sc.verdict = SectorVerdict::Deferred;
            sectors.push_back(std::move(sc));
            continue;
        }

        EdgeProblem ep = edge_power_transform(field, edge);
        if (ep.axis_poly.is_zero() || ep.axis_poly.degree() < 1) {
            // constant nonzero restriction has no singular axis points
            sc.verdict = ep.axis_poly.is_zero() ? SectorVerdict::Unresolved
                                                : SectorVerdict::NoCharacteristicOrbitsVertical;
            sectors.push_back(std::move(sc));
            continue;
        }
        std::vector<RootInterval> roots = isolate_real_roots(ep.axis_poly);
        if (roots.empty()) {
            sc.verdict = SectorVerdict::NoCharacteristicOrbitsVertical;
            sectors.push_back(std::move(sc));
            continue;
        }
        bool all_saddle = true;
        for (const auto& root : roots) {
            ElementarySingularity sing = classify_root(ep, root);
            if (sing.type == SingularityType::Saddle) {
                if (edge.R.second == 1) {
                    SeparatrixCurve c;
                    c.kind = SeparatrixCurve::Kind::PowerCurve;
                    c.c = sing.c;
                    c.power = -edge.R.first;
                    c.root = root;
                    curves.push_back(c);
                } else {
                    all_saddle = false;  // curve shape outside the supported family
                }
            } else {
                all_saddle = false;
            }
            singularities.push_back(std::move(sing));
        }
        sc.verdict = all_saddle ? SectorVerdict::SaddleBehavior : SectorVerdict::Unresolved;
        sectors.push_back(std::move(sc));
    }

    return glue_portrait(field, diagram, std::move(sectors), std::move(singularities), std::move(curves));
}

std::string portrait_to_json(const Portrait& portrait) {
    detail::ojson j;
    j["diagram"] = nlohmann::ordered_json::parse(diagram_to_json(portrait.diagram));
    detail::ojson sectors = detail::ojson::array();
    for (const auto& s : portrait.sectors) {
        detail::ojson rec;
        rec["element"] = s.description;
        rec["verdict"] = verdict_name(s.verdict);
        if (s.lambda) rec["lambda"] = {s.lambda->first.to_string(), s.lambda->second.to_string()};
        sectors.push_back(rec);
    }
    j["sectors"] = sectors;
    detail::ojson sings = detail::ojson::array();
    for (const auto& s : portrait.singularities) {
        detail::ojson rec;
        rec["c"] = s.c;
        rec["lambda1"] = s.lambda1;
        rec["lambda2"] = s.lambda2;
        rec["type"] = s.type == SingularityType::Saddle
                          ? "SADDLE"
                          : (s.type == SingularityType::Node ? "NODE" : "DEGENERATE");
        sings.push_back(rec);
    }
    j["singularities"] = sings;
    detail::ojson seps = detail::ojson::array();
    for (const auto& s : portrait.separatrices) {
        detail::ojson rec;
        switch (s.kind) {
            case SeparatrixCurve::Kind::AxisT: rec["kind"] = "axis-t"; break;
            case SeparatrixCurve::Kind::AxisS: rec["kind"] = "axis-s"; break;
            case SeparatrixCurve::Kind::PowerCurve: rec["kind"] = "power-curve"; break;
        }
        rec["c"] = s.c;
        rec["power"] = s.power;
        seps.push_back(rec);
    }
    j["separatrices"] = seps;
    switch (portrait.classification) {
        case PortraitClass::Saddle: j["classification"] = "SADDLE"; break;
        case PortraitClass::Other: j["classification"] = "OTHER"; break;
        case PortraitClass::Unresolved: j["classification"] = "UNRESOLVED"; break;
    }
    return j.dump(2);
}

}  // namespace umbrella
