#include <doctest.h>

#include <cmath>

#include "umbrella/analysis.hpp"
#include "umbrella/foliation.hpp"
#include "umbrella/numerics.hpp"
#include "umbrella/rng.hpp"

using namespace umbrella;

namespace {

PlanarField standard_field() {
    return canonical_field(characteristic_field(DeformationJet::identity(), 7));
}

/// Seven-coefficient canonical field for linear data (G, E): the shape of
/// the generic system's displayed terms.
PlanarField normal_form_planar(const Mat2Q& G, const Mat2Q& E) {
    Mat2Q Gp = inverse2(G);
    Mat2Q Ep = Mat2Q{} - (Gp * E);
    Rational a02 = G(0, 1) * Ep(0, 0) + G(1, 1) * Ep(0, 1);
    Rational b12 = Rational(2) * E(0, 0) - Rational(2) * (G(0, 0) * Ep(0, 0) + G(0, 1) * Ep(0, 1));
    Rational b03 = Gp(0, 0) - E(0, 0) * Ep(0, 0) - E(1, 0) * Ep(0, 1);
    Series2 f1 = Series2::from_terms(7, {{{0, 1}, Rational(-2) * G(0, 1)},
                                         {{-1, 2}, a02},
                                         {{2, 0}, Rational(-3) * G(1, 1)}});
    Series2 f2 = Series2::from_terms(7, {{{2, 0}, Rational(4) * G(0, 0)},
                                         {{1, 1}, b12},
                                         {{0, 2}, b03},
                                         {{4, -1}, Rational(6) * G(0, 1)}});
    return PlanarField(std::move(f1), std::move(f2));
}

Mat2Q ref_g() {
    Mat2Q g;
    g(0, 0) = Rational(1);
    g(0, 1) = g(1, 0) = Rational::of(1, 2);
    g(1, 1) = Rational(1);
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("vertex rescaling extracts the spectrum") {
    PlanarField f = standard_field();
    NewtonDiagram d = newton_diagram(support_of(f));

    VertexProblem v0 = vertex_problem(f, d, 0);
    CHECK(v0.vertex == Exp2{2, 0});
    CHECK(v0.lambda.first == Rational(-3));
    CHECK(v0.lambda.second == Rational(4));
    CHECK(v0.rescaled.f1.coefficient({0, 0}) == Rational(-3));
    CHECK(v0.rescaled.f2.coefficient({0, 0}) == Rational(4));
    CHECK(v0.cone.r_lower == std::pair<int, int>{1, 0});
    CHECK(v0.cone.r_star == std::pair<int, int>{-1, 1});

    VertexProblem v1 = vertex_problem(f, d, 1);
    CHECK(v1.lambda.first == Rational(-1));
    CHECK(v1.lambda.second == Rational(1));

    CHECK_THROWS(vertex_rescale(f, {3, 3}, v0.cone, false, false));
}

TEST_CASE("generic vertex (0,1) has a vanishing second eigenvalue") {
    PlanarField f = normal_form_planar(ref_g(), Mat2Q{});
    // E = 0 kills a02; add it back to get the three-vertex shape
    f.f1 = f.f1 + Series2::monomial(7, {-1, 2}, Rational::of(1, 5));
    NewtonDiagram d = newton_diagram(support_of(f));
    REQUIRE(d.vertices.size() == 3);
    VertexProblem v = vertex_problem(f, d, 1);
    CHECK(v.vertex == Exp2{0, 1});
    CHECK(v.lambda.first == Rational(-1));  // -2 g12
    CHECK(v.lambda.second == Rational(0));
}

TEST_CASE("resonance classification on the reference systems") {
    PlanarField f = standard_field();
    NewtonDiagram d = newton_diagram(support_of(f));
    CHECK(resonance_classify(vertex_problem(f, d, 0)) == SectorVerdict::SaddleBehavior);
    CHECK(resonance_classify(vertex_problem(f, d, 1)) == SectorVerdict::SaddleBehavior);

    PlanarField g = normal_form_planar(ref_g(), Mat2Q{});
    g.f1 = g.f1 + Series2::monomial(7, {-1, 2}, Rational::of(1, 5));
    NewtonDiagram dg = newton_diagram(support_of(g));
    CHECK(resonance_classify(vertex_problem(g, dg, 0)) ==
          SectorVerdict::NoCharacteristicOrbitsVertical);
    CHECK(resonance_classify(vertex_problem(g, dg, 1)) == SectorVerdict::Deferred);
    CHECK(resonance_classify(vertex_problem(g, dg, 2)) ==
          SectorVerdict::NoCharacteristicOrbitsHorizontal);
}

TEST_CASE("edge truncation keeps exactly the segment terms") {
    PlanarField f = standard_field();
    NewtonDiagram d = newton_diagram(support_of(f));
    PlanarField t = edge_truncate(f, d.edges[0]);
    CHECK(t.f1 == Series2::from_terms(6, {{{2, 0}, Rational(-3)}, {{0, 2}, Rational(-1)}}));
    CHECK(t.f2 == Series2::from_terms(6, {{{0, 2}, Rational(1)}, {{2, 0}, Rational(4)}}));

    PlanarField g = normal_form_planar(ref_g(), Mat2Q{});
    NewtonDiagram dg = newton_diagram(support_of(g));
    // edge (4,-1)..(0,1): f1 keeps -2 g12 s - 3 g22 t^2, f2 keeps 4 g11 t^2 + 6 g12 t^4/s
    PlanarField tg = edge_truncate(g, dg.edges[0]);
    CHECK(tg.f1 == Series2::from_terms(7, {{{0, 1}, Rational(-1)}, {{2, 0}, Rational(-3)}}));
    CHECK(tg.f2 == Series2::from_terms(7, {{{2, 0}, Rational(4)}, {{4, -1}, Rational(3)}}));

    DiagramEdge degenerate{{2, 0}, {2, 0}, {0, 1}};
    CHECK_THROWS_AS(edge_truncate(f, degenerate), std::invalid_argument);
}

TEST_CASE("edge transform reproduces the standard rescaled system") {
    PlanarField f = standard_field();
    NewtonDiagram d = newton_diagram(support_of(f));
    EdgeProblem ep = edge_power_transform(f, d.edges[0]);
    CHECK(ep.k1 == 1);
    CHECK(ep.k2 == 0);
    CHECK(ep.divided_power == 2);
    // y1' = y1 (-3 - y2^2 - 3 y1^2), y2' = y2 (7 + 2 y2^2 + 10 y1^2)
    CHECK(ep.transformed.f1 ==
          Series2::from_terms(6, {{{0, 0}, Rational(-3)}, {{0, 2}, Rational(-1)}, {{2, 0}, Rational(-3)}}));
    CHECK(ep.transformed.f2 ==
          Series2::from_terms(6, {{{0, 0}, Rational(7)}, {{0, 2}, Rational(2)}, {{2, 0}, Rational(10)}}));
    // truncation drops the (4,0) contributions
    CHECK(ep.truncated.f1 ==
          Series2::from_terms(6, {{{0, 0}, Rational(-3)}, {{0, 2}, Rational(-1)}}));
    CHECK(ep.truncated.f2 ==
          Series2::from_terms(6, {{{0, 0}, Rational(7)}, {{0, 2}, Rational(2)}}));
    // axis polynomial 7 + 2 y^2 has no real roots
    CHECK(ep.axis_poly == UniPoly({Rational(7), Rational(0), Rational(2)}));
    CHECK(isolate_real_roots(ep.axis_poly).empty());
}

TEST_CASE("edge transform reproduces the generic rescaled system") {
    for (int variant = 0; variant < 2; ++variant) {
        Mat2Q G = ref_g();
        if (variant == 1) {
            G(0, 0) = Rational(2);
            G(0, 1) = G(1, 0) = Rational::of(-2, 3);
            G(1, 1) = Rational::of(5, 4);
        }
        const Rational &g11 = G(0, 0), &g12 = G(0, 1), &g22 = G(1, 1);
        PlanarField g = normal_form_planar(G, Mat2Q{});
        NewtonDiagram dg = newton_diagram(support_of(g));
        PlanarField trunc = edge_truncate(g, dg.edges[0]);
        EdgeProblem ep = edge_power_transform(trunc, dg.edges[0]);
        CHECK(ep.k1 == 1);
        CHECK(ep.k2 == 0);
        CHECK(ep.divided_power == 2);
        // y1' = y1 (-2 g12 y2 - 3 g22), y2' = y2 (4 g12 y2 + (6 g22 + 4 g11) + 6 g12 / y2)
        CHECK(ep.transformed.f1 ==
              Series2::from_terms(7, {{{0, 1}, Rational(-2) * g12}, {{0, 0}, Rational(-3) * g22}}));
        CHECK(ep.transformed.f2 ==
              Series2::from_terms(7, {{{0, 1}, Rational(4) * g12},
                                      {{0, 0}, Rational(6) * g22 + Rational(4) * g11},
                                      {{0, -1}, Rational(6) * g12}}));
        CHECK(ep.axis_poly == UniPoly({Rational(6) * g12, Rational(6) * g22 + Rational(4) * g11,
                                       Rational(4) * g12}));
        CHECK(ep.axis_clear_power == 1);
    }
}

TEST_CASE("pushforward consistency at sampled points") {
    Rng rng(404);
    auto check_edge = [&](const PlanarField& f, const DiagramEdge& edge) {
        EdgeProblem ep = edge_power_transform(f, edge);
        for (int i = 0; i < 100; ++i) {
            double t = std::pow(10.0, rng.uniform(-2.0, -0.5));
            double s = std::pow(10.0, rng.uniform(-2.0, -0.5));
            double f1v = f.f1.evaluate(t, s), f2v = f.f2.evaluate(t, s);
            double y1 = std::pow(t, (double)ep.k1) * std::pow(s, (double)ep.k2);
            double y2 = std::pow(t, (double)edge.R.first) * std::pow(s, (double)edge.R.second);
            double lhs1 = ep.k1 * f1v + ep.k2 * f2v;  // ydot1 / y1 in x-coordinates
            double lhs2 = edge.R.first * f1v + edge.R.second * f2v;
            double scale = std::pow(y1, ep.divided_power);
            double rhs1 = scale * ep.transformed.f1.evaluate(y1, y2);
            double rhs2 = scale * ep.transformed.f2.evaluate(y1, y2);
            CHECK(lhs1 == doctest::Approx(rhs1).epsilon(1e-10));
            CHECK(lhs2 == doctest::Approx(rhs2).epsilon(1e-10));
        }
    };
    PlanarField f = standard_field();
    NewtonDiagram d = newton_diagram(support_of(f));
    check_edge(f, d.edges[0]);
    PlanarField g = normal_form_planar(ref_g(), Mat2Q{});
    NewtonDiagram dg = newton_diagram(support_of(g));
    check_edge(g, dg.edges[0]);

    // random canonical fields with a usable diagram
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Series2::Term> t1, t2;
        for (int i = 0; i < 4; ++i) {
            t1.push_back({{static_cast<int>(rng.int_in(0, 4)), static_cast<int>(rng.int_in(0, 4))},
                          Rational::of(rng.int_in(-5, 5), rng.int_in(1, 4))});
            t2.push_back({{static_cast<int>(rng.int_in(0, 4)), static_cast<int>(rng.int_in(0, 4))},
                          Rational::of(rng.int_in(-5, 5), rng.int_in(1, 4))});
        }
        PlanarField rf(Series2::from_terms(7, std::move(t1)), Series2::from_terms(7, std::move(t2)));
        std::vector<Exp2> sup = support_of(rf);
        if (sup.empty()) continue;
        NewtonDiagram rd = newton_diagram(sup);
        for (const auto& e : rd.edges) check_edge(rf, e);
    }
}

TEST_CASE("sturm isolation examples") {
    // y^2 + 5y + 3/2: roots (-5 +- sqrt(19))/2
    UniPoly q({Rational::of(3, 2), Rational(5), Rational(1)});
    auto roots = isolate_real_roots(q);
    REQUIRE(roots.size() == 2);
    double sq19 = std::sqrt(19.0);
    CHECK(roots[0].approx == doctest::Approx((-5 - sq19) / 2).epsilon(1e-12));
    CHECK(roots[1].approx == doctest::Approx((-5 + sq19) / 2).epsilon(1e-12));
    CHECK(roots[0].simple);
    CHECK(roots[1].simple);
    for (const auto& r : roots) CHECK(std::fabs(q.eval(r.approx)) < 1e-9);

    // y^2 - 1 -> {-1, 1}
    auto pm = isolate_real_roots(UniPoly({Rational(-1), Rational(0), Rational(1)}));
    REQUIRE(pm.size() == 2);
    CHECK(pm[0].approx == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pm[1].approx == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(isolate_real_roots(UniPoly({Rational(7), Rational(0), Rational(2)})).empty());
    CHECK_THROWS(isolate_real_roots(UniPoly::zero()));

    // (y-1)^2 (y+2): two distinct roots, one multiple
    UniPoly m = UniPoly({Rational(-1), Rational(1)}) * UniPoly({Rational(-1), Rational(1)}) *
                UniPoly({Rational(2), Rational(1)});
    auto mr = isolate_real_roots(m);
    REQUIRE(mr.size() == 2);
    CHECK(mr[0].simple);        // -2
    CHECK_FALSE(mr[1].simple);  // 1 (double)
}

TEST_CASE("sturm isolation matches the quadratic formula on random inputs") {
    Rng rng(606);
    for (int rep = 0; rep < 1000; ++rep) {
        Rational a = Rational::of(rng.int_in(-9, 9), rng.int_in(1, 5));
        Rational b = Rational::of(rng.int_in(-9, 9), rng.int_in(1, 5));
        Rational c = Rational::of(rng.int_in(-9, 9), rng.int_in(1, 5));
        UniPoly p({c, b, a});
        if (p.is_zero()) continue;
        auto roots = isolate_real_roots(p);
        if (a.is_zero()) {
            if (b.is_zero()) CHECK(roots.empty());
            else {
                REQUIRE(roots.size() == 1);
                CHECK(roots[0].approx ==
                      doctest::Approx((-c / b).to_double()).epsilon(1e-12));
            }
            continue;
        }
        double ad = a.to_double(), bd = b.to_double(), cd = c.to_double();
        double disc = bd * bd - 4 * ad * cd;
        Rational disc_exact = b * b - Rational(4) * a * c;
        if (disc_exact.sign() < 0) CHECK(roots.empty());
        else if (disc_exact.is_zero()) {
            REQUIRE(roots.size() == 1);
            CHECK(roots[0].approx == doctest::Approx(-bd / (2 * ad)).epsilon(1e-12));
        } else {
            REQUIRE(roots.size() == 2);
            double r1 = (-bd - std::sqrt(disc)) / (2 * ad);
            double r2 = (-bd + std::sqrt(disc)) / (2 * ad);
            if (r1 > r2) std::swap(r1, r2);
            CHECK(roots[0].approx == doctest::Approx(r1).epsilon(1e-11));
            CHECK(roots[1].approx == doctest::Approx(r2).epsilon(1e-11));
        }
    }
}

TEST_CASE("exact sign at an algebraic root") {
    UniPoly f({Rational(-2), Rational(0), Rational(1)});  // y^2 - 2
    auto roots = isolate_real_roots(f);
    REQUIRE(roots.size() == 2);
    const RootInterval& sqrt2 = roots[1];
    CHECK(sign_at_root(UniPoly({Rational::of(-3, 2), Rational(1)}), f, sqrt2) < 0);  // sqrt2 < 3/2
    CHECK(sign_at_root(UniPoly({Rational(-1), Rational(1)}), f, sqrt2) > 0);         // sqrt2 > 1
    CHECK(sign_at_root(f, f, sqrt2) == 0);
}

TEST_CASE("root classification at the reference G") {
    PlanarField g = normal_form_planar(ref_g(), Mat2Q{});
    NewtonDiagram dg = newton_diagram(support_of(g));
    EdgeProblem ep = edge_power_transform(edge_truncate(g, dg.edges[0]), dg.edges[0]);
    auto roots = isolate_real_roots(ep.axis_poly);
    REQUIRE(roots.size() == 2);
    double sq19 = std::sqrt(19.0);

    ElementarySingularity minus = classify_root(ep, roots[0]);  // c_-
    CHECK(minus.c == doctest::Approx((-5 - sq19) / 2).epsilon(1e-10));
    CHECK(minus.lambda1 == doctest::Approx((-1 + sq19) / 2).epsilon(1e-6));
    CHECK(minus.lambda2 == doctest::Approx(-2 * sq19).epsilon(1e-6));
    CHECK(minus.type == SingularityType::Saddle);

    ElementarySingularity plus = classify_root(ep, roots[1]);  // c_+
    CHECK(plus.c == doctest::Approx((-5 + sq19) / 2).epsilon(1e-10));
    CHECK(plus.lambda1 == doctest::Approx((-1 - sq19) / 2).epsilon(1e-6));
    CHECK(plus.lambda2 == doctest::Approx(2 * sq19).epsilon(1e-6));
    CHECK(plus.type == SingularityType::Saddle);
    CHECK(plus.lambda1_sign * plus.lambda2_sign < 0);
    CHECK(minus.lambda1_sign * minus.lambda2_sign < 0);
}

TEST_CASE("degenerate axis root is flagged") {
    // synthetic truncated problem with axis polynomial (y-1)^2
    EdgeProblem ep;
    ep.edge = DiagramEdge{{2, 0}, {0, 2}, {-1, 1}};
    ep.k1 = 1;
    ep.k2 = 0;
    ep.truncated = PlanarField(Series2::monomial(7, {0, 0}, Rational(1)), Series2(7));
    ep.axis_poly = UniPoly({Rational(1), Rational(-2), Rational(1)});
    ep.axis_clear_power = 0;
    ep.axis_zero_multiplicity = 0;
    auto roots = isolate_real_roots(ep.axis_poly);
    REQUIRE(roots.size() == 1);
    CHECK_FALSE(roots[0].simple);
    CHECK(classify_root(ep, roots[0]).type == SingularityType::Degenerate);
}

TEST_CASE("closed forms for c_plus_minus and the spectral pairs") {
    CpmResult r = cpm_closed_forms(ref_g());
    CHECK(r.discriminant == Rational(19));
    CHECK(r.delta == Rational::of(3, 4));
    CHECK(r.c_plus.a == Rational::of(-5, 2));
    CHECK(r.c_plus.b == Rational::of(1, 2));
    CHECK(r.c_minus.b == Rational::of(-1, 2));
    double sq19 = std::sqrt(19.0);
    CHECK(r.c_plus.to_double() == doctest::Approx((-5 + sq19) / 2).epsilon(1e-14));
    CHECK(r.lambda1_plus.to_double() == doctest::Approx(-(1 + sq19) / 2).epsilon(1e-14));
    CHECK(r.lambda2_plus.to_double() == doctest::Approx(2 * sq19).epsilon(1e-14));
    CHECK(r.lambda2_minus.to_double() == doctest::Approx(-2 * sq19).epsilon(1e-14));
    CHECK(r.claim_holds);

    // numeric residual of the quadratic at the roots
    for (const QuadExt& c : {r.c_plus, r.c_minus}) {
        double cv = c.to_double();
        CHECK(std::fabs(1.0 * cv * cv + 5.0 * cv + 1.5) < 1e-12);
    }

    Mat2Q diag = Mat2Q::identity();
    CHECK_THROWS_AS(cpm_closed_forms(diag), std::domain_error);  // g12 = 0
}

TEST_CASE("discriminant identity and the claim over random data") {
    Rng rng(808);
    for (int rep = 0; rep < 1000; ++rep) {
        Rational g11 = Rational::of(rng.int_in(1, 40), rng.int_in(1, 6));
        Rational g22 = Rational::of(rng.int_in(1, 40), rng.int_in(1, 6));
        Rational g12 = Rational::of(rng.int_in(-20, 20), rng.int_in(1, 6));
        Rational delta = g11 * g22 - g12 * g12;
        Rational disc = Rational(4) * g11 * g11 + Rational(9) * g22 * g22 +
                        Rational(12) * g11 * g22 - Rational(24) * g12 * g12;
        CHECK(disc == Rational(24) * delta +
                          (Rational(2) * g11 - Rational(3) * g22) * (Rational(2) * g11 - Rational(3) * g22));
        if (g12.is_zero() || !(Rational(0) < delta)) continue;
        Mat2Q G;
        G(0, 0) = g11;
        G(0, 1) = G(1, 0) = g12;
        G(1, 1) = g22;
        CpmResult r = cpm_closed_forms(G);
        CHECK(r.claim_holds);
        CHECK((r.lambda1_plus * r.lambda2_plus).sign() < 0);
        CHECK((r.lambda1_minus * r.lambda2_minus).sign() < 0);
    }
}

TEST_CASE("portrait: standard umbrella is a saddle along the axes") {
    Portrait p = analyze_field(standard_field());
    CHECK(p.classification == PortraitClass::Saddle);
    REQUIRE(p.separatrices.size() == 2);
    CHECK(p.separatrices[0].kind == SeparatrixCurve::Kind::AxisT);
    CHECK(p.separatrices[1].kind == SeparatrixCurve::Kind::AxisS);
    for (const auto& s : p.sectors) CHECK(s.verdict != SectorVerdict::Unresolved);
}

TEST_CASE("portrait: generic jet gives the two parabolic separatrices") {
    Rng rng(909);
    int done = 0;
    while (done < 5) {
        DeformationJet jet = sample_jet(rng, 6);
        CharField cf = characteristic_field(jet, 5);
        if (!is_generic(cf)) continue;
        ++done;
        Portrait p = analyze_field(canonical_field(cf));
        REQUIRE(p.classification == PortraitClass::Saddle);
        REQUIRE(p.separatrices.size() == 2);
        CpmResult cpm = cpm_closed_forms(cf.lin.G);
        double expect_lo = std::min(cpm.c_plus.to_double(), cpm.c_minus.to_double());
        double expect_hi = std::max(cpm.c_plus.to_double(), cpm.c_minus.to_double());
        std::vector<double> got;
        for (const auto& s : p.separatrices) {
            CHECK(s.kind == SeparatrixCurve::Kind::PowerCurve);
            CHECK(s.power == 2);
            got.push_back(s.c);
        }
        std::sort(got.begin(), got.end());
        CHECK(got[0] == doctest::Approx(expect_lo).epsilon(1e-9));
        CHECK(got[1] == doctest::Approx(expect_hi).epsilon(1e-9));
    }
}

TEST_CASE("portrait: exact a02 cancellation leaves the verdict open") {
    // E = G S with S = [[g22,-g12],[-g12,1]] makes a02 = 0 while g12 != 0,
    // so the left end of the diagram collapses and the deferred middle
    // vertex has no neighbor to resolve it
    DeformationJet jet;
    jet.B = Mat2Q{};
    jet.D = Mat2Q::identity();
    jet.D(0, 1) = Rational(1);
    jet.A = inverse2(jet.D.transpose());
    jet.C = jet.A;  // D^{-1} C symmetric by construction
    CharField f = characteristic_field(jet, 7);
    CoeffRecord r = extract_coefficients(f);
    CHECK(r.a11 == Rational(-2));
    CHECK(r.a02 == Rational(0));
    CHECK(r.b12 == Rational(4));
    CHECK(r.b03 == Rational(4));
    CHECK_FALSE(is_generic(f));

    Portrait p = analyze_field(canonical_field(f));
    CHECK(p.diagram.vertices.size() == 2);
    CHECK(p.diagram.vertices[0] == Exp2{4, -1});
    CHECK(p.diagram.vertices[1] == Exp2{0, 1});
    CHECK(p.classification == PortraitClass::Unresolved);
}

TEST_CASE("portrait: unresolved sector propagates") {
    PlanarField f = standard_field();
    NewtonDiagram d = newton_diagram(support_of(f));
    std::vector<SectorConclusion> sectors;
    sectors.push_back({SectorSpec::Kind::Vertex, 0, "vertex (2,0)", SectorVerdict::SaddleBehavior,
                       std::make_pair(Rational(-3), Rational(4))});
    sectors.push_back({SectorSpec::Kind::Vertex, 1, "vertex (0,2)", SectorVerdict::Unresolved,
                       std::make_pair(Rational(-1), Rational(1))});
    sectors.push_back({SectorSpec::Kind::Edge, 0, "edge", SectorVerdict::NoCharacteristicOrbitsVertical,
                       std::nullopt});
    Portrait p = glue_portrait(f, d, std::move(sectors), {}, {});
    CHECK(p.classification == PortraitClass::Unresolved);
}

TEST_CASE("portrait json carries the expected fields") {
    Portrait p = analyze_field(standard_field());
    std::string js = portrait_to_json(p);
    CHECK(js.find("\"classification\": \"SADDLE\"") != std::string::npos);
    CHECK(js.find("\"sectors\"") != std::string::npos);
    CHECK(js.find("\"separatrices\"") != std::string::npos);
    CHECK(js.find("axis-t") != std::string::npos);
}

TEST_SUITE_END();
