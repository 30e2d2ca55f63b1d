#include "cli_app.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "svg.hpp"
#include "umbrella/analysis.hpp"
#include "umbrella/foliation.hpp"
#include "umbrella/newton.hpp"
#include "umbrella/numerics.hpp"

namespace umbrella {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct RunConfig {
    DeformationJet jet;
    bool has_jet = false;
    int order = 7;
    double epsilon = 0.05;
    uint64_t seed = 20111001;
    std::string out = "out";
    IntegratorConfig integrator;
    bool fail_on_non_generic = false;
    int verify_jets = 25;
    int verify_claim_samples = 2000;
    int verify_separatrix_fields = 3;
    int orbit_count = 12;
};

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    nlohmann::json j = nlohmann::json::parse(text);

    RunConfig cfg;
    if (j.contains("A")) {
        cfg.jet = jet_from_json(text);
        cfg.has_jet = true;
    }
    cfg.order = j.value("order", 7);
    cfg.epsilon = j.value("epsilon", 0.05);
    cfg.seed = j.value("seed", static_cast<uint64_t>(20111001));
    cfg.out = j.value("out", std::string("out"));
    if (j.contains("integrator")) {
        const auto& i = j.at("integrator");
        cfg.integrator.rel_tol = i.value("rel_tol", cfg.integrator.rel_tol);
        cfg.integrator.abs_tol = i.value("abs_tol", cfg.integrator.abs_tol);
        cfg.integrator.max_steps = i.value("max_steps", cfg.integrator.max_steps);
        double core_factor = i.value("core_radius_factor", 1e-4);
        cfg.integrator.core_radius = core_factor * cfg.epsilon;
    } else {
        cfg.integrator.core_radius = 1e-4 * cfg.epsilon;
    }
    cfg.integrator.exit_radius = cfg.epsilon;
    cfg.fail_on_non_generic = j.value("fail_on_non_generic", false);
    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        cfg.verify_jets = v.value("jets", cfg.verify_jets);
        cfg.verify_claim_samples = v.value("claim_samples", cfg.verify_claim_samples);
        cfg.verify_separatrix_fields = v.value("separatrix_fields", cfg.verify_separatrix_fields);
    }
    cfg.orbit_count = j.value("orbit_count", cfg.orbit_count);

    // the order bound is enforced after flag overrides
    if (!(cfg.epsilon > 0.0) || !(cfg.integrator.rel_tol > 0.0) ||
        !(cfg.integrator.core_radius > 0.0) || cfg.integrator.max_steps <= 0 || cfg.orbit_count <= 0)
        throw std::runtime_error("config: numeric settings must be positive");
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

PlanarField field_from_options(const std::string& field_path, const RunConfig& cfg) {
    if (!field_path.empty()) return field_from_text(read_file(field_path), cfg.order);
    if (!cfg.has_jet) throw std::runtime_error("need --field or a config with a jet");
    cfg.jet.validate();
    return canonical_field(characteristic_field(cfg.jet, cfg.order));
}

/// Edge truncation of the generic system for given G: both parabolas
/// s = c t^2 are exactly invariant, which keeps the numeric separatrix
/// check well posed.
PolyField truncation_field(double g11, double g12, double g22) {
    return PolyField::from_terms({{1, 1, -2 * g12}, {3, 0, -3 * g22}},
                                 {{2, 1, 4 * g11}, {4, 0, 6 * g12}});
}

int cmd_derive(const RunConfig& cfg) {
    cfg.jet.validate();
    CharField field = characteristic_field(cfg.jet, cfg.order);
    write_file(fs::path(cfg.out) / "charfield.json", char_field_to_json(field) + "\n");
    write_file(fs::path(cfg.out) / "linear_data.json", linear_data_to_json(field.lin) + "\n");
    write_file(fs::path(cfg.out) / "field.txt", field_to_text(canonical_field(field)));
    std::cout << "wrote " << (fs::path(cfg.out) / "charfield.json").string() << "\n";
    return 0;
}

int cmd_diagram(const RunConfig& cfg, const std::string& field_path) {
    PlanarField field = field_from_options(field_path, cfg);
    NewtonDiagram d = newton_diagram(support_of(field));
    write_file(fs::path(cfg.out) / "diagram.json", diagram_to_json(d) + "\n");
    std::cout << diagram_to_json(d) << "\n";
    return 0;
}

int cmd_classify(const RunConfig& cfg, const std::string& field_path) {
    PlanarField field = field_from_options(field_path, cfg);
    Portrait p = analyze_field(field);
    write_file(fs::path(cfg.out) / "diagram.json", diagram_to_json(p.diagram) + "\n");
    write_file(fs::path(cfg.out) / "portrait.json", portrait_to_json(p) + "\n");
    PolyField pf = PolyField::from_planar(field);
    write_file(fs::path(cfg.out) / "portrait.svg", portrait_svg(pf, p, cfg.epsilon, cfg.seed));
    const char* klass = p.classification == PortraitClass::Saddle
                            ? "SADDLE"
                            : (p.classification == PortraitClass::Other ? "OTHER" : "UNRESOLVED");
    std::cout << "classification: " << klass << "\n";
    return 0;
}

int cmd_orbits(const RunConfig& cfg, const std::string& field_path) {
    PlanarField field = field_from_options(field_path, cfg);
    PolyField pf = PolyField::from_planar(field);
    Rng rng(cfg.seed);
    for (int i = 0; i < cfg.orbit_count; ++i) {
        double th = 2.0 * M_PI * (i + 0.5) / cfg.orbit_count + 0.03 * rng.uniform();
        double r = cfg.epsilon * (0.3 + 0.5 * rng.uniform());
        OrbitTrace tr = integrate_orbit(pf, r * std::cos(th), r * std::sin(th), 1, cfg.integrator);
        char name[32];
        std::snprintf(name, sizeof(name), "orbit_%03d.csv", i);
        write_file(fs::path(cfg.out) / name, orbit_to_csv(tr));
    }
    std::cout << "wrote " << cfg.orbit_count << " orbit traces to " << cfg.out << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    ojson report;
    report["seed"] = cfg.seed;
    bool all_pass = true;

    // golden systems
    {
        CharField f = characteristic_field(DeformationJet::identity(), 7);
        Series2 ea(6), eb(6);
        ea = Series2::from_terms(6, {{{3, 0}, Rational(-3)}, {{1, 2}, Rational(-1)}, {{5, 0}, Rational(-3)}});
        eb = Series2::from_terms(6, {{{0, 3}, Rational(1)}, {{2, 1}, Rational(4)}, {{4, 1}, Rational(7)}});
        bool ok = f.alpha == ea && f.beta == eb;

        DeformationJet pert = DeformationJet::identity();
        pert.higher.push_back({1, Exp4{{0, 0, 0, 2}}, Rational::of(1, 3)});
        CharField g = characteristic_field(pert, 7);
        Series2 pa = Series2::from_terms(6, {{{3, 0}, Rational(-3)},
                                             {{1, 2}, Rational(-1)},
                                             {{5, 0}, Rational(-3)},
                                             {{2, 2}, Rational::of(-4, 3)},
                                             {{3, 2}, Rational::of(-4, 3)}});
        Series2 pb = Series2::from_terms(6, {{{2, 1}, Rational(4)},
                                             {{0, 3}, Rational(1)},
                                             {{4, 1}, Rational(7)},
                                             {{5, 1}, Rational(4)}});
        bool ok2 = g.alpha == pa && g.beta == pb;
        report["goldens"] = {{"standard", ok}, {"perturbed", ok2}};
        all_pass = all_pass && ok && ok2;
    }

    // coefficient formulas on sampled jets
    {
        Rng rng(cfg.seed ^ 0xc0ffee);
        int mismatches = 0;
        for (int i = 0; i < cfg.verify_jets; ++i) {
            DeformationJet jet = sample_jet(rng, 6);
            CharField cf = characteristic_field(jet, 5);
            if (!(extract_coefficients(cf) == coefficient_formulas(cf.lin))) ++mismatches;
        }
        report["coefficient_formulas"] = {{"jets", cfg.verify_jets}, {"mismatches", mismatches}};
        all_pass = all_pass && mismatches == 0;
    }

    // claim Monte-Carlo
    {
        ClaimReport cr = verify_claim(cfg.verify_claim_samples, cfg.seed ^ 0x5eed);
        report["claim"] = nlohmann::ordered_json::parse(claim_report_to_json(cr));
        all_pass = all_pass && cr.pass;
    }

    // separatrix checks on sampled normal-form fields plus the standard axis
    {
        Rng rng(cfg.seed ^ 0x5e9a);
        ojson seps = ojson::array();
        bool sep_ok = true;
        int done = 0;
        while (done < cfg.verify_separatrix_fields) {
            SymplecticSample s = sample_symplectic(rng);
            double g11 = 0, g12 = 0, g22 = 0;
            for (int r = 0; r < 2; ++r) {
                g11 += s.M(r, 2) * s.M(r, 2) + s.M(r + 2, 2) * s.M(r + 2, 2);
                g12 += s.M(r, 2) * s.M(r, 3) + s.M(r + 2, 2) * s.M(r + 2, 3);
                g22 += s.M(r, 3) * s.M(r, 3) + s.M(r + 2, 3) * s.M(r + 2, 3);
            }
            if (std::fabs(g12) < 1e-3) continue;
            ++done;
            double disc = 4 * g11 * g11 + 9 * g22 * g22 + 12 * g11 * g22 - 24 * g12 * g12;
            double cplus = (-(3 * g22 + 2 * g11) + std::sqrt(disc)) / (4 * g12);
            double kappa = std::fabs(2 * std::sqrt(disc) /
                                     (g11 - 1.5 * g22 - 0.5 * std::sqrt(disc)));
            PolyField pf = truncation_field(g11, g12, g22);
            IntegratorConfig sep_cfg = cfg.integrator;
            sep_cfg.rel_tol = 1e-12;
            sep_cfg.abs_tol = 1e-20;
            sep_cfg.core_radius = separatrix_core_radius(0.02, kappa);
            SeparatrixReport rep = verify_separatrix(pf, cplus, 2, 0.02, 1e-4, sep_cfg);
            seps.push_back(nlohmann::ordered_json::parse(separatrix_report_to_json(rep)));
            sep_ok = sep_ok && rep.pass;
        }
        CharField std_field = characteristic_field(DeformationJet::identity(), 7);
        SeparatrixReport axis =
            verify_separatrix(PolyField::from_char_field(std_field), 0.0, 1, 0.02, 1e-4, cfg.integrator);
        seps.push_back(nlohmann::ordered_json::parse(separatrix_report_to_json(axis)));
        sep_ok = sep_ok && axis.pass;
        report["separatrix"] = seps;
        all_pass = all_pass && sep_ok;
    }

    // the configured jet
    if (cfg.has_jet) {
        ojson jets;
        cfg.jet.validate();
        CharField cf = characteristic_field(cfg.jet, cfg.order);
        bool generic = is_generic(cf);
        jets["generic"] = generic;
        jets["g12"] = cf.lin.G(0, 1).to_string();
        NonvanishingReport nv = check_nonvanishing(cf, 0.01, 0.1, 10000, cfg.seed);
        jets["nonvanishing"] = nlohmann::ordered_json::parse(nonvanishing_report_to_json(nv));
        bool jet_ok = nv.pass;
        if (cf.lin.G(0, 1).to_double() != 0.0 && std::fabs(cf.lin.G(0, 1).to_double()) > 1e-6) {
            CpmResult cpm = cpm_closed_forms(cf.lin.G);
            jets["claim"] = {{"admitted", true}, {"lambda_signs_opposite", cpm.claim_holds}};
            jet_ok = jet_ok && cpm.claim_holds;
        } else {
            jets["claim"] = {{"admitted", false}, {"note", "g12 below admission threshold"}};
            if (cfg.fail_on_non_generic) jet_ok = false;
        }
        Portrait p = analyze_field(canonical_field(cf));
        const char* klass = p.classification == PortraitClass::Saddle
                                ? "SADDLE"
                                : (p.classification == PortraitClass::Other ? "OTHER" : "UNRESOLVED");
        jets["classification"] = klass;
        if (generic) jet_ok = jet_ok && p.classification == PortraitClass::Saddle;
        else if (cfg.fail_on_non_generic) jet_ok = false;
        report["config_jet"] = jets;
        all_pass = all_pass && jet_ok;
    }

    report["pass"] = all_pass;
    write_file(fs::path(cfg.out) / "verify_report.json", report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return all_pass ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"characteristic-foliation toolkit for deformed unfolded Whitney umbrellas"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, field_path, out_override, format = "json";
    int order_override = 0;
    double epsilon_override = 0.0;
    uint64_t seed_override = 0;
    bool seed_set = false;

    app.add_option("--config", config_path, "run configuration (JSON)");
    app.add_option("--field", field_path, "planar field file (text format)");
    app.add_option("--order", order_override, "series truncation order (>= 5)");
    app.add_option("--epsilon", epsilon_override, "sector/ball radius");
    auto* seed_opt = app.add_option("--seed", seed_override, "random seed");
    app.add_option("--out", out_override, "output directory");
    app.add_option("--format", format, "output format hint: json|csv|svg");

    auto* derive = app.add_subcommand("derive", "jet -> characteristic field series");
    auto* diagram = app.add_subcommand("diagram", "field -> Newton diagram");
    auto* classify = app.add_subcommand("classify", "field -> diagram, portrait, sketch");
    auto* orbits = app.add_subcommand("orbits", "field -> sampled orbit CSV traces");
    auto* verify = app.add_subcommand("verify", "run the verification battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    seed_set = seed_opt->count() > 0;

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (order_override > 0) cfg.order = order_override;
        if (epsilon_override > 0.0) {
            cfg.epsilon = epsilon_override;
            cfg.integrator.exit_radius = epsilon_override;
            cfg.integrator.core_radius = 1e-4 * epsilon_override;
        }
        if (seed_set) cfg.seed = seed_override;
        if (!out_override.empty()) cfg.out = out_override;
        if (cfg.order < 5) throw std::runtime_error("order must be >= 5");

        if (derive->parsed()) {
            if (!cfg.has_jet) throw std::runtime_error("derive needs a config with a jet");
            return cmd_derive(cfg);
        }
        if (diagram->parsed()) return cmd_diagram(cfg, field_path);
        if (classify->parsed()) return cmd_classify(cfg, field_path);
        if (orbits->parsed()) return cmd_orbits(cfg, field_path);
        if (verify->parsed()) {
            if (!cfg.has_jet && config_path.empty())
                throw std::runtime_error("verify needs --config");
            return cmd_verify(cfg);
        }
    } catch (const JetValidationError& e) {
        std::cerr << "validation error: " << e.what() << " [" << e.identity << "]\n";
        return 1;
    } catch (const FieldParseError& e) {
        std::cerr << "field parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace umbrella
