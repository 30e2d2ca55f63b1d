#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"
#include "umbrella/foliation.hpp"
#include "umbrella/newton.hpp"

using namespace umbrella;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "umbrella_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

void write(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"umbrella"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

const char* kIdentityJet = R"({
  "A": [[1,0],[0,1]], "B": [[0,0],[0,0]],
  "C": [[0,0],[0,0]], "D": [[1,0],[0,1]],
  "higher": [], "mode": "symplectic",
  "order": 7, "epsilon": 0.05, "seed": 7
})";

// shear composition with g12 != 0 and E != 0: a genuinely generic jet
const char* kGenericJet = R"({
  "A": [[1,0],[-1,1]], "B": [[0,0],[0,0]],
  "C": [["1/6","1/3"],["-2/3","1"]], "D": [[1,1],[0,1]],
  "higher": [{"component": 2, "exp": [0,0,0,2], "coeff": "1/4"}],
  "mode": "linear-symplectic-only",
  "order": 7, "epsilon": 0.05, "seed": 7,
  "verify": {"jets": 4, "claim_samples": 300, "separatrix_fields": 1}
})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("derive writes the standard system deterministically") {
    fs::path cfg = temp_dir() / "id.json";
    write(cfg, kIdentityJet);
    fs::path out = temp_dir() / "derive1";
    REQUIRE(cli({"derive", "--config", cfg.string(), "--out", out.string()}) == 0);
    nlohmann::json charfield = nlohmann::json::parse(slurp(out / "charfield.json"));
    Series2 alpha = series2_from_json(charfield.at("alpha").dump(), 6);
    Series2 beta = series2_from_json(charfield.at("beta").dump(), 6);
    CHECK(alpha == Series2::from_terms(6, {{{3, 0}, Rational(-3)},
                                           {{1, 2}, Rational(-1)},
                                           {{5, 0}, Rational(-3)}}));
    CHECK(beta == Series2::from_terms(6, {{{0, 3}, Rational(1)},
                                          {{2, 1}, Rational(4)},
                                          {{4, 1}, Rational(7)}}));
    std::string lin = slurp(out / "linear_data.json");
    CHECK(lin.find("\"delta\": \"1\"") != std::string::npos);

    fs::path out2 = temp_dir() / "derive2";
    REQUIRE(cli({"derive", "--config", cfg.string(), "--out", out2.string()}) == 0);
    CHECK(slurp(out / "charfield.json") == slurp(out2 / "charfield.json"));
    CHECK(slurp(out / "linear_data.json") == slurp(out2 / "linear_data.json"));
    CHECK(slurp(out / "field.txt") == slurp(out2 / "field.txt"));
}

TEST_CASE("derive rejects a non-symplectic jet naming the identity") {
    fs::path cfg = temp_dir() / "bad.json";
    write(cfg, R"({
      "A": [[1,0],[0,1]], "B": [[0,0],[0,0]],
      "C": [[0,0],[0,0]], "D": [[2,0],[0,1]],
      "higher": [], "mode": "linear-symplectic-only"})");
    CHECK(cli({"derive", "--config", cfg.string(), "--out", (temp_dir() / "badout").string()}) == 1);
}

TEST_CASE("classify the standard field from a field file") {
    PlanarField f = canonical_field(characteristic_field(DeformationJet::identity(), 7));
    fs::path field = temp_dir() / "standard.txt";
    write(field, field_to_text(f));
    fs::path out = temp_dir() / "classify_std";
    REQUIRE(cli({"classify", "--field", field.string(), "--out", out.string()}) == 0);
    std::string diagram = slurp(out / "diagram.json");
    CHECK(diagram.find("[2,0]") != std::string::npos);
    CHECK(diagram.find("[0,2]") != std::string::npos);
    std::string portrait = slurp(out / "portrait.json");
    CHECK(portrait.find("\"classification\": \"SADDLE\"") != std::string::npos);
    std::string svg = slurp(out / "portrait.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("classify a generic normal-form field reports the parabolas") {
    // G = [[1,1/2],[1/2,1]] with a nonzero a02 so the diagram is generic
    std::string field_text =
        "# component q1 q2 coeff\n"
        "1 0 1 -1\n"
        "1 -1 2 1/5\n"
        "1 2 0 -3\n"
        "2 2 0 4\n"
        "2 1 1 1/7\n"
        "2 0 2 4/3\n"
        "2 4 -1 3\n";
    fs::path field = temp_dir() / "generic.txt";
    write(field, field_text);
    fs::path out = temp_dir() / "classify_gen";
    REQUIRE(cli({"classify", "--field", field.string(), "--out", out.string()}) == 0);
    std::string portrait = slurp(out / "portrait.json");
    CHECK(portrait.find("\"classification\": \"SADDLE\"") != std::string::npos);
    CHECK(portrait.find("power-curve") != std::string::npos);
    std::string diagram = slurp(out / "diagram.json");
    CHECK(diagram.find("[4,-1]") != std::string::npos);
    CHECK(diagram.find("[-1,2]") != std::string::npos);
}

TEST_CASE("classify rejects an unparseable field file") {
    fs::path field = temp_dir() / "empty.txt";
    write(field, "# nothing here\n");
    CHECK(cli({"classify", "--field", field.string(), "--out", (temp_dir() / "x").string()}) == 1);

    fs::path bad = temp_dir() / "outside_cone.txt";
    write(bad, "1 -2 0 1\n");
    CHECK(cli({"classify", "--field", bad.string(), "--out", (temp_dir() / "x2").string()}) == 1);
}

TEST_CASE("orbits emits csv traces") {
    PlanarField f = canonical_field(characteristic_field(DeformationJet::identity(), 7));
    fs::path field = temp_dir() / "std2.txt";
    write(field, field_to_text(f));
    fs::path out = temp_dir() / "orbits";
    fs::path cfg = temp_dir() / "orbcfg.json";
    write(cfg, R"({"orbit_count": 3, "seed": 5})");
    REQUIRE(cli({"orbits", "--config", cfg.string(), "--field", field.string(), "--out",
                 out.string()}) == 0);
    for (int i = 0; i < 3; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "orbit_%03d.csv", i);
        std::string csv = slurp(out / name);
        CHECK(csv.rfind("tau,t,s\n", 0) == 0);
    }
}

TEST_CASE("verify passes on a generic jet and is byte-reproducible") {
    fs::path cfg = temp_dir() / "gen.json";
    write(cfg, kGenericJet);
    fs::path out1 = temp_dir() / "verify1";
    fs::path out2 = temp_dir() / "verify2";
    REQUIRE(cli({"verify", "--config", cfg.string(), "--out", out1.string()}) == 0);
    REQUIRE(cli({"verify", "--config", cfg.string(), "--out", out2.string()}) == 0);
    CHECK(slurp(out1 / "verify_report.json") == slurp(out2 / "verify_report.json"));
    std::string rep = slurp(out1 / "verify_report.json");
    CHECK(rep.find("\"pass\": true") != std::string::npos);
    CHECK(rep.find("\"violations\": 0") != std::string::npos);
    CHECK(rep.find("\"generic\": true") != std::string::npos);
    CHECK(rep.find("\"classification\": \"SADDLE\"") != std::string::npos);
}

TEST_CASE("verify reports a non-generic jet without failing by default") {
    std::string cfg_text(kIdentityJet);
    cfg_text.insert(cfg_text.rfind('}'),
                    R"(, "verify": {"jets": 3, "claim_samples": 200, "separatrix_fields": 1})");
    fs::path cfg = temp_dir() / "idv.json";
    write(cfg, cfg_text);
    fs::path out = temp_dir() / "verify_id";
    REQUIRE(cli({"verify", "--config", cfg.string(), "--out", out.string()}) == 0);
    std::string rep = slurp(out / "verify_report.json");
    CHECK(rep.find("\"admitted\": false") != std::string::npos);

    // the policy flag turns the same situation into a verification failure
    cfg_text.insert(cfg_text.rfind('}'), R"(, "fail_on_non_generic": true)");
    fs::path cfg2 = temp_dir() / "idv2.json";
    write(cfg2, cfg_text);
    CHECK(cli({"verify", "--config", cfg2.string(), "--out", (temp_dir() / "verify_id2").string()}) ==
          2);
}

TEST_CASE("config keys reach the run") {
    fs::path cfg = temp_dir() / "keys.json";
    write(cfg, R"({
      "A": [[1,0],[0,1]], "B": [[0,0],[0,0]],
      "C": [[0,0],[0,0]], "D": [[1,0],[0,1]],
      "mode": "symplectic", "order": 4})");
    // order below 5 is rejected up front
    CHECK(cli({"derive", "--config", cfg.string(), "--out", (temp_dir() / "k").string()}) == 1);
    CHECK(cli({"derive", "--config", cfg.string(), "--order", "6", "--out",
               (temp_dir() / "k6").string()}) == 0);
}

TEST_SUITE_END();
