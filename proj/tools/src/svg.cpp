#include "svg.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "umbrella/rng.hpp"

namespace umbrella {

namespace {

constexpr int kSize = 640;

std::string px(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

struct Mapper {
    double eps;
    double x(double t) const { return (t + eps) / (2 * eps) * kSize; }
    double y(double s) const { return (eps - s) / (2 * eps) * kSize; }
};

void polyline(std::ostringstream& os, const Mapper& m, const std::vector<std::array<double, 3>>& pts,
              const char* color, double width) {
    if (pts.size() < 2) return;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
       << "\" points=\"";
    size_t stride = std::max<size_t>(1, pts.size() / 400);
    for (size_t i = 0; i < pts.size(); i += stride)
        os << px(m.x(pts[i][1])) << "," << px(m.y(pts[i][2])) << " ";
    const auto& last = pts.back();
    os << px(m.x(last[1])) << "," << px(m.y(last[2]));
    os << "\"/>\n";
}

}  // namespace

std::string portrait_svg(const PolyField& field, const Portrait& portrait, double epsilon,
                         uint64_t seed) {
    Mapper m{epsilon};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
       << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    os << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
    os << "<line x1=\"0\" y1=\"" << kSize / 2 << "\" x2=\"" << kSize << "\" y2=\"" << kSize / 2
       << "\" stroke=\"#ccc\" stroke-dasharray=\"4 4\"/>\n";
    os << "<line x1=\"" << kSize / 2 << "\" y1=\"0\" x2=\"" << kSize / 2 << "\" y2=\"" << kSize
       << "\" stroke=\"#ccc\" stroke-dasharray=\"4 4\"/>\n";

    IntegratorConfig cfg;
    cfg.exit_radius = epsilon;
    cfg.core_radius = epsilon * 1e-4;
    cfg.max_steps = 40000;

    Rng rng(seed);
    for (int i = 0; i < 16; ++i) {
        double th = 2.0 * M_PI * (i + 0.5) / 16.0 + 0.05 * rng.uniform();
        double r = epsilon * (0.35 + 0.4 * rng.uniform());
        double t0 = r * std::cos(th), s0 = r * std::sin(th);
        for (int dir : {1, -1}) {
            OrbitTrace tr = integrate_orbit(field, t0, s0, dir, cfg);
            polyline(os, m, tr.samples, "#999999", 1.0);
        }
    }

    for (const auto& sep : portrait.separatrices) {
        std::vector<std::array<double, 3>> pts;
        switch (sep.kind) {
            case SeparatrixCurve::Kind::AxisT:
                pts = {{0, -epsilon, 0}, {0, epsilon, 0}};
                break;
            case SeparatrixCurve::Kind::AxisS:
                pts = {{0, 0, -epsilon}, {0, 0, epsilon}};
                break;
            case SeparatrixCurve::Kind::PowerCurve: {
                for (int i = -200; i <= 200; ++i) {
                    double t = epsilon * i / 200.0;
                    double s = sep.c * std::pow(t, sep.power);
                    if (std::fabs(s) <= epsilon) pts.push_back({0, t, s});
                }
                break;
            }
        }
        polyline(os, m, pts, "#cc2222", 2.2);
    }

    os << "<circle cx=\"" << kSize / 2 << "\" cy=\"" << kSize / 2
       << "\" r=\"3\" fill=\"#222222\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace umbrella
