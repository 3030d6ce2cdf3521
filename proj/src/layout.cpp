#include "socnet/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "socnet/error.hpp"
#include "socnet/random.hpp"

namespace socnet {

namespace {

// Opening angles and sensitivities of the temperature rules.
constexpr double kCosOscillation = 0.70710678118654752;  // cos(pi/4): half of a pi/2 opening angle
constexpr double kSinRotation = 0.5;                     // sin(pi/6): half of a pi/3 opening angle
constexpr double kOscillationSensitivity = 0.5;
constexpr double kMaxSkew = 0.5;

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            case '\'':
                out += "&apos;";
                break;
            default:
                out.push_back(c);
        }
    }
    return out;
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void check_report(const AssociationMatrix& m, const NetworkReport& report) {
    if (report.individuals.size() != m.size()) {
        throw InputError("report and matrix cover different individuals");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (report.individuals[i].name != m.names()[i]) {
            throw InputError("report order differs from matrix order at '" + m.names()[i] + "'");
        }
    }
}

}  // namespace

std::string format_6g(double v) {
    if (v == 0.0) {
        return "0";  // also folds -0
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void GemParams::validate() const {
    const bool ok = desired_edge_length > 0.0 && max_rounds_factor > 0 && initial_temperature > 0.0 &&
                    max_temperature > 0.0 && gravity > 0.0 && stop_temperature_fraction > 0.0 &&
                    std::isfinite(desired_edge_length) && std::isfinite(initial_temperature) &&
                    std::isfinite(max_temperature) && std::isfinite(gravity) &&
                    std::isfinite(stop_temperature_fraction);
    if (!ok) {
        throw InputError("GEM parameters must all be positive and finite");
    }
}

LayoutResult gem_layout(const AssociationMatrix& m, const GemParams& params, std::uint64_t seed) {
    params.validate();
    const std::size_t n = m.size();
    if (n == 0) {
        throw InputError("layout needs at least one individual");
    }
    LayoutResult out;
    out.names = m.names();
    out.seed = seed;
    out.positions.assign(n, Point{});
    if (n == 1) {
        return out;
    }

    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && m(i, j) > 0.0) {
                adj[i].push_back(j);
            }
        }
    }

    Xorshift64Star rng(seed);
    const double len = params.desired_edge_length;
    const double len2 = len * len;
    const double side = len * std::sqrt(static_cast<double>(n));
    auto& pos = out.positions;
    for (auto& p : pos) {
        p.x = rng.uniform(-side / 2.0, side / 2.0);
        p.y = rng.uniform(-side / 2.0, side / 2.0);
    }
    Point bary_sum{};
    for (const auto& p : pos) {
        bary_sum.x += p.x;
        bary_sum.y += p.y;
    }
    std::vector<double> temp(n, std::min(params.initial_temperature, params.max_temperature));
    std::vector<double> skew(n, 0.0);
    std::vector<Point> last(n, Point{});
    const double rotation_sensitivity = 1.0 / (2.0 * static_cast<double>(n));
    const double stop = len * params.stop_temperature_fraction;
    const double nd = static_cast<double>(n);
    const long long round_cap = static_cast<long long>(params.max_rounds_factor) * static_cast<long long>(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (long long round = 0; round < round_cap; ++round) {
        for (std::size_t k = n; k > 1; --k) {
            std::swap(order[k - 1], order[rng.below(k)]);
        }
        for (const auto v : order) {
            const double mass = 1.0 + static_cast<double>(adj[v].size()) / 2.0;
            Point imp{(bary_sum.x / nd - pos[v].x) * params.gravity * mass,
                      (bary_sum.y / nd - pos[v].y) * params.gravity * mass};
            const double shake = len / 8.0 * (temp[v] / params.initial_temperature);
            imp.x += rng.uniform(-shake, shake);
            imp.y += rng.uniform(-shake, shake);
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v) {
                    continue;
                }
                const double dx = pos[v].x - pos[u].x;
                const double dy = pos[v].y - pos[u].y;
                const double d2 = dx * dx + dy * dy;
                if (d2 > 0.0) {
                    imp.x += dx * len2 / d2;
                    imp.y += dy * len2 / d2;
                }
            }
            for (const auto u : adj[v]) {
                const double dx = pos[v].x - pos[u].x;
                const double dy = pos[v].y - pos[u].y;
                const double d2 = dx * dx + dy * dy;
                imp.x -= dx * d2 / (len2 * mass);
                imp.y -= dy * d2 / (len2 * mass);
            }
            const double norm = std::sqrt(imp.x * imp.x + imp.y * imp.y);
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                continue;
            }
            const Point step{imp.x * temp[v] / norm, imp.y * temp[v] / norm};
            pos[v].x += step.x;
            pos[v].y += step.y;
            bary_sum.x += step.x;
            bary_sum.y += step.y;

            const double last_norm = std::sqrt(last[v].x * last[v].x + last[v].y * last[v].y);
            if (last_norm > 0.0) {
                const double denom = temp[v] * last_norm;
                const double cos_b = (step.x * last[v].x + step.y * last[v].y) / denom;
                const double sin_b = (last[v].x * step.y - last[v].y * step.x) / denom;
                if (std::abs(sin_b) >= kSinRotation) {
                    skew[v] += rotation_sensitivity * (sin_b > 0.0 ? 1.0 : -1.0);
                    skew[v] = std::clamp(skew[v], -kMaxSkew, kMaxSkew);
                }
                if (std::abs(cos_b) >= kCosOscillation) {
                    temp[v] *= 1.0 + kOscillationSensitivity * cos_b;
                }
                temp[v] *= 1.0 - std::abs(skew[v]);
                temp[v] = std::min(temp[v], params.max_temperature);
            }
            last[v] = step;
        }
        out.rounds_used = static_cast<int>(round + 1);
        const double mean_temp = std::accumulate(temp.begin(), temp.end(), 0.0) / nd;
        if (mean_temp < stop) {
            break;
        }
    }
    const Point center{bary_sum.x / nd, bary_sum.y / nd};
    for (auto& p : pos) {
        p.x -= center.x;
        p.y -= center.y;
    }
    return out;
}

std::string render_svg(const AssociationMatrix& m, const LayoutResult& layout, const NetworkReport& report) {
    check_report(m, report);
    const std::size_t n = m.size();
    std::vector<Point> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::find(layout.names.begin(), layout.names.end(), m.names()[i]);
        if (it == layout.names.end() || static_cast<std::size_t>(it - layout.names.begin()) >= layout.positions.size()) {
            throw InputError("layout has no position for '" + m.names()[i] + "'");
        }
        pos[i] = layout.positions[static_cast<std::size_t>(it - layout.names.begin())];
        if (!std::isfinite(pos[i].x) || !std::isfinite(pos[i].y)) {
            throw InputError("layout position for '" + m.names()[i] + "' is not finite");
        }
    }

    int dmin = std::numeric_limits<int>::max();
    int dmax = std::numeric_limits<int>::min();
    for (const auto& nm : report.individuals) {
        dmin = std::min(dmin, nm.degree);
        dmax = std::max(dmax, nm.degree);
    }
    auto radius = [&](int degree) {
        if (dmax == dmin) {
            return 14.0;
        }
        return 4.0 + 20.0 * static_cast<double>(degree - dmin) / static_cast<double>(dmax - dmin);
    };
    double wmax = 0.0;
    for (const double v : m.values()) {
        wmax = std::max(wmax, v);
    }
    auto stroke = [&](double w) { return 0.5 + 7.5 * w / wmax; };

    constexpr double font = 12.0;
    double minx = std::numeric_limits<double>::infinity();
    double miny = minx;
    double maxx = -minx;
    double maxy = -minx;
    std::vector<double> radii(n);
    for (std::size_t i = 0; i < n; ++i) {
        radii[i] = radius(report.individuals[i].degree);
        const double label_w = 0.6 * font * static_cast<double>(m.names()[i].size());
        minx = std::min(minx, pos[i].x - radii[i]);
        maxx = std::max(maxx, pos[i].x + radii[i] + 2.0 + label_w);
        miny = std::min(miny, pos[i].y - std::max(radii[i], font));
        maxy = std::max(maxy, pos[i].y + std::max(radii[i], font / 2.0));
    }
    const double margin = std::max(1.0, 0.05 * std::max(maxx - minx, maxy - miny));
    minx -= margin;
    miny -= margin;
    const double width = maxx - minx + margin;
    const double height = maxy - miny + margin;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + format_6g(minx) + " " +
           format_6g(miny) + " " + format_6g(width) + " " + format_6g(height) + "\" width=\"" + format_6g(width) +
           "\" height=\"" + format_6g(height) + "\">\n";
    out += "<rect x=\"" + format_6g(minx) + "\" y=\"" + format_6g(miny) + "\" width=\"" + format_6g(width) +
           "\" height=\"" + format_6g(height) + "\" fill=\"white\"/>\n";
    out += "<g id=\"edges\" stroke=\"#4a4a4a\" stroke-opacity=\"0.7\" stroke-linecap=\"round\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m(i, j) > 0.0) {
                out += "<line x1=\"" + format_6g(pos[i].x) + "\" y1=\"" + format_6g(pos[i].y) + "\" x2=\"" +
                       format_6g(pos[j].x) + "\" y2=\"" + format_6g(pos[j].y) + "\" stroke-width=\"" +
                       format_6g(stroke(m(i, j))) + "\"/>\n";
            }
        }
    }
    out += "</g>\n";
    out += "<g id=\"nodes\" fill=\"#e07b39\" stroke=\"#333333\" stroke-width=\"1\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += "<circle cx=\"" + format_6g(pos[i].x) + "\" cy=\"" + format_6g(pos[i].y) + "\" r=\"" +
               format_6g(radii[i]) + "\"/>\n";
    }
    out += "</g>\n";
    out += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#111111\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        out += "<text x=\"" + format_6g(pos[i].x + radii[i] + 2.0) + "\" y=\"" + format_6g(pos[i].y + font / 3.0) +
               "\">" + xml_escape(m.names()[i]) + "</text>\n";
    }
    out += "</g>\n";
    out += "</svg>\n";
    return out;
}

std::string render_dot(const AssociationMatrix& m, const NetworkReport& report) {
    check_report(m, report);
    std::string out = "graph socnet {\n";
    for (const auto& nm : report.individuals) {
        out += "  " + dot_quote(nm.name) + " [degree=" + std::to_string(nm.degree) +
               ", strength=" + format_6g(nm.strength) + ", eigenvector=" + format_6g(nm.eigenvector) + "];\n";
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m(i, j) > 0.0) {
                out += "  " + dot_quote(m.names()[i]) + " -- " + dot_quote(m.names()[j]) +
                       " [weight=" + format_6g(m(i, j)) + "];\n";
            }
        }
    }
    out += "}\n";
    return out;
}

}  // namespace socnet
