#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socnet/network.hpp"
#include "socnet/types.hpp"

namespace socnet {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

struct GemParams {
    double desired_edge_length = 128.0;
    int max_rounds_factor = 40;  // round cap = factor * n; one round updates every vertex once
    double initial_temperature = 128.0;
    double max_temperature = 256.0;
    double gravity = 1.0 / 16.0;
    double stop_temperature_fraction = 1.0 / 50.0;

    void validate() const;
};

struct LayoutResult {
    std::vector<std::string> names;
    std::vector<Point> positions;  // parallel to names
    std::uint64_t seed = 0;
    int rounds_used = 0;
};

/// GEM force-directed placement. Vertices are visited in a fresh random
/// permutation each round; each update combines gravity toward the
/// barycenter, repulsion from every vertex, spring attraction along positive
/// dyads and a random disturbance, and moves the vertex by its local
/// temperature. Temperatures grow on repeated moves in one direction and shrink
/// on oscillation or rotation. Stops when the mean temperature drops below
/// desired_edge_length * stop_temperature_fraction or the round cap is hit.
LayoutResult gem_layout(const AssociationMatrix& m, const GemParams& params, std::uint64_t seed);

/// Node radius affine in degree over [4, 24]; stroke width affine in the
/// association index over [0.5, 8]; viewBox fits everything with a 5% margin.
std::string render_svg(const AssociationMatrix& m, const LayoutResult& layout, const NetworkReport& report);

/// Undirected DOT graph with one edge per positive dyad.
std::string render_dot(const AssociationMatrix& m, const NetworkReport& report);

/// printf("%.6g") in the C locale.
std::string format_6g(double v);

}  // namespace socnet
