#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "socnet/error.hpp"
#include "socnet/geometry.hpp"

using namespace socnet;

namespace {

// Counts unit pixels covered by integer-aligned boxes.
double raster_iou(const BBox& a, const BBox& b) {
    long inter = 0;
    long uni = 0;
    for (int y = -50; y < 150; ++y) {
        for (int x = -50; x < 150; ++x) {
            const bool in_a = x >= a.x && x < a.x + a.w && y >= a.y && y < a.y + a.h;
            const bool in_b = x >= b.x && x < b.x + b.w && y >= b.y && y < b.y + b.h;
            inter += in_a && in_b;
            uni += in_a || in_b;
        }
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

TEST(Iou, IdenticalBoxesGiveOne) { EXPECT_EQ(iou({0, 0, 10, 10}, {0, 0, 10, 10}), 1.0); }

TEST(Iou, DisjointBoxesGiveZero) { EXPECT_EQ(iou({0, 0, 2, 2}, {5, 5, 2, 2}), 0.0); }

TEST(Iou, QuarterOverlapIsOneSeventh) {
    EXPECT_NEAR(iou({0, 0, 2, 2}, {1, 1, 2, 2}), 1.0 / 7.0, 1e-15);
    EXPECT_NEAR(raster_iou({0, 0, 2, 2}, {1, 1, 2, 2}), 1.0 / 7.0, 1e-15);
}

TEST(Iou, TouchingEdgesGiveZero) { EXPECT_EQ(iou({0, 0, 2, 2}, {2, 0, 2, 2}), 0.0); }

TEST(Iou, IdenticalLargeCoordinateBoxesGiveExactlyOne) {
    const BBox a{1e9 + 0.1, 3e8 + 0.7, 0.3, 0.9};
    EXPECT_EQ(iou(a, a), 1.0);
}

TEST(Iou, RejectsDegenerateBoxes) {
    EXPECT_THROW(iou({0, 0, 0, 1}, {0, 0, 1, 1}), InputError);
    EXPECT_THROW(iou({0, 0, 1, 1}, {0, 0, 1, -1}), InputError);
    EXPECT_THROW(iou({NAN, 0, 1, 1}, {0, 0, 1, 1}), InputError);
    EXPECT_THROW(iou({0, 0, 1, 1}, {0, INFINITY, 1, 1}), InputError);
}

TEST(Iou, MatchesRasterOracleOnIntegerBoxes) {
    std::mt19937 gen(7);
    std::uniform_int_distribution<int> pos(0, 60);
    std::uniform_int_distribution<int> side(1, 40);
    for (int t = 0; t < 300; ++t) {
        const BBox a{double(pos(gen)), double(pos(gen)), double(side(gen)), double(side(gen))};
        const BBox b{double(pos(gen)), double(pos(gen)), double(side(gen)), double(side(gen))};
        EXPECT_NEAR(iou(a, b), raster_iou(a, b), 1e-12) << t;
    }
}

TEST(Iou, PropertiesOnRandomBoxes) {
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> pos(-100, 100);
    std::uniform_real_distribution<double> side(0.1, 80);
    for (int t = 0; t < 2000; ++t) {
        const BBox a{pos(gen), pos(gen), side(gen), side(gen)};
        const BBox b{pos(gen), pos(gen), side(gen), side(gen)};
        const double v = iou(a, b);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
        EXPECT_EQ(v, iou(b, a));
        const bool disjoint = a.x + a.w <= b.x || b.x + b.w <= a.x || a.y + a.h <= b.y || b.y + b.h <= a.y;
        EXPECT_EQ(v == 0.0, disjoint);
        // common translation and scaling
        const double dx = pos(gen), dy = pos(gen), s = side(gen) / 10.0;
        const BBox ta{(a.x + dx) * s, (a.y + dy) * s, a.w * s, a.h * s};
        const BBox tb{(b.x + dx) * s, (b.y + dy) * s, b.w * s, b.h * s};
        EXPECT_NEAR(iou(ta, tb), v, 1e-9);
    }
}

TEST(CenterDistance, Examples) {
    EXPECT_EQ(center_distance({3, 4, 2, 2}, {3, 4, 2, 2}), 0.0);
    EXPECT_DOUBLE_EQ(center_distance({0, 0, 2, 2}, {3, 0, 2, 2}), 3.0);
    EXPECT_DOUBLE_EQ(center_distance({0, 0, 2, 2}, {3, 4, 2, 2}), 5.0);
    EXPECT_THROW(center_distance({0, 0, 2, 0}, {3, 4, 2, 2}), InputError);
}

TEST(CenterDistance, TriangleInequality) {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> pos(-500, 500);
    for (int t = 0; t < 500; ++t) {
        const BBox a{pos(gen), pos(gen), 5, 7}, b{pos(gen), pos(gen), 2, 9}, c{pos(gen), pos(gen), 11, 1};
        EXPECT_LE(center_distance(a, c), center_distance(a, b) + center_distance(b, c) + 1e-9);
        EXPECT_EQ(center_distance(a, b), center_distance(b, a));
    }
}

TEST(Proximity, DefaultsAreTwoHeightsAndLogOnePointFive) {
    const ProximityParams p;
    EXPECT_EQ(p.max_gap, 2.0);
    EXPECT_DOUBLE_EQ(p.max_depth_disparity, std::log(1.5));
}

TEST(Proximity, SameHeightCloseFacesAreProximal) {
    const ProximityParams p{2.0, 0.405};
    EXPECT_TRUE(is_proximal({0, 0, 100, 100}, {150, 0, 100, 100}, p));  // gap 1.5
    EXPECT_FALSE(is_proximal({0, 0, 100, 100}, {201, 0, 100, 100}, p));
}

TEST(Proximity, DepthDisparateFacesAreNot) {
    const ProximityParams p{2.0, 0.405};
    EXPECT_FALSE(is_proximal({0, 0, 100, 100}, {0, 0, 100, 300}, p));
    EXPECT_FALSE(is_proximal({0, 0, 100, 100}, {5000, 5000, 100, 300}, p));
}

TEST(Proximity, IdenticalBoxesAlwaysProximal) {
    const BBox a{10, 20, 30, 40};
    EXPECT_TRUE(is_proximal(a, a, ProximityParams{1e-9, 0.0}));
}

TEST(Proximity, RejectsBadParams) {
    const BBox a{0, 0, 1, 1};
    EXPECT_THROW(is_proximal(a, a, ProximityParams{0.0, 0.4}), InputError);
    EXPECT_THROW(is_proximal(a, a, ProximityParams{1.0, -0.1}), InputError);
}

TEST(Proximity, InvariantUnderTranslationAndScaling) {
    std::mt19937 gen(5);
    std::uniform_real_distribution<double> pos(-300, 300);
    std::uniform_real_distribution<double> side(20, 200);
    const ProximityParams p;
    for (int t = 0; t < 1000; ++t) {
        const BBox a{pos(gen), pos(gen), side(gen), side(gen)};
        const BBox b{pos(gen), pos(gen), side(gen), side(gen)};
        EXPECT_EQ(is_proximal(a, b, p), is_proximal(b, a, p));
        // power-of-two scale and integer shift keep every quantity exact
        const BBox ta{(a.x + 64) * 4, (a.y - 32) * 4, a.w * 4, a.h * 4};
        const BBox tb{(b.x + 64) * 4, (b.y - 32) * 4, b.w * 4, b.h * 4};
        const double gap = center_distance(a, b) / ((a.h + b.h) / 2.0);
        if (std::abs(gap - p.max_gap) > 1e-9) {
            EXPECT_EQ(is_proximal(ta, tb, p), is_proximal(a, b, p));
        }
    }
}
