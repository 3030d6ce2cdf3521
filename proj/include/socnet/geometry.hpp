#pragma once

#include <cmath>

namespace socnet {

/// Axis-aligned pixel rectangle, top-left origin, COCO (x, y, w, h) layout.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double area() const { return w * h; }
    double center_x() const { return x + w / 2.0; }
    double center_y() const { return y + h / 2.0; }

    bool operator==(const BBox&) const = default;
};

bool is_valid(const BBox& b);

/// Throws InputError naming `what` when the box is degenerate or non-finite.
void require_valid(const BBox& b, const char* what = "bbox");

/// Proximity predicate thresholds. Both are scale-free: the gap is measured
/// in mean face heights and the depth disparity as |ln(h_a / h_b)|.
struct ProximityParams {
    double max_gap = 2.0;
    double max_depth_disparity = 0.4054651081081644;  // ln(1.5)

    void validate() const;
};

double iou(const BBox& a, const BBox& b);

double center_distance(const BBox& a, const BBox& b);

/// Two faces are proximal when their centers are close relative to face size
/// and their heights (a stand-in for camera depth) are similar.
bool is_proximal(const BBox& a, const BBox& b, const ProximityParams& p);

}  // namespace socnet
