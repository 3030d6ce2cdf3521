#include "socnet/geometry.hpp"

#include <algorithm>
#include <string>

#include "socnet/error.hpp"

namespace socnet {

bool is_valid(const BBox& b) {
    return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) && std::isfinite(b.h) &&
           b.w > 0.0 && b.h > 0.0;
}

void require_valid(const BBox& b, const char* what) {
    if (!is_valid(b)) {
        throw InputError(std::string(what) + " must have finite coordinates and positive width/height");
    }
}

void ProximityParams::validate() const {
    if (!(max_gap > 0.0) || !std::isfinite(max_gap)) {
        throw InputError("proximity.max_gap must be > 0");
    }
    if (!(max_depth_disparity >= 0.0) || !std::isfinite(max_depth_disparity)) {
        throw InputError("proximity.max_depth_disparity must be >= 0");
    }
}

double iou(const BBox& a, const BBox& b) {
    require_valid(a, "iou: first box");
    require_valid(b, "iou: second box");
    if (a == b) {
        return 1.0;  // (x + w) - x can round away from w
    }
    const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
    const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    if (ix <= 0.0 || iy <= 0.0) {
        return 0.0;
    }
    const double inter = ix * iy;
    const double uni = a.area() + b.area() - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

double center_distance(const BBox& a, const BBox& b) {
    require_valid(a, "center_distance: first box");
    require_valid(b, "center_distance: second box");
    return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

bool is_proximal(const BBox& a, const BBox& b, const ProximityParams& p) {
    p.validate();
    const double gap = center_distance(a, b) / ((a.h + b.h) / 2.0);
    const double disparity = std::abs(std::log(a.h / b.h));
    return gap <= p.max_gap && disparity <= p.max_depth_disparity;
}

}  // namespace socnet
