#pragma once

#include <algorithm>

namespace ctxlab {

// Axis-aligned box in pixel coordinates, (x, y) top-left corner.
struct BBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    int x2() const { return x + w; }
    int y2() const { return y + h; }
    long long area() const { return static_cast<long long>(w) * h; }

    bool operator==(const BBox&) const = default;
};

inline double iou(const BBox& a, const BBox& b) {
    const int ix = std::max(0, std::min(a.x2(), b.x2()) - std::max(a.x, b.x));
    const int iy = std::max(0, std::min(a.y2(), b.y2()) - std::max(a.y, b.y));
    const double inter = static_cast<double>(ix) * iy;
    const double uni = static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

inline bool inside_image(const BBox& b, int height, int width) {
    return b.x >= 0 && b.y >= 0 && b.w > 0 && b.h > 0 && b.x2() <= width && b.y2() <= height;
}

}  // namespace ctxlab
