#ifndef CFTRACK_GEOMETRY_HPP
#define CFTRACK_GEOMETRY_HPP

#include <Eigen/Core>

namespace cftrack {

/// Row-major indexing convention: arrays are (rows = height, cols = width).
using Image = Eigen::ArrayXXd;

struct Point
{
    double x = 0.0;
    double y = 0.0;
};

/// Axis-aligned box in 0-indexed frame coordinates (origin top-left, y down).
struct BoundingBox
{
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    Point center() const { return {x + w / 2.0, y + h / 2.0}; }
    double area() const { return w * h; }
    bool valid() const { return w > 0.0 && h > 0.0; }

    static BoundingBox centered(Point c, double w, double h) { return {c.x - w / 2.0, c.y - h / 2.0, w, h}; }

    /// Same center, both sides multiplied by `factor`.
    BoundingBox scaled(double factor) const { return centered(center(), w * factor, h * factor); }

    bool operator==(const BoundingBox&) const = default;
};

/// Grayscale frame with intensities in [0,1].
struct Frame
{
    Image intensity;
    int index = 1;

    Frame() = default;
    Frame(Image pixels, int frame_index);

    int width() const { return static_cast<int>(intensity.cols()); }
    int height() const { return static_cast<int>(intensity.rows()); }
};

struct Patch
{
    Image intensity;
    BoundingBox source_box;

    int width() const { return static_cast<int>(intensity.cols()); }
    int height() const { return static_cast<int>(intensity.rows()); }
};

double intersection_area(const BoundingBox& a, const BoundingBox& b);

/// Intersection over union with the continuous-area convention.
double iou(const BoundingBox& a, const BoundingBox& b);

bool intersects(const BoundingBox& a, const BoundingBox& b);

/// Overlap of `box` with [0,width]x[0,height]; may be invalid when disjoint.
BoundingBox intersect_frame(const BoundingBox& box, int width, int height);

/// Moves `box` inside the frame without resizing it; shrinks only the sides
/// that exceed the frame itself.
BoundingBox fit_inside(const BoundingBox& box, int width, int height);

/// Bilinear sample of `box` from `source` on an out_w x out_h grid, pixel
/// centers aligned, with out-of-range coordinates clamped to the nearest edge.
Image sample_box(const Image& source, const BoundingBox& box, int out_w, int out_h);

Patch extract_patch(const Frame& frame, const BoundingBox& box, int out_w, int out_h);

Patch resize(const Patch& patch, int out_w, int out_h);

/// Rec. 601 luma.
Image luma(const Image& red, const Image& green, const Image& blue);

}  // namespace cftrack

#endif
