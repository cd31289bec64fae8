#include "cftrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cftrack {

Frame::Frame(Image pixels, int frame_index) : intensity(std::move(pixels)), index(frame_index)
{
    if (frame_index < 1)
        throw std::invalid_argument("frame index must be >= 1");
    if ((intensity < 0.0).any() || (intensity > 1.0).any() || !intensity.allFinite())
        throw std::invalid_argument("frame intensities must lie in [0,1]");
}

double intersection_area(const BoundingBox& a, const BoundingBox& b)
{
    const double iw = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
    const double ih = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    if (iw <= 0.0 || ih <= 0.0)
        return 0.0;
    return iw * ih;
}

double iou(const BoundingBox& a, const BoundingBox& b)
{
    const double inter = intersection_area(a, b);
    if (inter <= 0.0)
        return 0.0;
    const double uni = a.area() + b.area() - inter;
    return std::clamp(inter / uni, 0.0, 1.0);
}

bool intersects(const BoundingBox& a, const BoundingBox& b)
{
    return intersection_area(a, b) > 0.0;
}

BoundingBox intersect_frame(const BoundingBox& box, int width, int height)
{
    const double x0 = std::max(box.x, 0.0);
    const double y0 = std::max(box.y, 0.0);
    const double x1 = std::min(box.x + box.w, static_cast<double>(width));
    const double y1 = std::min(box.y + box.h, static_cast<double>(height));
    return {x0, y0, x1 - x0, y1 - y0};
}

BoundingBox fit_inside(const BoundingBox& box, int width, int height)
{
    BoundingBox out = box;
    out.w = std::min(out.w, static_cast<double>(width));
    out.h = std::min(out.h, static_cast<double>(height));
    out.x = std::clamp(out.x, 0.0, width - out.w);
    out.y = std::clamp(out.y, 0.0, height - out.h);
    return out;
}

Image sample_box(const Image& source, const BoundingBox& box, int out_w, int out_h)
{
    if (out_w < 1 || out_h < 1)
        throw std::invalid_argument("output size must be at least 1x1");
    if (!box.valid())
        throw std::invalid_argument("degenerate box");

    const Eigen::Index rows = source.rows();
    const Eigen::Index cols = source.cols();
    const double sx = box.w / out_w;
    const double sy = box.h / out_h;

    // Precompute the column taps; they are shared by every output row.
    std::vector<Eigen::Index> c0(out_w), c1(out_w);
    std::vector<double> fx(out_w);
    for (int j = 0; j < out_w; ++j) {
        const double u = std::clamp(box.x + (j + 0.5) * sx - 0.5, 0.0, static_cast<double>(cols - 1));
        c0[j] = static_cast<Eigen::Index>(std::floor(u));
        c1[j] = std::min(c0[j] + 1, cols - 1);
        fx[j] = u - c0[j];
    }

    Image out(out_h, out_w);
    for (int i = 0; i < out_h; ++i) {
        const double v = std::clamp(box.y + (i + 0.5) * sy - 0.5, 0.0, static_cast<double>(rows - 1));
        const auto r0 = static_cast<Eigen::Index>(std::floor(v));
        const auto r1 = std::min(r0 + 1, rows - 1);
        const double fy = v - r0;
        for (int j = 0; j < out_w; ++j) {
            const double top = source(r0, c0[j]) * (1.0 - fx[j]) + source(r0, c1[j]) * fx[j];
            const double bottom = source(r1, c0[j]) * (1.0 - fx[j]) + source(r1, c1[j]) * fx[j];
            out(i, j) = top * (1.0 - fy) + bottom * fy;
        }
    }
    return out;
}

Patch extract_patch(const Frame& frame, const BoundingBox& box, int out_w, int out_h)
{
    return {sample_box(frame.intensity, box, out_w, out_h), box};
}

Patch resize(const Patch& patch, int out_w, int out_h)
{
    const BoundingBox whole{0.0, 0.0, static_cast<double>(patch.width()), static_cast<double>(patch.height())};
    return {sample_box(patch.intensity, whole, out_w, out_h), patch.source_box};
}

Image luma(const Image& red, const Image& green, const Image& blue)
{
    return 0.299 * red + 0.587 * green + 0.114 * blue;
}

}  // namespace cftrack
