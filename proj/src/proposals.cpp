#include "cftrack/proposals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cftrack {

double EdgeMap::sum(int x0, int y0, int x1, int y1) const
{
    if (x1 <= x0 || y1 <= y0)
        return 0.0;
    return integral(y1, x1) - integral(y0, x1) - integral(y1, x0) + integral(y0, x0);
}

EdgeMap edge_map(const Eigen::ArrayXXd& img)
{
    const Eigen::Index rows = img.rows();
    const Eigen::Index cols = img.cols();
    if (rows < 3 || cols < 3)
        throw std::invalid_argument("edge map needs a frame of at least 3x3");

    auto at = [&](Eigen::Index r, Eigen::Index c) {
        return img(std::clamp<Eigen::Index>(r, 0, rows - 1), std::clamp<Eigen::Index>(c, 0, cols - 1));
    };

    EdgeMap edges;
    edges.magnitude.resize(rows, cols);
    edges.orientation.resize(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double gx = (at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1)) -
                              (at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1));
            const double gy = (at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1)) -
                              (at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1));
            edges.magnitude(r, c) = std::sqrt(gx * gx + gy * gy);
            double theta = std::atan2(gy, gx);
            if (theta < 0.0)
                theta += EIGEN_PI;
            if (theta >= EIGEN_PI)
                theta -= EIGEN_PI;
            edges.orientation(r, c) = theta;
        }
    }

    const double floor = kEdgeNoiseFloor * edges.magnitude.maxCoeff();
    edges.magnitude = (edges.magnitude < floor).select(0.0, edges.magnitude);

    edges.integral = Eigen::ArrayXXd::Zero(rows + 1, cols + 1);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            edges.integral(r + 1, c + 1) = edges.magnitude(r, c) + edges.integral(r, c + 1) +
                                           edges.integral(r + 1, c) - edges.integral(r, c);
    return edges;
}

EdgeMap edge_map(const Frame& frame) { return edge_map(frame.intensity); }

namespace {

int pixel_bound(double v, int limit)
{
    return std::clamp(static_cast<int>(std::lround(v)), 0, limit);
}

}  // namespace

double score_box(const EdgeMap& edges, const BoundingBox& box)
{
    const int w = edges.width();
    const int h = edges.height();
    const double total = edges.sum(pixel_bound(box.x, w), pixel_bound(box.y, h), pixel_bound(box.x + box.w, w),
                                   pixel_bound(box.y + box.h, h));
    const double mx = kInteriorShrink * box.w;
    const double my = kInteriorShrink * box.h;
    const double interior = edges.sum(pixel_bound(box.x + mx, w), pixel_bound(box.y + my, h),
                                      pixel_bound(box.x + box.w - mx, w), pixel_bound(box.y + box.h - my, h));
    const double band = total - interior;
    const double score = (interior - band) / std::pow(2.0 * (box.w + box.h), kPerimeterExponent);
    return std::max(0.0, score);
}

namespace {

std::vector<double> size_grid(double reference, const ProposalConfig& config)
{
    // Powers of the step, anchored so the reference size itself is on the grid.
    const double log_step = std::log(config.scale_step);
    const int k_min = static_cast<int>(std::ceil(std::log(config.scale_min) / log_step - 1e-9));
    const int k_max = static_cast<int>(std::floor(std::log(config.scale_max) / log_step + 1e-9));
    std::vector<double> sizes;
    for (int k = k_min; k <= k_max; ++k)
        sizes.push_back(reference * std::pow(config.scale_step, k));
    return sizes;
}

}  // namespace

void sort_by_objectness(std::vector<Proposal>& proposals)
{
    std::stable_sort(proposals.begin(), proposals.end(),
                     [](const Proposal& a, const Proposal& b) { return a.objectness > b.objectness; });
}

std::vector<Proposal> generate(const EdgeMap& edges, const BoundingBox& region, double reference_w,
                               double reference_h, const ProposalConfig& config)
{
    if (!(reference_w > 0.0 && reference_h > 0.0))
        throw std::invalid_argument("reference size must be positive");
    if (!(config.scale_step > 1.0) || !(config.scale_min > 0.0) || config.scale_max < config.scale_min)
        throw std::invalid_argument("invalid proposal scale grid");

    const BoundingBox area = intersect_frame(region, edges.width(), edges.height());
    std::vector<Proposal> boxes;
    if (!area.valid())
        return boxes;

    const auto widths = size_grid(reference_w, config);
    const auto heights = size_grid(reference_h, config);
    for (const double bw : widths) {
        if (bw > area.w)
            continue;
        const double sx = std::max(config.min_stride, config.stride_fraction * bw);
        for (const double bh : heights) {
            if (bh > area.h)
                continue;
            const double sy = std::max(config.min_stride, config.stride_fraction * bh);
            for (double y = area.y; y + bh <= area.y + area.h + 1e-9; y += sy) {
                for (double x = area.x; x + bw <= area.x + area.w + 1e-9; x += sx) {
                    const BoundingBox b{x, y, bw, bh};
                    boxes.push_back({b, score_box(edges, b)});
                }
            }
        }
    }
    return nms(std::move(boxes), config.nms_threshold, config.max_proposals);
}

std::vector<Proposal> nms(std::vector<Proposal> proposals, double iou_threshold, std::size_t limit)
{
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
        throw std::invalid_argument("NMS threshold must lie in (0,1]");
    sort_by_objectness(proposals);

    std::vector<Proposal> kept;
    for (const auto& candidate : proposals) {
        if (kept.size() >= limit)
            break;
        const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](const Proposal& k) {
            return iou(k.box, candidate.box) > iou_threshold;
        });
        if (!suppressed)
            kept.push_back(candidate);
    }
    return kept;
}

std::vector<Proposal> reject_band(const std::vector<Proposal>& proposals, const BoundingBox& current, double lo,
                                  double hi)
{
    if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
        throw std::invalid_argument("IoU band must satisfy 0 <= lo < hi <= 1");
    std::vector<Proposal> out;
    std::copy_if(proposals.begin(), proposals.end(), std::back_inserter(out), [&](const Proposal& p) {
        const double r = iou(p.box, current);
        return r >= lo && r <= hi;
    });
    return out;
}

std::vector<Proposal> top_k(std::vector<Proposal> proposals, std::size_t k)
{
    sort_by_objectness(proposals);
    if (proposals.size() > k)
        proposals.resize(k);
    return proposals;
}

}  // namespace cftrack
