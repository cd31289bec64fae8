#ifndef CFTRACK_PROPOSALS_HPP
#define CFTRACK_PROPOSALS_HPP

// Edge-based objectness proposals: a Sobel edge map, an interior-minus-border
// box score with perimeter normalization, sliding-window enumeration, and the
// usual post-processing (NMS, top-k, IoU band).

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "cftrack/geometry.hpp"

namespace cftrack {

struct EdgeMap
{
    Eigen::ArrayXXd magnitude;    ///< >= 0, same shape as the frame
    Eigen::ArrayXXd orientation;  ///< radians in [0, pi)
    Eigen::ArrayXXd integral;     ///< (rows+1) x (cols+1) summed-area table of magnitude

    int width() const { return static_cast<int>(magnitude.cols()); }
    int height() const { return static_cast<int>(magnitude.rows()); }

    /// Sum of magnitude over pixel columns [x0,x1) and rows [y0,y1).
    double sum(int x0, int y0, int x1, int y1) const;
};

struct Proposal
{
    BoundingBox box;
    double objectness = 0.0;
};

struct ProposalConfig
{
    double scale_min = 0.5;
    double scale_max = 2.0;
    double scale_step = 1.2;
    double stride_fraction = 0.05;
    double min_stride = 2.0;
    double nms_threshold = 0.8;
    std::size_t max_proposals = 300;
};

constexpr double kEdgeNoiseFloor = 0.05;
constexpr double kInteriorShrink = 0.125;
constexpr double kPerimeterExponent = 1.5;

EdgeMap edge_map(const Frame& frame);
EdgeMap edge_map(const Eigen::ArrayXXd& intensity);

double score_box(const EdgeMap& edges, const BoundingBox& box);

/// Every grid box inside `region` (clipped to the frame), scored, suppressed
/// and sorted by objectness, with grid order breaking ties. The size grid is
/// relative to `reference_w` x `reference_h`.
std::vector<Proposal> generate(const EdgeMap& edges, const BoundingBox& region, double reference_w,
                               double reference_h, const ProposalConfig& config);

/// Greedy suppression; keeps at most `limit` boxes.
std::vector<Proposal> nms(std::vector<Proposal> proposals, double iou_threshold,
                          std::size_t limit = static_cast<std::size_t>(-1));

std::vector<Proposal> reject_band(const std::vector<Proposal>& proposals, const BoundingBox& current, double lo,
                                  double hi);

std::vector<Proposal> top_k(std::vector<Proposal> proposals, std::size_t k);

/// Stable descending sort by objectness.
void sort_by_objectness(std::vector<Proposal>& proposals);

}  // namespace cftrack

#endif
