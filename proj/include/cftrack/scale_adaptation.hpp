#ifndef CFTRACK_SCALE_ADAPTATION_HPP
#define CFTRACK_SCALE_ADAPTATION_HPP

#include <optional>
#include <vector>

#include "cftrack/correlation_filter.hpp"
#include "cftrack/proposals.hpp"
#include "cftrack/search_window.hpp"

namespace cftrack {

/// How a scale candidate is scored: the response at zero shift (the
/// candidate is already centered) or the maximum over the response map.
enum class ScaleResponse { Aligned, Peak };

struct ScaleConfig
{
    double gamma2 = 0.5;
    std::size_t keep_top = 200;
    double band_lo = 0.6;
    double band_hi = 0.9;
    double accept_ratio = 1.0;
    double region_scale = 2.5;  ///< proposal region around the current box
    int stride = 1;             ///< run the scale stream every `stride` confident frames
    ScaleResponse response = ScaleResponse::Aligned;
};

/// Re-centers `raw` proposals on `current`, drops duplicate sizes (keeping
/// the better-scored one), keeps the top `keep_top`, then applies the IoU band.
std::vector<Proposal> scale_candidates(const std::vector<Proposal>& raw, const BoundingBox& current,
                                       const ScaleConfig& config);

/// Generates proposals around `current` and filters them as above.
std::vector<Proposal> scale_candidates(const EdgeMap& edges, const BoundingBox& current, const ScaleConfig& config,
                                       const ProposalConfig& proposal_config);

struct ScaleChoice
{
    std::optional<BoundingBox> box;
    double response = 0.0;          ///< best candidate's aligned response
    double current_response = 0.0;  ///< aligned response of `current` itself
};

/// Response for each candidate (see ScaleResponse); the best one is
/// returned only if it beats accept_ratio times the current box's response.
ScaleChoice best_scale(const FilterModel& model, const SearchWindow& window, const Frame& frame,
                       const BoundingBox& current, const std::vector<Proposal>& candidates,
                       const ScaleConfig& config);

struct Size
{
    double w = 0.0;
    double h = 0.0;
};

Size damped_size(Size prev, Size chosen, double gamma2);

}  // namespace cftrack

#endif
