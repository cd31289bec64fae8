#ifndef CFTRACK_REDETECTION_HPP
#define CFTRACK_REDETECTION_HPP

#include <vector>

#include "cftrack/correlation_filter.hpp"
#include "cftrack/proposals.hpp"
#include "cftrack/search_window.hpp"

namespace cftrack {

struct RedetectionConfig
{
    double zeta = 1.0;           ///< weight of the motion prior
    double gamma1 = 0.5;         ///< position damping
    double region_scale = 4.0;   ///< search region as a multiple of the target box
    int expand_after = 5;        ///< consecutive failures before searching the whole frame
    double response_floor = 0.5; ///< fraction of the mean confident peak needed to move
};

/// (1 / 2b) exp(-|p_cand - p_prev| / b).
double motion_weight(Point p_prev, Point p_cand, double b);

struct Selection
{
    Proposal best;
    double response = 0.0;   ///< filter response maximum at the chosen candidate
    double objective = 0.0;  ///< response + zeta * motion_weight
    std::size_t index = 0;
};

/// Scores each candidate by its response maximum plus the motion prior and
/// returns the best; ties go to the higher response, then the earlier index.
/// The motion prior is measured from `current`'s center with b equal to the
/// diagonal of `current`'s search window.
Selection select_candidate(const FilterModel& model, const SearchWindow& window, const Frame& frame,
                           const std::vector<Proposal>& gated, const BoundingBox& current,
                           const RedetectionConfig& config);

Point damped_position(Point prev, Point chosen, double gamma1);

/// Region scanned for proposals after `consecutive_failures` failed frames
/// (not counting the current one): region_scale x the target, clipped to the
/// frame, or the whole frame once the failures reach expand_after.
BoundingBox redetection_region(const BoundingBox& current, int frame_w, int frame_h, int consecutive_failures,
                               const RedetectionConfig& config);

}  // namespace cftrack

#endif
