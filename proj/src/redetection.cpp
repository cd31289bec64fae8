#include "cftrack/redetection.hpp"

#include <cmath>
#include <stdexcept>

namespace cftrack {

double motion_weight(Point p_prev, Point p_cand, double b)
{
    if (!(b > 0.0))
        throw std::invalid_argument("motion prior scale b must be positive");
    const double d = std::hypot(p_cand.x - p_prev.x, p_cand.y - p_prev.y);
    return std::exp(-d / b) / (2.0 * b);
}

Selection select_candidate(const FilterModel& model, const SearchWindow& window, const Frame& frame,
                           const std::vector<Proposal>& gated, const BoundingBox& current,
                           const RedetectionConfig& config)
{
    if (gated.empty())
        throw std::invalid_argument("no re-detection candidates");

    const Point p_prev = current.center();
    const double b = window.diagonal(current);

    Selection sel;
    for (std::size_t i = 0; i < gated.size(); ++i) {
        const double response = detect(model, window.sample(frame, gated[i].box)).maxCoeff();
        const double objective = response + config.zeta * motion_weight(p_prev, gated[i].box.center(), b);
        const bool better = i == 0 || objective > sel.objective ||
                            (objective == sel.objective && response > sel.response);
        if (better) {
            sel.best = gated[i];
            sel.response = response;
            sel.objective = objective;
            sel.index = i;
        }
    }
    return sel;
}

Point damped_position(Point prev, Point chosen, double gamma1)
{
    if (!(gamma1 >= 0.0 && gamma1 <= 1.0))
        throw std::invalid_argument("gamma1 must lie in [0,1]");
    return {(1.0 - gamma1) * prev.x + gamma1 * chosen.x, (1.0 - gamma1) * prev.y + gamma1 * chosen.y};
}

BoundingBox redetection_region(const BoundingBox& current, int frame_w, int frame_h, int consecutive_failures,
                               const RedetectionConfig& config)
{
    if (consecutive_failures >= config.expand_after)
        return {0.0, 0.0, static_cast<double>(frame_w), static_cast<double>(frame_h)};
    return intersect_frame(current.scaled(config.region_scale), frame_w, frame_h);
}

}  // namespace cftrack
