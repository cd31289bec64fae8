#include "cftrack/scale_adaptation.hpp"

#include <algorithm>
#include <stdexcept>

namespace cftrack {

std::vector<Proposal> scale_candidates(const std::vector<Proposal>& raw, const BoundingBox& current,
                                       const ScaleConfig& config)
{
    std::vector<Proposal> ordered = raw;
    sort_by_objectness(ordered);

    const Point c = current.center();
    std::vector<Proposal> centered;
    for (const auto& p : ordered) {
        const BoundingBox box = BoundingBox::centered(c, p.box.w, p.box.h);
        const bool seen = std::any_of(centered.begin(), centered.end(),
                                      [&](const Proposal& q) { return q.box.w == box.w && q.box.h == box.h; });
        if (!seen)
            centered.push_back({box, p.objectness});
    }
    return reject_band(top_k(std::move(centered), config.keep_top), current, config.band_lo, config.band_hi);
}

std::vector<Proposal> scale_candidates(const EdgeMap& edges, const BoundingBox& current, const ScaleConfig& config,
                                       const ProposalConfig& proposal_config)
{
    const auto raw = generate(edges, current.scaled(config.region_scale), current.w, current.h, proposal_config);
    return scale_candidates(raw, current, config);
}

ScaleChoice best_scale(const FilterModel& model, const SearchWindow& window, const Frame& frame,
                       const BoundingBox& current, const std::vector<Proposal>& candidates,
                       const ScaleConfig& config)
{
    ScaleChoice choice;
    if (candidates.empty())
        return choice;

    auto score = [&](const BoundingBox& box) {
        const FeatureMap z = window.sample(frame, box);
        return config.response == ScaleResponse::Peak ? detect(model, z).maxCoeff() : response_at_zero(model, z);
    };

    choice.current_response = score(current);
    std::size_t best = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double r = score(candidates[i].box);
        if (i == 0 || r > choice.response) {
            best = i;
            choice.response = r;
        }
    }
    if (choice.response > config.accept_ratio * choice.current_response)
        choice.box = candidates[best].box;
    return choice;
}

Size damped_size(Size prev, Size chosen, double gamma2)
{
    if (!(gamma2 >= 0.0 && gamma2 <= 1.0))
        throw std::invalid_argument("gamma2 must lie in [0,1]");
    if (!(prev.w > 0.0 && prev.h > 0.0 && chosen.w > 0.0 && chosen.h > 0.0))
        throw std::invalid_argument("sizes must be positive");
    return {(1.0 - gamma2) * prev.w + gamma2 * chosen.w, (1.0 - gamma2) * prev.h + gamma2 * chosen.h};
}

}  // namespace cftrack
