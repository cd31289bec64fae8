#ifndef CFTRACK_SEARCH_WINDOW_HPP
#define CFTRACK_SEARCH_WINDOW_HPP

#include "cftrack/features.hpp"
#include "cftrack/geometry.hpp"

namespace cftrack {

/// Fixed-resolution sampling of the padded region around a target box.
/// Every box, whatever its size, is resampled to template_w x template_h.
struct SearchWindow
{
    int template_w = 0;
    int template_h = 0;
    double padding = 2.5;
    FeatureSpec features;

    /// Chooses a template resolution for `target`: the padded box, scaled
    /// down so that neither side exceeds `max_side`, rounded to whole cells.
    static SearchWindow fit(const BoundingBox& target, double padding, const FeatureSpec& features, int max_side);

    BoundingBox around(const BoundingBox& target) const { return target.scaled(padding); }

    int feature_w() const { return template_w / features.cell_size(); }
    int feature_h() const { return template_h / features.cell_size(); }

    /// Diagonal of the padded region around `target`, in frame pixels.
    double diagonal(const BoundingBox& target) const;

    FeatureMap sample(const Frame& frame, const BoundingBox& target) const;
};

}  // namespace cftrack

#endif
