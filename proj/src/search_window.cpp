#include "cftrack/search_window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cftrack {

SearchWindow SearchWindow::fit(const BoundingBox& target, double padding, const FeatureSpec& features, int max_side)
{
    if (!target.valid())
        throw std::invalid_argument("degenerate target box");
    if (!(padding >= 1.0))
        throw std::invalid_argument("padding must be >= 1");
    const int cell = features.cell_size();
    const int min_side = 4 * cell;
    if (max_side < min_side)
        throw std::invalid_argument("max template side is too small for the feature cell size");

    const double ww = target.w * padding;
    const double wh = target.h * padding;
    const double shrink = std::min(1.0, max_side / std::max(ww, wh));
    auto to_cells = [&](double side) {
        const int cells = static_cast<int>(std::lround(side * shrink / cell));
        return std::clamp(cells * cell, min_side, max_side / cell * cell);
    };

    SearchWindow window;
    window.template_w = to_cells(ww);
    window.template_h = to_cells(wh);
    window.padding = padding;
    window.features = features;
    return window;
}

double SearchWindow::diagonal(const BoundingBox& target) const
{
    const BoundingBox region = around(target);
    return std::hypot(region.w, region.h);
}

FeatureMap SearchWindow::sample(const Frame& frame, const BoundingBox& target) const
{
    return extract_features(extract_patch(frame, around(target), template_w, template_h), features);
}

}  // namespace cftrack
