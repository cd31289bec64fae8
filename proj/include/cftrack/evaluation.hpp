#ifndef CFTRACK_EVALUATION_HPP
#define CFTRACK_EVALUATION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cftrack/geometry.hpp"

namespace cftrack {

struct OverlapSeries
{
    std::vector<double> values;
    std::string sequence_name;
};

/// Per-frame IoU; frames whose ground truth is absent are skipped.
OverlapSeries overlap_series(const std::vector<BoundingBox>& tracked,
                             const std::vector<std::optional<BoundingBox>>& truth, std::string name = {});

/// Fraction of frames with overlap strictly greater than t.
double success_rate(const OverlapSeries& series, double t);

double average_overlap(const OverlapSeries& series);

std::vector<std::pair<double, double>> success_curve(const OverlapSeries& series, int n_points);

/// Trapezoidal area under the success curve.
double success_auc(const OverlapSeries& series, int n_points);

}  // namespace cftrack

#endif
