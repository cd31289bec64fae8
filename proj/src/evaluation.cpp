#include "cftrack/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cftrack {

OverlapSeries overlap_series(const std::vector<BoundingBox>& tracked,
                             const std::vector<std::optional<BoundingBox>>& truth, std::string name)
{
    if (tracked.size() != truth.size())
        throw std::invalid_argument("tracked has " + std::to_string(tracked.size()) + " boxes but truth has " +
                                    std::to_string(truth.size()));
    OverlapSeries series;
    series.sequence_name = std::move(name);
    for (std::size_t i = 0; i < tracked.size(); ++i)
        if (truth[i])
            series.values.push_back(iou(tracked[i], *truth[i]));
    return series;
}

double success_rate(const OverlapSeries& series, double t)
{
    if (series.values.empty())
        throw std::invalid_argument("empty overlap series");
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("threshold must lie in [0,1]");
    const auto above = std::count_if(series.values.begin(), series.values.end(), [t](double r) { return r > t; });
    return static_cast<double>(above) / static_cast<double>(series.values.size());
}

double average_overlap(const OverlapSeries& series)
{
    if (series.values.empty())
        throw std::invalid_argument("empty overlap series");
    return std::accumulate(series.values.begin(), series.values.end(), 0.0) /
           static_cast<double>(series.values.size());
}

std::vector<std::pair<double, double>> success_curve(const OverlapSeries& series, int n_points)
{
    if (n_points < 2)
        throw std::invalid_argument("a success curve needs at least two points");
    std::vector<std::pair<double, double>> curve;
    curve.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double t = i == n_points - 1 ? 1.0 : static_cast<double>(i) / (n_points - 1);
        curve.emplace_back(t, success_rate(series, t));
    }
    return curve;
}

double success_auc(const OverlapSeries& series, int n_points)
{
    const auto curve = success_curve(series, n_points);
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += 0.5 * (curve[i].second + curve[i - 1].second) * (curve[i].first - curve[i - 1].first);
    return area;
}

}  // namespace cftrack
