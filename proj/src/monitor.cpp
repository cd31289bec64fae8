#include "cftrack/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cftrack {

std::string_view to_string(TrackingCondition condition)
{
    return condition == TrackingCondition::Confident ? "Confident" : "Failure";
}

double apsr(const Eigen::ArrayXXd& response)
{
    const Eigen::Index n = response.size();
    if (n < 2)
        throw std::invalid_argument("APSR needs at least two response values");
    if (!response.allFinite())
        throw std::invalid_argument("APSR needs finite response values");

    const double fmax = response.maxCoeff();
    const double fmin = response.minCoeff();
    const double sidelobe = (response.sum() - fmax) / static_cast<double>(n - 1);
    const double value = (fmax - fmin) / std::max(kApsrEpsilon, sidelobe);
    return std::clamp(value, 0.0, kApsrCap);
}

namespace {

double mean_of(const std::vector<double>& v)
{
    if (v.empty())
        return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double MonitorState::mean_peak() const { return mean_of(peak_history); }

double MonitorState::mean_apsr() const { return mean_of(apsr_history); }

MonitorState make_monitor(double peak_ratio_threshold, double apsr_ratio_threshold, int warmup_frames)
{
    if (!(peak_ratio_threshold > 0.0 && peak_ratio_threshold <= 1.0) ||
        !(apsr_ratio_threshold > 0.0 && apsr_ratio_threshold <= 1.0))
        throw std::invalid_argument("monitor thresholds must lie in (0,1]");
    if (warmup_frames < 1)
        throw std::invalid_argument("warmup_frames must be >= 1");
    MonitorState state;
    state.peak_ratio_threshold = peak_ratio_threshold;
    state.apsr_ratio_threshold = apsr_ratio_threshold;
    state.warmup_frames = warmup_frames;
    return state;
}

TrackingCondition assess(const MonitorState& state, double peak, double apsr_value)
{
    if (state.warming_up())
        return TrackingCondition::Confident;
    const bool weak_peak = peak < state.peak_ratio_threshold * state.mean_peak();
    const bool weak_apsr = apsr_value < state.apsr_ratio_threshold * state.mean_apsr();
    return weak_peak && weak_apsr ? TrackingCondition::Failure : TrackingCondition::Confident;
}

MonitorState record(MonitorState state, double peak, double apsr_value, TrackingCondition condition)
{
    if (!std::isfinite(peak) || !std::isfinite(apsr_value))
        throw std::invalid_argument("monitor observations must be finite");
    if (condition == TrackingCondition::Confident) {
        state.peak_history.push_back(peak);
        state.apsr_history.push_back(apsr_value);
    }
    return state;
}

}  // namespace cftrack
