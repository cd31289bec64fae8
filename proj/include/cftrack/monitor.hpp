#ifndef CFTRACK_MONITOR_HPP
#define CFTRACK_MONITOR_HPP

#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cftrack {

enum class TrackingCondition { Confident, Failure };

std::string_view to_string(TrackingCondition condition);

constexpr double kApsrEpsilon = 1e-8;
constexpr double kApsrCap = 1e6;

/// Average peak-to-sidelobe ratio: (max - min) over the mean of all values
/// except the peak. The denominator is clamped at kApsrEpsilon and the
/// result capped at kApsrCap.
double apsr(const Eigen::ArrayXXd& response);

/// Peak and APSR history over confident frames, compared against the
/// running means to detect drift.
struct MonitorState
{
    std::vector<double> peak_history;
    std::vector<double> apsr_history;
    double peak_ratio_threshold = 0.6;
    double apsr_ratio_threshold = 0.5;
    int warmup_frames = 5;

    double mean_peak() const;
    double mean_apsr() const;
    bool warming_up() const { return static_cast<int>(peak_history.size()) < warmup_frames; }

    bool operator==(const MonitorState&) const = default;
};

MonitorState make_monitor(double peak_ratio_threshold, double apsr_ratio_threshold, int warmup_frames);

/// Failure iff both the peak and the APSR fall below their thresholds.
TrackingCondition assess(const MonitorState& state, double peak, double apsr_value);

/// Appends to the histories only for confident frames.
MonitorState record(MonitorState state, double peak, double apsr_value, TrackingCondition condition);

}  // namespace cftrack

#endif
