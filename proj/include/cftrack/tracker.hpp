#ifndef CFTRACK_TRACKER_HPP
#define CFTRACK_TRACKER_HPP

// Two-stream tracker: the correlation filter localizes every frame, the
// monitor classifies the frame, and confident frames go through scale
// adaptation while failed frames go through proposal re-detection.

#include <string_view>
#include <vector>

#include "cftrack/correlation_filter.hpp"
#include "cftrack/instance_classifier.hpp"
#include "cftrack/monitor.hpp"
#include "cftrack/proposals.hpp"
#include "cftrack/redetection.hpp"
#include "cftrack/scale_adaptation.hpp"
#include "cftrack/search_window.hpp"

namespace cftrack {

struct TrackerConfig
{
    // correlation filter
    double lambda = 1e-4;
    double kernel_sigma = 0.5;
    double label_sigma_factor = 0.1;  ///< label sigma = factor * sqrt(w h), target size in cells
    double eta = 0.02;
    double padding = 2.5;
    int max_template_side = 64;
    FeatureSpec features;

    // monitor
    double peak_ratio_threshold = 0.6;
    double apsr_ratio_threshold = 0.5;
    int warmup_frames = 5;

    ProposalConfig proposals;

    // instance classifier
    double svm_learn_rate = 0.01;
    double svm_reg = 1e-4;
    double svm_gate_threshold = 0.0;

    RedetectionConfig redetect;
    ScaleConfig scale;

    bool enable_redetect = true;
    bool enable_scale = true;
    bool enable_svm_gate = true;

    /// Minimum clipped box area; smaller boxes revert to the previous box.
    double min_box_area = 4.0;

    /// Throws std::invalid_argument naming the first field out of range.
    void validate() const;
};

enum class Stream { Baseline, Scale, Redetect };

std::string_view to_string(Stream stream);

struct TrackerState
{
    BoundingBox box;
    FilterModel model;
    MonitorState monitor;
    SvmModel svm;
    SearchWindow window;
    Eigen::ArrayXXd labels;
    int consecutive_failures = 0;
    int confident_frames = 0;
    int frame_index = 1;
    int frame_w = 0;
    int frame_h = 0;
};

struct FrameResult
{
    BoundingBox box;
    double peak = 0.0;
    double apsr = 0.0;
    TrackingCondition condition = TrackingCondition::Confident;
    Stream stream = Stream::Baseline;
};

TrackerState init(const Frame& frame, const BoundingBox& box, const TrackerConfig& config);

struct StepOutput
{
    TrackerState state;
    FrameResult result;
};

StepOutput step(const TrackerState& state, const Frame& frame, const TrackerConfig& config);

/// Result reported for the initialization frame: the init box, Confident,
/// with the peak and APSR of the freshly trained filter on that frame.
FrameResult initial_result(const TrackerState& state, const Frame& frame);

/// Frame 1 initializes the tracker and is reported as the init box.
std::vector<FrameResult> track_sequence(const std::vector<Frame>& frames, const BoundingBox& init_box,
                                        const TrackerConfig& config);

}  // namespace cftrack

#endif
