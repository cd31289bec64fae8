#include "cftrack/tracker.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace cftrack {

namespace {

void require(bool ok, const char* field)
{
    if (!ok)
        throw std::invalid_argument(std::string("tracker config out of range: ") + field);
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void TrackerConfig::validate() const
{
    require(lambda > 0.0, "lambda");
    require(kernel_sigma > 0.0, "kernel_sigma");
    require(label_sigma_factor > 0.0, "label_sigma_factor");
    require(unit(eta), "eta");
    require(padding >= 1.0, "padding");
    require(max_template_side >= 4 * features.cell_size(), "max_template_side");
    require(features.hog_bins >= 1, "hog_bins");
    require(features.hog_cell >= 1, "hog_cell");
    require(features.hog_clip > 0.0, "hog_clip");
    require(peak_ratio_threshold > 0.0 && peak_ratio_threshold <= 1.0, "peak_ratio_threshold");
    require(apsr_ratio_threshold > 0.0 && apsr_ratio_threshold <= 1.0, "apsr_ratio_threshold");
    require(warmup_frames >= 1, "warmup_frames");
    require(proposals.scale_min > 0.0, "proposal_scale_min");
    require(proposals.scale_max >= proposals.scale_min, "proposal_scale_max");
    require(proposals.scale_step > 1.0, "proposal_scale_step");
    require(proposals.stride_fraction > 0.0, "proposal_stride_fraction");
    require(proposals.min_stride > 0.0, "proposal_min_stride");
    require(proposals.nms_threshold > 0.0 && proposals.nms_threshold <= 1.0, "nms_threshold");
    require(proposals.max_proposals >= 1, "max_proposals");
    require(svm_learn_rate > 0.0, "svm_learn_rate");
    require(svm_reg >= 0.0, "svm_reg");
    require(std::isfinite(svm_gate_threshold), "svm_gate_threshold");
    require(redetect.zeta >= 0.0, "zeta");
    require(unit(redetect.gamma1), "gamma1");
    require(redetect.region_scale > 1.0, "redetect_region_scale");
    require(redetect.expand_after >= 1, "redetect_expand_after");
    require(redetect.response_floor >= 0.0, "redetect_response_floor");
    require(unit(scale.gamma2), "gamma2");
    require(scale.band_lo >= 0.0 && scale.band_lo < scale.band_hi && scale.band_hi <= 1.0, "band_lo/band_hi");
    require(scale.accept_ratio > 0.0, "accept_ratio");
    require(scale.region_scale >= 1.0, "scale_region_scale");
    require(scale.stride >= 1, "scale_stride");
    require(min_box_area > 0.0, "min_box_area");
}

std::string_view to_string(Stream stream)
{
    switch (stream) {
    case Stream::Baseline:
        return "Baseline";
    case Stream::Scale:
        return "Scale";
    case Stream::Redetect:
        return "Redetect";
    }
    return "Baseline";
}

TrackerState init(const Frame& frame, const BoundingBox& box, const TrackerConfig& config)
{
    config.validate();
    if (!box.valid())
        throw std::invalid_argument("initial box is degenerate");
    const BoundingBox frame_box{0.0, 0.0, static_cast<double>(frame.width()), static_cast<double>(frame.height())};
    if (!intersects(box, frame_box))
        throw std::invalid_argument("initial box lies outside the frame");

    TrackerState state;
    state.box = box;
    state.frame_w = frame.width();
    state.frame_h = frame.height();
    state.frame_index = 1;
    state.window = SearchWindow::fit(box, config.padding, config.features, config.max_template_side);

    const int fw = state.window.feature_w();
    const int fh = state.window.feature_h();
    const double target_cells = std::sqrt(static_cast<double>(fw) * fh) / config.padding;
    const double label_sigma = config.label_sigma_factor * target_cells;
    state.labels = gaussian_labels(fw, fh, label_sigma);

    state.model = make_model(state.window.sample(frame, box), state.labels, config.lambda, config.kernel_sigma,
                             label_sigma, config.eta);
    state.monitor = make_monitor(config.peak_ratio_threshold, config.apsr_ratio_threshold, config.warmup_frames);
    state.svm = make_svm(config.svm_learn_rate, config.svm_reg);
    return state;
}

namespace {

struct Localization
{
    Point center;
    double peak = 0.0;
    double apsr = 0.0;
};

Localization localize(const TrackerState& state, const Frame& frame)
{
    const Eigen::ArrayXXd response = detect(state.model, state.window.sample(frame, state.box));
    const Peak p = find_peak(response);
    const BoundingBox region = state.window.around(state.box);
    const double dx = static_cast<double>(signed_displacement(p.col, response.cols())) * region.w / response.cols();
    const double dy = static_cast<double>(signed_displacement(p.row, response.rows())) * region.h / response.rows();
    const Point c = state.box.center();
    return {{c.x + dx, c.y + dy}, p.value, apsr(response)};
}

}  // namespace

StepOutput step(const TrackerState& state, const Frame& frame, const TrackerConfig& config)
{
    if (frame.width() != state.frame_w || frame.height() != state.frame_h)
        throw std::invalid_argument("frame size differs from the initialization frame");

    StepOutput out{state, {}};
    TrackerState& next = out.state;
    FrameResult& result = out.result;

    const Localization loc = localize(state, frame);
    result.peak = loc.peak;
    result.apsr = loc.apsr;
    result.condition = assess(state.monitor, loc.peak, loc.apsr);
    result.stream = Stream::Baseline;

    std::optional<EdgeMap> edges;
    auto edge_cache = [&]() -> const EdgeMap& {
        if (!edges)
            edges = edge_map(frame);
        return *edges;
    };

    BoundingBox box = state.box;
    if (result.condition == TrackingCondition::Confident) {
        box = BoundingBox::centered(loc.center, box.w, box.h);

        const bool run_scale = config.enable_scale && state.confident_frames % config.scale.stride == 0;
        std::vector<Proposal> raw;
        if (run_scale || config.enable_svm_gate)
            raw = generate(edge_cache(), box.scaled(config.scale.region_scale), box.w, box.h, config.proposals);

        if (run_scale) {
            result.stream = Stream::Scale;
            const auto candidates = scale_candidates(raw, box, config.scale);
            const ScaleChoice choice = best_scale(state.model, state.window, frame, box, candidates, config.scale);
            if (choice.box) {
                const Size s = damped_size({box.w, box.h}, {choice.box->w, choice.box->h}, config.scale.gamma2);
                box = BoundingBox::centered(loc.center, s.w, s.h);
            }
        }

        box = fit_inside(box, frame.width(), frame.height());
        if (box.area() < config.min_box_area)
            box = state.box;

        const FeatureMap sample = state.window.sample(frame, box);
        next.model = update(state.model, sample, train(sample, state.labels, state.model.lambda,
                                                       state.model.kernel_sigma));
        if (config.enable_svm_gate) {
            // The positive is revisited before every negative so that one
            // target sample is not outvoted by ten background samples.
            const auto samples = harvest_training_set(frame, box, raw);
            const auto& positive = samples.front();
            if (samples.size() == 1)
                next.svm = update_one(next.svm, positive.feature, positive.label);
            for (std::size_t i = 1; i < samples.size(); ++i) {
                next.svm = update_one(next.svm, positive.feature, positive.label);
                next.svm = update_one(next.svm, samples[i].feature, samples[i].label);
            }
        }

        next.monitor = record(state.monitor, loc.peak, loc.apsr, result.condition);
        next.consecutive_failures = 0;
        ++next.confident_frames;
    } else {
        if (config.enable_redetect) {
            result.stream = Stream::Redetect;
            const BoundingBox region = redetection_region(state.box, frame.width(), frame.height(),
                                                          state.consecutive_failures, config.redetect);
            const auto proposals = generate(edge_cache(), region, state.box.w, state.box.h, config.proposals);

            std::vector<Proposal> gated = proposals;
            if (config.enable_svm_gate) {
                std::vector<Candidate> candidates;
                candidates.reserve(proposals.size());
                for (const auto& p : proposals)
                    candidates.push_back({p, svm_feature_vector(frame, p.box)});
                gated = gate(state.svm, candidates, config.svm_gate_threshold);
            }

            if (!gated.empty()) {
                const Selection sel =
                    select_candidate(state.model, state.window, frame, gated, state.box, config.redetect);
                if (sel.response > config.redetect.response_floor * state.monitor.mean_peak()) {
                    const Point c = damped_position(state.box.center(), sel.best.box.center(),
                                                    config.redetect.gamma1);
                    box = BoundingBox::centered(c, state.box.w, state.box.h);
                }
            }
        } else {
            box = BoundingBox::centered(loc.center, box.w, box.h);
        }

        box = fit_inside(box, frame.width(), frame.height());
        if (box.area() < config.min_box_area)
            box = state.box;
        ++next.consecutive_failures;
    }

    next.box = box;
    next.frame_index = state.frame_index + 1;
    result.box = box;
    return out;
}

FrameResult initial_result(const TrackerState& state, const Frame& frame)
{
    const Eigen::ArrayXXd response = detect(state.model, state.window.sample(frame, state.box));
    return {state.box, response.maxCoeff(), apsr(response), TrackingCondition::Confident, Stream::Baseline};
}

std::vector<FrameResult> track_sequence(const std::vector<Frame>& frames, const BoundingBox& init_box,
                                        const TrackerConfig& config)
{
    if (frames.empty())
        throw std::invalid_argument("empty frame sequence");

    TrackerState state = init(frames.front(), init_box, config);
    std::vector<FrameResult> results;
    results.reserve(frames.size());

    results.push_back(initial_result(state, frames.front()));

    for (std::size_t i = 1; i < frames.size(); ++i) {
        StepOutput out = step(state, frames[i], config);
        state = std::move(out.state);
        results.push_back(out.result);
    }
    return results;
}

}  // namespace cftrack
