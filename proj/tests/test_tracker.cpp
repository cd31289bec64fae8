#include <gtest/gtest.h>

#include "cftrack/evaluation.hpp"
#include "cftrack/synth.hpp"
#include "cftrack/tracker.hpp"

using namespace cftrack;

namespace {

bool same_state(const TrackerState& a, const TrackerState& b)
{
    return a.box == b.box && a.model == b.model && a.monitor == b.monitor && a.svm == b.svm &&
           a.consecutive_failures == b.consecutive_failures && a.frame_index == b.frame_index &&
           (a.labels == b.labels).all();
}

bool inside(const BoundingBox& b, int w, int h)
{
    return b.x >= -1e-9 && b.y >= -1e-9 && b.x + b.w <= w + 1e-9 && b.y + b.h <= h + 1e-9;
}

}  // namespace

TEST(Init, DeterministicAndFresh)
{
    const auto seq = synthesize(SynthKind::Translate, 1, 3);
    const TrackerConfig config;
    const TrackerState a = init(seq.frames[0], seq.truth[0], config);
    const TrackerState b = init(seq.frames[0], seq.truth[0], config);
    EXPECT_TRUE(same_state(a, b));
    EXPECT_EQ(a.consecutive_failures, 0);
    EXPECT_EQ(a.frame_index, 1);
    EXPECT_TRUE(a.monitor.peak_history.empty());
    EXPECT_EQ(a.svm.updates_seen, 0);
}

TEST(Init, DetectOnTheSameFramePeaksAtZeroDisplacement)
{
    const auto seq = synthesize(SynthKind::Translate, 1, 4);
    const TrackerState s = init(seq.frames[0], seq.truth[0], TrackerConfig{});
    const Peak p = find_peak(detect(s.model, s.window.sample(seq.frames[0], s.box)));
    EXPECT_EQ(p.row, 0);
    EXPECT_EQ(p.col, 0);
}

TEST(Init, RejectsBadBoxesAndConfig)
{
    const auto seq = synthesize(SynthKind::Translate, 1, 1);
    const TrackerConfig config;
    EXPECT_THROW(init(seq.frames[0], {400, 400, 20, 20}, config), std::invalid_argument);
    EXPECT_THROW(init(seq.frames[0], {10, 10, 0, 20}, config), std::invalid_argument);
    TrackerConfig bad;
    bad.eta = 1.5;
    EXPECT_THROW(init(seq.frames[0], seq.truth[0], bad), std::invalid_argument);
}

TEST(Step, FrameSizeMismatchThrows)
{
    const auto seq = synthesize(SynthKind::Translate, 1, 1);
    const TrackerState s = init(seq.frames[0], seq.truth[0], TrackerConfig{});
    EXPECT_THROW(step(s, Frame(Image::Zero(50, 50), 2), TrackerConfig{}), std::invalid_argument);
}

TEST(Step, StaticSceneDoesNotDrift)
{
    const auto seq = synthesize(SynthKind::Translate, 1, 5);
    const TrackerConfig config;
    TrackerState s = init(seq.frames[0], seq.truth[0], config);
    for (int i = 0; i < 50; ++i)
        s = step(s, Frame(seq.frames[0].intensity, i + 2), config).state;
    const Point c0 = seq.truth[0].center(), c = s.box.center();
    EXPECT_LT(std::hypot(c.x - c0.x, c.y - c0.y), 1.0);
    EXPECT_NEAR(s.box.w, seq.truth[0].w, 1.0);
    EXPECT_NEAR(s.box.h, seq.truth[0].h, 1.0);
    EXPECT_EQ(s.frame_index, 51);
}

TEST(Step, OcclusionFailsWithoutTouchingTheModels)
{
    const auto seq = synthesize(SynthKind::Occlude, 45, 1);
    ASSERT_GT(seq.occlusion_first, 0);
    const TrackerConfig config;
    TrackerState s = init(seq.frames[0], seq.truth[0], config);
    int failures_during_occlusion = 0;
    for (std::size_t i = 1; i < seq.frames.size(); ++i) {
        const StepOutput out = step(s, seq.frames[i], config);
        const int frame_no = int(i) + 1;
        if (out.result.condition == TrackingCondition::Failure) {
            EXPECT_EQ(out.state.model, s.model) << "frame " << frame_no;
            EXPECT_EQ(out.state.svm, s.svm) << "frame " << frame_no;
            EXPECT_EQ(out.state.monitor, s.monitor) << "frame " << frame_no;
            EXPECT_EQ(out.state.consecutive_failures, s.consecutive_failures + 1);
            EXPECT_EQ(out.result.stream, Stream::Redetect);
            if (frame_no >= seq.occlusion_first && frame_no <= seq.occlusion_last)
                ++failures_during_occlusion;
        } else {
            EXPECT_EQ(out.state.consecutive_failures, 0);
            EXPECT_NE(out.result.stream, Stream::Redetect);
        }
        EXPECT_TRUE(inside(out.result.box, 320, 240));
        s = out.state;
    }
    EXPECT_GE(failures_during_occlusion, 1);
}

TEST(Step, NoRedetectNeverUsesTheRedetectStream)
{
    const auto seq = synthesize(SynthKind::Occlude, 45, 1);
    TrackerConfig config;
    config.enable_redetect = false;
    for (const auto& r : track_sequence(seq.frames, seq.truth[0], config))
        EXPECT_NE(r.stream, Stream::Redetect);
}

TEST(Step, NoScaleKeepsTheSizeConstant)
{
    const auto seq = synthesize(SynthKind::Grow, 40, 1);
    TrackerConfig config;
    config.enable_scale = false;
    for (const auto& r : track_sequence(seq.frames, seq.truth[0], config)) {
        EXPECT_EQ(r.box.w, seq.truth[0].w);
        EXPECT_EQ(r.box.h, seq.truth[0].h);
        EXPECT_NE(r.stream, Stream::Scale);
    }
}

TEST(Step, BoxStaysInsideTheFrameNearTheBorder)
{
    // The start box hangs over the bottom-right corner. Frame 1 reports it
    // as given; every tracked frame after that must be clipped inside.
    const auto seq = synthesize(SynthKind::Translate, 30, 2);
    const BoundingBox start{300, 200, 30, 30};
    const auto results = track_sequence(seq.frames, start, TrackerConfig{});
    EXPECT_EQ(results.front().box, start);
    for (std::size_t i = 1; i < results.size(); ++i)
        EXPECT_TRUE(inside(results[i].box, 320, 240)) << "frame " << i + 1;
}

TEST(TrackSequence, SingleFrameAndEmpty)
{
    const auto seq = synthesize(SynthKind::Translate, 1, 1);
    const auto results = track_sequence(seq.frames, seq.truth[0], TrackerConfig{});
    ASSERT_EQ(results.size(), 1u);
    EXPECT_EQ(results[0].box, seq.truth[0]);
    EXPECT_EQ(results[0].condition, TrackingCondition::Confident);
    EXPECT_THROW(track_sequence({}, seq.truth[0], TrackerConfig{}), std::invalid_argument);
}

TEST(TrackSequence, DeterministicAcrossRuns)
{
    const auto seq = synthesize(SynthKind::Occlude, 40, 6);
    const auto a = track_sequence(seq.frames, seq.truth[0], TrackerConfig{});
    const auto b = track_sequence(seq.frames, seq.truth[0], TrackerConfig{});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].box, b[i].box);
        EXPECT_EQ(a[i].peak, b[i].peak);
        EXPECT_EQ(a[i].apsr, b[i].apsr);
        EXPECT_EQ(a[i].condition, b[i].condition);
        EXPECT_EQ(a[i].stream, b[i].stream);
    }
}

TEST(TrackSequence, FollowsATranslatingDisc)
{
    const auto seq = synthesize(SynthKind::Translate, 100, 1);
    const auto results = track_sequence(seq.frames, seq.truth[0], TrackerConfig{});
    int good = 0;
    for (std::size_t i = 0; i < results.size(); ++i)
        good += iou(results[i].box, seq.truth[i]) >= 0.7;
    EXPECT_GE(good, 95);
}

TEST(Stream, Names)
{
    EXPECT_EQ(to_string(Stream::Baseline), "Baseline");
    EXPECT_EQ(to_string(Stream::Scale), "Scale");
    EXPECT_EQ(to_string(Stream::Redetect), "Redetect");
}
