// cftrack: track, evaluate and synthesize image sequences.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cftrack/config.hpp"
#include "cftrack/evaluation.hpp"
#include "cftrack/sequence_io.hpp"
#include "cftrack/synth.hpp"
#include "cftrack/tracker.hpp"

namespace fs = std::filesystem;
using namespace cftrack;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct TrackArgs
{
    std::string seq;
    std::string init;
    std::string gt;
    std::string config;
    std::string out;
    std::string overlay;
    bool no_redetect = false;
    bool no_scale = false;
    bool no_svm = false;
    bool dump_config = false;
};

struct EvalArgs
{
    std::string results;
    std::string gt;
    std::string curve;
};

struct SynthArgs
{
    std::string kind;
    int frames = 100;
    std::string out;
    std::uint32_t seed = 1;
};

int cmd_track(const TrackArgs& args)
{
    TrackerConfig config = args.config.empty() ? TrackerConfig{} : load_config(args.config);
    if (args.no_redetect)
        config.enable_redetect = false;
    if (args.no_scale)
        config.enable_scale = false;
    if (args.no_svm)
        config.enable_svm_gate = false;

    if (args.dump_config) {
        dump_config(std::cout, config);
        return 0;
    }
    if (args.seq.empty())
        throw UsageError("track: --seq is required");
    if (args.init.empty())
        throw UsageError("track: --init is required");

    BoundingBox init_box;
    try {
        init_box = parse_box(args.init);
    } catch (const ParseError& e) {
        throw UsageError(std::string("track: unparsable --init: ") + e.what());
    }
    if (!init_box.valid())
        throw UsageError("track: --init box must have positive width and height");

    const ImageSequence sequence(args.seq);
    std::optional<std::vector<std::optional<BoundingBox>>> truth;
    if (!args.gt.empty())
        truth = load_ground_truth(args.gt);

    std::ofstream file;
    if (!args.out.empty()) {
        file.open(args.out);
        if (!file)
            throw IoError("cannot write " + args.out);
    }
    std::ostream& out = args.out.empty() ? std::cout : file;
    if (!args.overlay.empty())
        fs::create_directories(args.overlay);

    auto emit = [&](std::size_t i, const Frame& frame, const FrameResult& result) {
        std::optional<double> overlap;
        if (truth) {
            if (i < truth->size() && (*truth)[i])
                overlap = iou(result.box, *(*truth)[i]);
            else
                overlap = std::nan("");
        }
        write_result_row(out, static_cast<int>(i) + 1, result, overlap);
        if (!args.overlay.empty()) {
            std::ostringstream name;
            name << std::setw(4) << std::setfill('0') << i + 1 << ".png";
            write_overlay(fs::path(args.overlay) / name.str(), frame, result.box);
        }
    };

    write_results_header(out, truth.has_value());
    const Frame first = sequence.load(0);
    TrackerState state = init(first, init_box, config);
    emit(0, first, initial_result(state, first));

    for (std::size_t i = 1; i < sequence.size(); ++i) {
        const Frame frame = sequence.load(i);
        StepOutput step_out = step(state, frame, config);
        state = std::move(step_out.state);
        emit(i, frame, step_out.result);
    }
    return 0;
}

int cmd_eval(const EvalArgs& args)
{
    const auto tracked = load_results(args.results);
    const auto truth = load_ground_truth(args.gt);
    if (tracked.size() != truth.size())
        throw std::runtime_error("eval: results have " + std::to_string(tracked.size()) +
                                 " rows but ground truth has " + std::to_string(truth.size()));

    const OverlapSeries series = overlap_series(tracked, truth, fs::path(args.results).stem().string());
    std::cout << std::fixed << std::setprecision(4) << "average_overlap " << average_overlap(series) << '\n'
              << "success_rate_0.5 " << success_rate(series, 0.5) << '\n'
              << "success_auc " << success_auc(series, 101) << '\n';

    if (!args.curve.empty()) {
        std::ofstream curve(args.curve);
        if (!curve)
            throw IoError("cannot write " + args.curve);
        curve << "t,rate\n" << std::fixed << std::setprecision(6);
        for (const auto& [t, rate] : success_curve(series, 101))
            curve << t << ',' << rate << '\n';
    }
    return 0;
}

int cmd_synth(const SynthArgs& args)
{
    const auto kind = parse_synth_kind(args.kind);
    if (!kind)
        throw UsageError("synth: unknown kind '" + args.kind + "' (translate|occlude|grow|aspect)");
    if (args.frames < 1)
        throw UsageError("synth: --frames must be >= 1");

    const SyntheticSequence seq = synthesize(*kind, args.frames, args.seed);
    fs::create_directories(args.out);
    for (const auto& frame : seq.frames) {
        std::ostringstream name;
        name << std::setw(4) << std::setfill('0') << frame.index << ".png";
        write_frame(fs::path(args.out) / name.str(), frame);
    }
    std::ofstream gt(fs::path(args.out) / "groundtruth_rect.txt");
    if (!gt)
        throw IoError("cannot write ground truth in " + args.out);
    write_ground_truth(gt, seq.truth);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Correlation-filter tracker with proposal-based re-detection and scale adaptation"};
    app.require_subcommand(1);

    TrackArgs track_args;
    auto* track = app.add_subcommand("track", "Track a target through an image sequence");
    track->add_option("--seq", track_args.seq, "Directory of frames");
    track->add_option("--init", track_args.init, "Initial box \"x,y,w,h\" (1-indexed)");
    track->add_option("--gt", track_args.gt, "Ground-truth file; adds a per-frame iou column");
    track->add_option("--config", track_args.config, "Config file of key = value lines");
    track->add_option("--out", track_args.out, "Results CSV (default: stdout)");
    track->add_option("--overlay", track_args.overlay, "Directory for frames with the box drawn in");
    track->add_flag("--no-redetect", track_args.no_redetect, "Disable the re-detection stream");
    track->add_flag("--no-scale", track_args.no_scale, "Disable the scale stream");
    track->add_flag("--no-svm", track_args.no_svm, "Disable the SVM gate");
    track->add_flag("--dump-config", track_args.dump_config, "Print the effective configuration and exit");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Score a results CSV against ground truth");
    eval->add_option("--results", eval_args.results, "Results CSV")->required();
    eval->add_option("--gt", eval_args.gt, "Ground-truth file")->required();
    eval->add_option("--curve", eval_args.curve, "Write the success curve (101 thresholds) here");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Render a synthetic test sequence");
    synth->add_option("--kind", synth_args.kind, "translate|occlude|grow|aspect")->required();
    synth->add_option("--frames", synth_args.frames, "Number of frames");
    synth->add_option("--out", synth_args.out, "Output directory")->required();
    synth->add_option("--seed", synth_args.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*track)
            return cmd_track(track_args);
        if (*eval)
            return cmd_eval(eval_args);
        return cmd_synth(synth_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
