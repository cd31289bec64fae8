#include "cftrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cftrack {

std::optional<SynthKind> parse_synth_kind(std::string_view name)
{
    if (name == "translate")
        return SynthKind::Translate;
    if (name == "occlude")
        return SynthKind::Occlude;
    if (name == "grow")
        return SynthKind::Grow;
    if (name == "aspect")
        return SynthKind::Aspect;
    return std::nullopt;
}

std::string_view to_string(SynthKind kind)
{
    switch (kind) {
    case SynthKind::Translate:
        return "translate";
    case SynthKind::Occlude:
        return "occlude";
    case SynthKind::Grow:
        return "grow";
    case SynthKind::Aspect:
        return "aspect";
    }
    return "translate";
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeed = 2.0;
constexpr double kHeading = 0.3;
constexpr double kMovingRadius = 16.0;
constexpr double kGrowingRadius = 12.0;
constexpr double kGrowth = 1.01;
constexpr int kSupersample = 4;

// Portable uniform [0,1) from raw mt19937 output.
struct Uniform
{
    std::mt19937 engine;
    explicit Uniform(std::uint32_t seed) : engine(seed) {}
    double operator()() { return static_cast<double>(engine()) / 4294967296.0; }
};

struct Wave
{
    double fx, fy, phase, amplitude;
};

std::vector<Wave> random_waves(Uniform& u, int count, double max_freq, double amplitude)
{
    std::vector<Wave> waves;
    for (int i = 0; i < count; ++i)
        waves.push_back({(u() * 2.0 - 1.0) * max_freq, (u() * 2.0 - 1.0) * max_freq, u() * 2.0 * kPi,
                         amplitude * (0.5 + 0.5 * u())});
    return waves;
}

double eval_waves(const std::vector<Wave>& waves, double x, double y)
{
    double v = 0.0;
    for (const auto& w : waves)
        v += w.amplitude * std::sin(w.fx * x + w.fy * y + w.phase);
    return v;
}

struct Ellipse
{
    double cx, cy, rx, ry;
};

Image render_background(Uniform& u)
{
    const auto smooth = random_waves(u, 6, 0.08, 0.08);
    const auto fine = random_waves(u, 4, 0.6, 0.03);
    Image bg(kSynthHeight, kSynthWidth);
    for (int c = 0; c < kSynthWidth; ++c)
        for (int r = 0; r < kSynthHeight; ++r)
            bg(r, c) = 0.4 + eval_waves(smooth, c, r) + eval_waves(fine, c, r) + 0.03 * (u() - 0.5);
    return bg;
}

// Texture is defined in the ellipse's normalized coordinates, so it
// stretches with the target.
double target_texture(const std::vector<Wave>& waves, double nx, double ny)
{
    return 0.72 + eval_waves(waves, nx, ny);
}

void draw_target(Image& img, const Ellipse& e, const std::vector<Wave>& texture)
{
    const int x0 = std::max(0, static_cast<int>(std::floor(e.cx - e.rx)) - 1);
    const int x1 = std::min(kSynthWidth - 1, static_cast<int>(std::ceil(e.cx + e.rx)) + 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(e.cy - e.ry)) - 1);
    const int y1 = std::min(kSynthHeight - 1, static_cast<int>(std::ceil(e.cy + e.ry)) + 1);
    for (int r = y0; r <= y1; ++r) {
        for (int c = x0; c <= x1; ++c) {
            double covered = 0.0;
            double shade = 0.0;
            for (int sy = 0; sy < kSupersample; ++sy) {
                for (int sx = 0; sx < kSupersample; ++sx) {
                    // pixel (r,c) covers [c, c+1) x [r, r+1)
                    const double nx = (c + (sx + 0.5) / kSupersample - e.cx) / e.rx;
                    const double ny = (r + (sy + 0.5) / kSupersample - e.cy) / e.ry;
                    if (nx * nx + ny * ny <= 1.0) {
                        covered += 1.0;
                        shade += target_texture(texture, nx, ny);
                    }
                }
            }
            if (covered > 0.0) {
                const double a = covered / (kSupersample * kSupersample);
                img(r, c) = (1.0 - a) * img(r, c) + a * (shade / covered);
            }
        }
    }
}

Image quantize(const Image& img)
{
    return (img.max(0.0).min(1.0) * 255.0).round() / 255.0;
}

}  // namespace

SyntheticSequence synthesize(SynthKind kind, int n_frames, std::uint32_t seed)
{
    if (n_frames < 1)
        throw std::invalid_argument("a synthetic sequence needs at least one frame");

    Uniform u(seed);
    const Image background = render_background(u);
    const auto texture = random_waves(u, 5, 7.0, 0.09);

    std::vector<Ellipse> path;
    for (int t = 1; t <= n_frames; ++t) {
        const double k = t - 1;
        switch (kind) {
        case SynthKind::Translate:
        case SynthKind::Occlude:
            path.push_back({60.0 + kSpeed * std::cos(kHeading) * k, 80.0 + kSpeed * std::sin(kHeading) * k,
                            kMovingRadius, kMovingRadius});
            break;
        case SynthKind::Grow: {
            const double r = kGrowingRadius * std::pow(kGrowth, k);
            path.push_back({kSynthWidth / 2.0, kSynthHeight / 2.0, r, r});
            break;
        }
        case SynthKind::Aspect:
            path.push_back({kSynthWidth / 2.0, kSynthHeight / 2.0, kGrowingRadius * std::pow(kGrowth, k),
                            kGrowingRadius});
            break;
        }
    }

    SyntheticSequence seq;
    double bar_x0 = 0.0;
    double bar_x1 = 0.0;
    if (kind == SynthKind::Occlude) {
        seq.occlusion_first = std::max(1, n_frames / 3);
        seq.occlusion_last = std::max(seq.occlusion_first, 2 * n_frames / 3);
        bar_x0 = path[static_cast<std::size_t>(seq.occlusion_first - 1)].cx - kMovingRadius - 6.0;
        bar_x1 = path[static_cast<std::size_t>(seq.occlusion_last - 1)].cx + kMovingRadius + 6.0;
    }

    for (int t = 1; t <= n_frames; ++t) {
        const Ellipse& e = path[static_cast<std::size_t>(t - 1)];
        Image img = background;
        draw_target(img, e, texture);
        if (t >= seq.occlusion_first && t <= seq.occlusion_last && seq.occlusion_first > 0) {
            for (int c = std::max(0, static_cast<int>(bar_x0)); c < std::min(kSynthWidth, static_cast<int>(bar_x1));
                 ++c)
                for (int r = 0; r < kSynthHeight; ++r)
                    img(r, c) = 0.25 + 0.02 * std::sin(0.5 * r);
        }
        // Per-frame sensor noise.
        for (Eigen::Index i = 0; i < img.size(); ++i)
            img(i) += 0.02 * (u() - 0.5);

        seq.frames.emplace_back(quantize(img), t);
        seq.truth.push_back({e.cx - e.rx, e.cy - e.ry, 2.0 * e.rx, 2.0 * e.ry});
    }
    return seq;
}

}  // namespace cftrack
