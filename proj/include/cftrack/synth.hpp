#ifndef CFTRACK_SYNTH_HPP
#define CFTRACK_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cftrack/geometry.hpp"

namespace cftrack {

enum class SynthKind { Translate, Occlude, Grow, Aspect };

std::optional<SynthKind> parse_synth_kind(std::string_view name);
std::string_view to_string(SynthKind kind);

/// Rendered sequence; frames are already quantized to 8 bits so they match
/// what a PNG round trip produces.
struct SyntheticSequence
{
    std::vector<Frame> frames;
    std::vector<BoundingBox> truth;  ///< 0-indexed, one per frame, reported even while occluded
    int occlusion_first = 0;         ///< first occluded frame (1-based), 0 when none
    int occlusion_last = 0;
};

constexpr int kSynthWidth = 320;
constexpr int kSynthHeight = 240;

/// Textured disk over a static textured background.
///  - Translate: 2 px/frame straight-line motion.
///  - Occlude: the same motion, hidden by a bar over frames n/3 .. 2n/3.
///  - Grow: static center, both radii x1.01 per frame.
///  - Aspect: static center, horizontal radius x1.01 per frame.
SyntheticSequence synthesize(SynthKind kind, int n_frames, std::uint32_t seed);

}  // namespace cftrack

#endif
