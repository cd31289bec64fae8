#ifndef CFTRACK_SEQUENCE_IO_HPP
#define CFTRACK_SEQUENCE_IO_HPP

// File formats: OTB-style ground truth (1-indexed "x,y,w,h" lines), the
// per-frame results CSV, and image frames on disk. All files use 1-indexed
// box coordinates; everything in memory is 0-indexed.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cftrack/geometry.hpp"
#include "cftrack/tracker.hpp"

namespace cftrack {

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Image files of a sequence directory, ordered by the numeric value of
/// their file stem.
class ImageSequence
{
public:
    explicit ImageSequence(const std::filesystem::path& frames_dir);

    std::size_t size() const { return files_.size(); }
    const std::filesystem::path& path(std::size_t i) const { return files_.at(i); }

    /// Decodes frame i (0-based) to grayscale; its Frame::index is i + 1.
    Frame load(std::size_t i) const;

private:
    std::vector<std::filesystem::path> files_;
};

Frame read_frame(const std::filesystem::path& file, int index);
void write_frame(const std::filesystem::path& file, const Frame& frame);

/// Writes the frame with `box` drawn as a 2-px red rectangle.
void write_overlay(const std::filesystem::path& file, const Frame& frame, const BoundingBox& box);

/// Parses "x,y,w,h" with comma and/or whitespace separators. Zero-area rows
/// mark absent ground truth.
BoundingBox parse_box(const std::string& text);
std::vector<std::optional<BoundingBox>> parse_ground_truth(std::istream& in);
std::vector<std::optional<BoundingBox>> load_ground_truth(const std::filesystem::path& file);
void write_ground_truth(std::ostream& out, const std::vector<BoundingBox>& boxes);

void write_results_header(std::ostream& out, bool with_iou);
void write_result_row(std::ostream& out, int frame_index, const FrameResult& result,
                      const std::optional<double>& iou_value);

/// Boxes from a results CSV written by write_result_row.
std::vector<BoundingBox> load_results(const std::filesystem::path& file);

}  // namespace cftrack

#endif
