#include "cftrack/sequence_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

namespace fs = std::filesystem;

namespace cftrack {

namespace {

bool is_image(const fs::path& p)
{
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

// Numeric value of the stem's digits; stems without digits sort last.
std::pair<long long, std::string> sort_key(const fs::path& p)
{
    const std::string stem = p.stem().string();
    std::string digits;
    std::copy_if(stem.begin(), stem.end(), std::back_inserter(digits),
                 [](unsigned char ch) { return std::isdigit(ch); });
    long long value = digits.empty() ? std::numeric_limits<long long>::max() : std::stoll(digits);
    return {value, p.filename().string()};
}

std::string fixed(double v, int precision)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

}  // namespace

ImageSequence::ImageSequence(const fs::path& frames_dir)
{
    std::error_code ec;
    if (!fs::is_directory(frames_dir, ec))
        throw IoError("not a directory: " + frames_dir.string());
    for (const auto& entry : fs::directory_iterator(frames_dir))
        if (entry.is_regular_file() && is_image(entry.path()))
            files_.push_back(entry.path());
    std::sort(files_.begin(), files_.end(), [](const fs::path& a, const fs::path& b) { return sort_key(a) < sort_key(b); });
    if (files_.empty())
        throw IoError("no images in " + frames_dir.string());
}

Frame ImageSequence::load(std::size_t i) const { return read_frame(files_.at(i), static_cast<int>(i) + 1); }

Frame read_frame(const fs::path& file, int index)
{
    const cv::Mat raw = cv::imread(file.string(), cv::IMREAD_UNCHANGED);
    if (raw.empty())
        throw IoError("cannot read image " + file.string());

    const double scale = raw.depth() == CV_16U ? 65535.0 : 255.0;
    cv::Mat real;
    raw.convertTo(real, CV_64F, 1.0 / scale);

    Image out(real.rows, real.cols);
    std::vector<cv::Mat> planes;
    cv::split(real, planes);
    if (planes.size() < 3) {
        // gray, or gray plus alpha
        for (int r = 0; r < real.rows; ++r)
            for (int c = 0; c < real.cols; ++c)
                out(r, c) = planes[0].at<double>(r, c);
    } else {
        const std::vector<cv::Mat>& bgr = planes;
        for (int r = 0; r < real.rows; ++r)
            for (int c = 0; c < real.cols; ++c)
                out(r, c) = 0.299 * bgr[2].at<double>(r, c) + 0.587 * bgr[1].at<double>(r, c) +
                            0.114 * bgr[0].at<double>(r, c);
    }
    return Frame(out.max(0.0).min(1.0), index);
}

namespace {

cv::Mat to_mat8(const Frame& frame)
{
    cv::Mat img(frame.height(), frame.width(), CV_8UC1);
    for (int r = 0; r < frame.height(); ++r)
        for (int c = 0; c < frame.width(); ++c)
            img.at<unsigned char>(r, c) = static_cast<unsigned char>(std::lround(frame.intensity(r, c) * 255.0));
    return img;
}

void write_mat(const fs::path& file, const cv::Mat& img)
{
    if (!cv::imwrite(file.string(), img))
        throw IoError("cannot write image " + file.string());
}

}  // namespace

void write_frame(const fs::path& file, const Frame& frame) { write_mat(file, to_mat8(frame)); }

void write_overlay(const fs::path& file, const Frame& frame, const BoundingBox& box)
{
    cv::Mat color;
    cv::cvtColor(to_mat8(frame), color, cv::COLOR_GRAY2BGR);
    const cv::Point tl(static_cast<int>(std::lround(box.x)), static_cast<int>(std::lround(box.y)));
    const cv::Point br(static_cast<int>(std::lround(box.x + box.w)) - 1, static_cast<int>(std::lround(box.y + box.h)) - 1);
    cv::rectangle(color, tl, br, cv::Scalar(0, 0, 255), 2);
    write_mat(file, color);
}

BoundingBox parse_box(const std::string& text)
{
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    double v[4];
    for (double& x : v) {
        std::string token;
        if (!(in >> token))
            throw ParseError("expected four numbers in '" + text + "'");
        const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
        if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(x))
            throw ParseError("not a number: '" + token + "'");
    }
    std::string extra;
    if (in >> extra)
        throw ParseError("more than four values in '" + text + "'");
    return {v[0] - 1.0, v[1] - 1.0, v[2], v[3]};
}

std::vector<std::optional<BoundingBox>> parse_ground_truth(std::istream& in)
{
    std::vector<std::optional<BoundingBox>> boxes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        // Some benchmarks mark frames without ground truth with NaN rows.
        std::string lowered = line;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (lowered.find("nan") != std::string::npos) {
            boxes.push_back(std::nullopt);
            continue;
        }
        try {
            const BoundingBox b = parse_box(line);
            boxes.push_back(b.valid() ? std::optional<BoundingBox>(b) : std::nullopt);
        } catch (const ParseError& e) {
            throw ParseError("ground truth line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return boxes;
}

std::vector<std::optional<BoundingBox>> load_ground_truth(const fs::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open ground truth " + file.string());
    return parse_ground_truth(in);
}

void write_ground_truth(std::ostream& out, const std::vector<BoundingBox>& boxes)
{
    for (const auto& b : boxes)
        out << fixed(b.x + 1.0, 4) << ',' << fixed(b.y + 1.0, 4) << ',' << fixed(b.w, 4) << ',' << fixed(b.h, 4)
            << '\n';
}

void write_results_header(std::ostream& out, bool with_iou)
{
    out << "frame_index,x,y,w,h,peak,apsr,condition,stream";
    if (with_iou)
        out << ",iou";
    out << '\n';
}

void write_result_row(std::ostream& out, int frame_index, const FrameResult& result,
                      const std::optional<double>& iou_value)
{
    const BoundingBox& b = result.box;
    out << frame_index << ',' << fixed(b.x + 1.0, 4) << ',' << fixed(b.y + 1.0, 4) << ',' << fixed(b.w, 4) << ','
        << fixed(b.h, 4) << ',' << fixed(result.peak, 6) << ',' << fixed(result.apsr, 6) << ','
        << to_string(result.condition) << ',' << to_string(result.stream);
    if (iou_value)
        out << ',' << fixed(*iou_value, 6);
    out << '\n';
}

std::vector<BoundingBox> load_results(const fs::path& file)
{
    std::ifstream in(file);
    if (!in)
        throw IoError("cannot open results " + file.string());
    std::vector<BoundingBox> boxes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        for (std::string f; std::getline(row, f, ',');)
            fields.push_back(f);
        if (fields.size() < 5)
            throw ParseError("results line " + std::to_string(line_no) + ": expected at least 5 fields");
        try {
            boxes.push_back(parse_box(fields[1] + "," + fields[2] + "," + fields[3] + "," + fields[4]));
        } catch (const ParseError& e) {
            throw ParseError("results line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return boxes;
}

}  // namespace cftrack
