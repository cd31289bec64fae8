#ifndef CFTRACK_FEATURES_HPP
#define CFTRACK_FEATURES_HPP

#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "cftrack/dft.hpp"
#include "cftrack/geometry.hpp"

namespace cftrack {

/// Multi-channel feature map; every channel shares one (height, width).
template <typename Scalar>
struct BasicFeatureMap
{
    std::vector<ArrayX2<Scalar>> channels;

    BasicFeatureMap() = default;
    explicit BasicFeatureMap(std::vector<ArrayX2<Scalar>> ch) : channels(std::move(ch))
    {
        for (const auto& c : channels)
            if (c.rows() != channels.front().rows() || c.cols() != channels.front().cols())
                throw std::invalid_argument("feature channels must share their shape");
    }
    explicit BasicFeatureMap(ArrayX2<Scalar> single) { channels.push_back(std::move(single)); }

    Eigen::Index channel_count() const { return static_cast<Eigen::Index>(channels.size()); }
    Eigen::Index height() const { return channels.empty() ? 0 : channels.front().rows(); }
    Eigen::Index width() const { return channels.empty() ? 0 : channels.front().cols(); }

    bool same_shape(const BasicFeatureMap& other) const
    {
        return channel_count() == other.channel_count() && height() == other.height() && width() == other.width();
    }

    Scalar squared_norm() const
    {
        Scalar total = 0;
        for (const auto& c : channels)
            total += c.square().sum();
        return total;
    }

    bool operator==(const BasicFeatureMap& other) const
    {
        if (!same_shape(other))
            return false;
        for (std::size_t i = 0; i < channels.size(); ++i)
            if ((channels[i] != other.channels[i]).any())
                return false;
        return true;
    }
};

using FeatureMap = BasicFeatureMap<double>;

enum class FeatureKind { Grayscale, Hog };

struct FeatureSpec
{
    FeatureKind kind = FeatureKind::Grayscale;
    int hog_bins = 9;
    int hog_cell = 4;
    double hog_clip = 0.2;

    /// Pixels per feature cell.
    int cell_size() const { return kind == FeatureKind::Hog ? hog_cell : 1; }
};

/// Outer product of 1-D Hann windows, h rows by w columns.
template <typename Scalar = double>
ArrayX2<Scalar> cosine_window(int w, int h)
{
    if (w < 1 || h < 1)
        throw std::invalid_argument("window size must be at least 1x1");
    auto hann = [](int n) {
        Eigen::Array<Scalar, Eigen::Dynamic, 1> v(n);
        if (n == 1) {
            v(0) = Scalar(1);
            return v;
        }
        for (int i = 0; i < n; ++i)
            v(i) = Scalar(0.5) * (Scalar(1) - std::cos(Scalar(2 * EIGEN_PI) * i / (n - 1)));
        return v;
    };
    return (hann(h).matrix() * hann(w).matrix().transpose()).array();
}

/// Unwindowed per-cell orientation histograms: `bins` unsigned orientation
/// bins over [0, pi), one cell per `cell` x `cell` pixels, each cell L2
/// normalized and clipped at `clip`.
FeatureMap hog_cells(const Image& intensity, int bins, int cell, double clip);

FeatureMap extract_features(const Patch& patch, const FeatureSpec& spec);

constexpr int kSvmPatchSide = 32;
constexpr int kSvmFeatureLength = kSvmPatchSide * kSvmPatchSide;

/// 32x32 crop of `box`, zero-mean, unit L2 norm, flattened row-major.
Eigen::VectorXd svm_feature_vector(const Frame& frame, const BoundingBox& box);

}  // namespace cftrack

#endif
