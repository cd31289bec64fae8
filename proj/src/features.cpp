#include "cftrack/features.hpp"

#include <algorithm>
#include <cmath>

namespace cftrack {

FeatureMap hog_cells(const Image& intensity, int bins, int cell, double clip)
{
    if (bins < 1 || cell < 1)
        throw std::invalid_argument("HOG needs at least one bin and a positive cell size");
    const Eigen::Index rows = intensity.rows();
    const Eigen::Index cols = intensity.cols();
    const Eigen::Index cell_rows = std::max<Eigen::Index>(1, rows / cell);
    const Eigen::Index cell_cols = std::max<Eigen::Index>(1, cols / cell);

    std::vector<Image> hist(static_cast<std::size_t>(bins), Image::Zero(cell_rows, cell_cols));
    auto at = [&](Eigen::Index r, Eigen::Index c) {
        return intensity(std::clamp<Eigen::Index>(r, 0, rows - 1), std::clamp<Eigen::Index>(c, 0, cols - 1));
    };

    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index cr = std::min(r / cell, cell_rows - 1);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double gx = at(r, c + 1) - at(r, c - 1);
            const double gy = at(r + 1, c) - at(r - 1, c);
            const double mag = std::hypot(gx, gy);
            if (mag == 0.0)
                continue;
            // EIGEN_PI is long double; mixing it in would push pi/2 just below a bin edge.
            constexpr double pi = EIGEN_PI;
            double theta = std::atan2(gy, gx);
            if (theta < 0.0)
                theta += pi;
            int bin = static_cast<int>(theta / pi * bins);
            bin = std::clamp(bin, 0, bins - 1);
            hist[static_cast<std::size_t>(bin)](cr, std::min(c / cell, cell_cols - 1)) += mag;
        }
    }

    for (Eigen::Index cr = 0; cr < cell_rows; ++cr) {
        for (Eigen::Index cc = 0; cc < cell_cols; ++cc) {
            double norm = 0.0;
            for (const auto& h : hist)
                norm += h(cr, cc) * h(cr, cc);
            norm = std::sqrt(norm);
            if (norm < 1e-12)
                continue;
            for (auto& h : hist)
                h(cr, cc) = std::min(h(cr, cc) / norm, clip);
        }
    }
    return FeatureMap(std::move(hist));
}

FeatureMap extract_features(const Patch& patch, const FeatureSpec& spec)
{
    if (patch.intensity.size() == 0)
        throw std::invalid_argument("empty patch");

    if (spec.kind == FeatureKind::Grayscale) {
        const Image window = cosine_window(patch.width(), patch.height());
        return FeatureMap(Image((patch.intensity - patch.intensity.mean()) * window));
    }

    FeatureMap hog = hog_cells(patch.intensity, spec.hog_bins, spec.hog_cell, spec.hog_clip);
    const Image window = cosine_window(static_cast<int>(hog.width()), static_cast<int>(hog.height()));
    for (auto& channel : hog.channels)
        channel *= window;
    return hog;
}

Eigen::VectorXd svm_feature_vector(const Frame& frame, const BoundingBox& box)
{
    Image pixels = extract_patch(frame, box, kSvmPatchSide, kSvmPatchSide).intensity;
    pixels -= pixels.mean();
    const double norm = std::sqrt(pixels.square().sum());

    // Row-major flatten of a column-major array.
    Eigen::VectorXd out(kSvmFeatureLength);
    for (int r = 0; r < kSvmPatchSide; ++r)
        for (int c = 0; c < kSvmPatchSide; ++c)
            out(r * kSvmPatchSide + c) = norm < 1e-12 ? 0.0 : pixels(r, c) / norm;
    return out;
}

}  // namespace cftrack
