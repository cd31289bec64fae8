#ifndef CFTRACK_CORRELATION_FILTER_HPP
#define CFTRACK_CORRELATION_FILTER_HPP

// Kernelized ridge regression over all circular shifts of a base sample,
// solved in the DFT domain.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cftrack/dft.hpp"
#include "cftrack/features.hpp"

namespace cftrack {

/// Raised when a computation that must be real-valued is not.
struct ConsistencyError : std::logic_error
{
    using std::logic_error::logic_error;
};

template <typename Scalar>
struct BasicFilterModel
{
    SpectrumX2<Scalar> alpha_hat;
    BasicFeatureMap<Scalar> base;
    Scalar lambda = Scalar(1e-4);
    Scalar kernel_sigma = Scalar(0.5);
    Scalar label_sigma = Scalar(1);
    Scalar eta = Scalar(0.02);

    bool operator==(const BasicFilterModel& other) const
    {
        return alpha_hat.rows() == other.alpha_hat.rows() && alpha_hat.cols() == other.alpha_hat.cols() &&
               (alpha_hat == other.alpha_hat).all() && base == other.base && lambda == other.lambda &&
               kernel_sigma == other.kernel_sigma && label_sigma == other.label_sigma && eta == other.eta;
    }
};

using FilterModel = BasicFilterModel<double>;

namespace detail {

template <typename Scalar>
ArrayX2<Scalar> real_part_checked(const SpectrumX2<Scalar>& a)
{
    if (a.size() > 0 && a.imag().abs().maxCoeff() > Scalar(1e-6))
        throw ConsistencyError("inverse DFT of a real product left an imaginary residual");
    return a.real();
}

template <typename Scalar>
void require_same_shape(const BasicFeatureMap<Scalar>& x, const BasicFeatureMap<Scalar>& z)
{
    if (!x.same_shape(z) || x.channel_count() == 0)
        throw std::invalid_argument("feature maps must have identical, non-empty shapes");
}

}  // namespace detail

/// Regression target peaked at index (0,0) with circular distance.
template <typename Scalar = double>
ArrayX2<Scalar> gaussian_labels(int w, int h, Scalar label_sigma)
{
    if (w < 1 || h < 1 || !(label_sigma > 0))
        throw std::invalid_argument("labels need w,h >= 1 and label_sigma > 0");
    ArrayX2<Scalar> y(h, w);
    const Scalar denom = Scalar(2) * label_sigma * label_sigma;
    for (int c = 0; c < w; ++c) {
        const Scalar dc = static_cast<Scalar>(std::min(c, w - c));
        for (int r = 0; r < h; ++r) {
            const Scalar dr = static_cast<Scalar>(std::min(r, h - r));
            y(r, c) = std::exp(-(dr * dr + dc * dc) / denom);
        }
    }
    return y;
}

/// ccs(r,c) = sum over channels and pixels of x(i,j) z(i+r, j+c), circularly.
template <typename Scalar>
ArrayX2<Scalar> circular_cross_correlation(const BasicFeatureMap<Scalar>& x, const BasicFeatureMap<Scalar>& z)
{
    detail::require_same_shape(x, z);
    SpectrumX2<Scalar> acc = SpectrumX2<Scalar>::Zero(x.height(), x.width());
    for (std::size_t c = 0; c < x.channels.size(); ++c)
        acc += dft2(x.channels[c]).conjugate() * dft2(z.channels[c]);
    return detail::real_part_checked<Scalar>(idft2<Scalar>(acc));
}

/// Gaussian kernel evaluated between x and every circular shift of z.
template <typename Scalar>
ArrayX2<Scalar> kernel_correlation(const BasicFeatureMap<Scalar>& x, const BasicFeatureMap<Scalar>& z,
                                   Scalar kernel_sigma)
{
    const ArrayX2<Scalar> ccs = circular_cross_correlation(x, z);
    const Scalar numel = static_cast<Scalar>(x.height() * x.width() * x.channel_count());
    const Scalar norms = x.squared_norm() + z.squared_norm();
    const ArrayX2<Scalar> dist = (norms - Scalar(2) * ccs).max(Scalar(0));
    return (-dist / (kernel_sigma * kernel_sigma * numel)).exp();
}

/// Linear kernel: ccs / (M N C).
template <typename Scalar>
ArrayX2<Scalar> linear_kernel_correlation(const BasicFeatureMap<Scalar>& x, const BasicFeatureMap<Scalar>& z)
{
    const Scalar numel = static_cast<Scalar>(x.height() * x.width() * x.channel_count());
    return circular_cross_correlation(x, z) / numel;
}

/// alpha_hat = y_hat / (k_hat + lambda) for a precomputed autocorrelation k.
template <typename Scalar>
SpectrumX2<Scalar> train_dual(const ArrayX2<Scalar>& kxx, const ArrayX2<Scalar>& labels, Scalar lambda)
{
    if (kxx.rows() != labels.rows() || kxx.cols() != labels.cols())
        throw std::invalid_argument("labels must match the feature spatial shape");
    if (!(lambda > 0))
        throw std::invalid_argument("lambda must be positive");
    return dft2(labels) / (dft2(kxx) + std::complex<Scalar>(lambda));
}

template <typename Scalar>
SpectrumX2<Scalar> train(const BasicFeatureMap<Scalar>& features, const ArrayX2<Scalar>& labels, Scalar lambda,
                         Scalar kernel_sigma)
{
    if (features.height() != labels.rows() || features.width() != labels.cols())
        throw std::invalid_argument("labels must match the feature spatial shape");
    return train_dual<Scalar>(kernel_correlation(features, features, kernel_sigma), labels, lambda);
}

/// Primal closed form for a single channel: w_hat = x_hat y_hat / (x_hat conj(x_hat) + lambda).
template <typename Scalar>
SpectrumX2<Scalar> train_linear(const BasicFeatureMap<Scalar>& features, const ArrayX2<Scalar>& labels, Scalar lambda)
{
    if (features.channel_count() != 1)
        throw std::invalid_argument("the primal closed form is single-channel");
    if (features.height() != labels.rows() || features.width() != labels.cols())
        throw std::invalid_argument("labels must match the feature spatial shape");
    if (!(lambda > 0))
        throw std::invalid_argument("lambda must be positive");
    const SpectrumX2<Scalar> xf = dft2(features.channels.front());
    return xf * dft2(labels) / (xf * xf.conjugate() + std::complex<Scalar>(lambda));
}

template <typename Scalar>
BasicFilterModel<Scalar> make_model(BasicFeatureMap<Scalar> features, const ArrayX2<Scalar>& labels, Scalar lambda,
                                    Scalar kernel_sigma, Scalar label_sigma, Scalar eta)
{
    if (!(kernel_sigma > 0) || !(label_sigma > 0) || !(eta >= 0 && eta <= 1))
        throw std::invalid_argument("filter parameters out of range");
    BasicFilterModel<Scalar> model;
    model.alpha_hat = train(features, labels, lambda, kernel_sigma);
    model.base = std::move(features);
    model.lambda = lambda;
    model.kernel_sigma = kernel_sigma;
    model.label_sigma = label_sigma;
    model.eta = eta;
    return model;
}

/// Response over all circular displacements of z; index (r,c) is the shift.
template <typename Scalar>
ArrayX2<Scalar> detect(const BasicFilterModel<Scalar>& model, const BasicFeatureMap<Scalar>& z)
{
    detail::require_same_shape(model.base, z);
    const ArrayX2<Scalar> kxz = kernel_correlation(model.base, z, model.kernel_sigma);
    return detail::real_part_checked<Scalar>(idft2<Scalar>(SpectrumX2<Scalar>(dft2(kxz) * model.alpha_hat)));
}

template <typename Scalar>
Scalar response_at_zero(const BasicFilterModel<Scalar>& model, const BasicFeatureMap<Scalar>& z)
{
    return detect(model, z)(0, 0);
}

/// Linear interpolation of the base sample and dual coefficients with rate eta.
template <typename Scalar>
BasicFilterModel<Scalar> update(const BasicFilterModel<Scalar>& model, const BasicFeatureMap<Scalar>& new_base,
                                const SpectrumX2<Scalar>& new_alpha_hat)
{
    detail::require_same_shape(model.base, new_base);
    if (new_alpha_hat.rows() != model.alpha_hat.rows() || new_alpha_hat.cols() != model.alpha_hat.cols())
        throw std::invalid_argument("dual coefficient shape mismatch");

    const Scalar eta = model.eta;
    BasicFilterModel<Scalar> out = model;
    for (std::size_t c = 0; c < out.base.channels.size(); ++c)
        out.base.channels[c] = (Scalar(1) - eta) * model.base.channels[c] + eta * new_base.channels[c];
    out.alpha_hat = (Scalar(1) - eta) * model.alpha_hat + eta * new_alpha_hat;
    return out;
}

struct Peak
{
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    double value = 0.0;
};

/// First maximum in column-major scan order.
template <typename Derived>
Peak find_peak(const Eigen::ArrayBase<Derived>& response)
{
    Peak p;
    p.value = static_cast<double>(response.maxCoeff(&p.row, &p.col));
    return p;
}

}  // namespace cftrack

#endif
