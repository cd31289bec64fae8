#ifndef CFTRACK_DFT_HPP
#define CFTRACK_DFT_HPP

#include <complex>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace cftrack {

template <typename Scalar>
using ArrayX2 = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using SpectrumX2 = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

// In-place 1-D transforms along every column, then every row. A length-1
// transform is the identity and is skipped; the FFT backend cannot plan it.
template <typename Scalar>
void transform_2d(SpectrumX2<Scalar>& a, bool inverse)
{
    Eigen::FFT<Scalar> fft;
    using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
    CVector in, out;

    in.resize(a.rows());
    for (Eigen::Index c = 0; a.rows() > 1 && c < a.cols(); ++c) {
        in = a.col(c).matrix();
        if (inverse)
            fft.inv(out, in);
        else
            fft.fwd(out, in);
        a.col(c) = out.array();
    }
    in.resize(a.cols());
    for (Eigen::Index r = 0; a.cols() > 1 && r < a.rows(); ++r) {
        in = a.row(r).transpose().matrix();
        if (inverse)
            fft.inv(out, in);
        else
            fft.fwd(out, in);
        a.row(r) = out.transpose().array();
    }
}

}  // namespace detail

/// Unnormalized forward 2-D DFT.
template <typename Derived>
SpectrumX2<typename Derived::Scalar> dft2(const Eigen::ArrayBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    SpectrumX2<Scalar> out = a.template cast<std::complex<Scalar>>();
    detail::transform_2d<Scalar>(out, false);
    return out;
}

/// Inverse 2-D DFT including the 1/(M*N) factor.
template <typename Scalar>
SpectrumX2<Scalar> idft2(const SpectrumX2<Scalar>& spectrum)
{
    SpectrumX2<Scalar> out = spectrum;
    detail::transform_2d<Scalar>(out, true);
    return out;
}

/// Circular shift: out(r, c) = a((r - dr) mod M, (c - dc) mod N).
template <typename Derived>
ArrayX2<typename Derived::Scalar> circshift(const Eigen::ArrayBase<Derived>& a, Eigen::Index dr, Eigen::Index dc)
{
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    ArrayX2<typename Derived::Scalar> out(m, n);
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index r = 0; r < m; ++r)
            out(((r + dr) % m + m) % m, ((c + dc) % n + n) % n) = a(r, c);
    return out;
}

/// Maps an array index to a signed circular displacement in (-n/2, n/2].
inline Eigen::Index signed_displacement(Eigen::Index index, Eigen::Index n)
{
    return index > n / 2 ? index - n : index;
}

}  // namespace cftrack

#endif
