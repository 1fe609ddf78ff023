#pragma once

#include <cmath>
#include <vector>

#include "enrec/image.hpp"

namespace enrec {

enum class BayerPattern { RGGB, GRBG, GBRG, BGGR };

// Task-dependent forward operator. apply/apply_adjoint form an exact adjoint
// pair by construction (subsampling composed with a symmetric zero-padded
// blur, or channel sampling).
class LinearOperator {
public:
    enum class Kind { Identity, GaussianDownsample, BayerMosaic };

    static LinearOperator identity() {
        LinearOperator op;
        op.kind_ = Kind::Identity;
        return op;
    }

    // Gaussian blur (truncated at 4*sigma, normalized) followed by stride-omega
    // subsampling. Requires dimensions divisible by omega.
    static LinearOperator gaussian_downsample(int omega, double sigma) {
        require(omega >= 1, "gaussian_downsample: scale factor must be >= 1");
        require(sigma > 0, "gaussian_downsample: sigma must be positive");
        LinearOperator op;
        op.kind_ = Kind::GaussianDownsample;
        op.omega_ = omega;
        const int radius = static_cast<int>(std::ceil(4.0 * sigma));
        op.kernel_.resize(2 * radius + 1);
        double sum = 0.0;
        for (int i = -radius; i <= radius; ++i)
            sum += op.kernel_[i + radius] = std::exp(-0.5 * sqr(i / sigma));
        for (double& k : op.kernel_) k /= sum;
        return op;
    }

    static LinearOperator bayer_mosaic(BayerPattern pattern = BayerPattern::RGGB) {
        LinearOperator op;
        op.kind_ = Kind::BayerMosaic;
        op.pattern_ = pattern;
        return op;
    }

    Kind kind() const { return kind_; }
    int scale() const { return omega_; }

    Image apply(const Image& img) const {
        switch (kind_) {
            case Kind::Identity:
                return img;
            case Kind::GaussianDownsample: {
                require(img.width % omega_ == 0 && img.height % omega_ == 0,
                        "gaussian_downsample: dimensions must be divisible by the scale factor");
                const Image blurred = blur(img);
                Image out(img.width / omega_, img.height / omega_, img.channels);
                for (int y = 0; y < out.height; ++y)
                    for (int x = 0; x < out.width; ++x)
                        for (int c = 0; c < img.channels; ++c)
                            out.at(x, y, c) = blurred.at(x * omega_, y * omega_, c);
                return out;
            }
            case Kind::BayerMosaic: {
                require(img.channels == 3, "bayer_mosaic: expects a 3-channel image");
                Image out(img.width, img.height, 1);
                for (int y = 0; y < img.height; ++y)
                    for (int x = 0; x < img.width; ++x)
                        out.at(x, y, 0) = img.at(x, y, bayer_channel(x, y));
                return out;
            }
        }
        throw NumericalError("unreachable");
    }

    Image apply_adjoint(const Image& img) const {
        switch (kind_) {
            case Kind::Identity:
                return img;
            case Kind::GaussianDownsample: {
                Image up(img.width * omega_, img.height * omega_, img.channels);
                for (int y = 0; y < img.height; ++y)
                    for (int x = 0; x < img.width; ++x)
                        for (int c = 0; c < img.channels; ++c)
                            up.at(x * omega_, y * omega_, c) = img.at(x, y, c);
                return blur(up); // symmetric kernel: correlation == convolution
            }
            case Kind::BayerMosaic: {
                require(img.channels == 1, "bayer_mosaic adjoint: expects a 1-channel image");
                Image out(img.width, img.height, 3);
                for (int y = 0; y < img.height; ++y)
                    for (int x = 0; x < img.width; ++x)
                        out.at(x, y, bayer_channel(x, y)) = img.at(x, y, 0);
                return out;
            }
        }
        throw NumericalError("unreachable");
    }

    int bayer_channel(int x, int y) const {
        // Channel index (0=R,1=G,2=B) at pixel parity (x%2, y%2).
        static constexpr int table[4][2][2] = {
            {{0, 1}, {1, 2}}, // RGGB
            {{1, 0}, {2, 1}}, // GRBG
            {{1, 2}, {0, 1}}, // GBRG
            {{2, 1}, {1, 0}}, // BGGR
        };
        return table[static_cast<int>(pattern_)][y % 2][x % 2];
    }

private:
    // Separable zero-padded blur with the truncated normalized Gaussian.
    Image blur(const Image& img) const {
        const int radius = static_cast<int>(kernel_.size()) / 2;
        Image tmp(img.width, img.height, img.channels);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                for (int c = 0; c < img.channels; ++c) {
                    double s = 0.0;
                    for (int k = -radius; k <= radius; ++k) {
                        const int sx = x + k;
                        if (sx >= 0 && sx < img.width) s += kernel_[k + radius] * img.at(sx, y, c);
                    }
                    tmp.at(x, y, c) = s;
                }
        Image out(img.width, img.height, img.channels);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                for (int c = 0; c < img.channels; ++c) {
                    double s = 0.0;
                    for (int k = -radius; k <= radius; ++k) {
                        const int sy = y + k;
                        if (sy >= 0 && sy < img.height) s += kernel_[k + radius] * tmp.at(x, sy, c);
                    }
                    out.at(x, y, c) = s;
                }
        return out;
    }

    Kind kind_ = Kind::Identity;
    int omega_ = 1;
    std::vector<double> kernel_;
    BayerPattern pattern_ = BayerPattern::RGGB;
};

// Catmull-Rom weight for sample distance t in units of the source grid.
inline double catmull_rom(double t) {
    t = std::fabs(t);
    if (t < 1.0) return 1.5 * t * t * t - 2.5 * t * t + 1.0;
    if (t < 2.0) return -0.5 * t * t * t + 2.5 * t * t - 4.0 * t + 2.0;
    return 0.0;
}

namespace detail {

// Bicubic interpolation of a channel known on the lattice
// {(offx + 2i, offy + 2j)} onto the full pixel grid.
inline void interp_lattice2(const Image& mosaic, Image& out, int channel, int offx, int offy) {
    const int nsx = (mosaic.width - offx + 1) / 2;
    const int nsy = (mosaic.height - offy + 1) / 2;
    for (int y = 0; y < out.height; ++y) {
        const double fy = (y - offy) / 2.0;
        const int iy = static_cast<int>(std::floor(fy));
        for (int x = 0; x < out.width; ++x) {
            const double fx = (x - offx) / 2.0;
            const int ix = static_cast<int>(std::floor(fx));
            double value = 0.0, wsum = 0.0;
            for (int dy = -1; dy <= 2; ++dy) {
                const int sy = reflect_index(iy + dy, nsy);
                const double wy = catmull_rom(fy - (iy + dy));
                if (wy == 0.0) continue;
                for (int dx = -1; dx <= 2; ++dx) {
                    const int sx = reflect_index(ix + dx, nsx);
                    const double wx = catmull_rom(fx - (ix + dx));
                    if (wx == 0.0) continue;
                    value += wx * wy * mosaic.at(offx + 2 * sx, offy + 2 * sy, 0);
                    wsum += wx * wy;
                }
            }
            out.at(x, y, channel) += value / wsum;
        }
    }
}

} // namespace detail

// Initializers A_init: identity for denoising, bicubic demosaic for mosaicing,
// omega^2 * A^T for super-resolution.
inline Image bicubic_demosaic(const Image& mosaic, BayerPattern pattern = BayerPattern::RGGB) {
    require(mosaic.channels == 1, "bicubic_demosaic: expects the 1-channel mosaic");
    require(mosaic.width >= 4 && mosaic.height >= 4, "bicubic_demosaic: image too small");
    const LinearOperator op = LinearOperator::bayer_mosaic(pattern);
    Image out(mosaic.width, mosaic.height, 3);
    // Locate the 2x2 parity cell of each channel; green lives on two lattices
    // whose interpolants are averaged.
    int green_count = 0;
    for (int py = 0; py < 2; ++py)
        for (int px = 0; px < 2; ++px) {
            const int c = op.bayer_channel(px, py);
            if (c == 1) ++green_count;
        }
    (void)green_count;
    for (int py = 0; py < 2; ++py)
        for (int px = 0; px < 2; ++px) {
            const int c = op.bayer_channel(px, py);
            detail::interp_lattice2(mosaic, out, c, px, py);
        }
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.at(x, y, 1) *= 0.5; // two green lattices were accumulated
    return out;
}

inline Image sisr_init(const LinearOperator& a, const Image& observation) {
    const double w2 = sqr(static_cast<double>(a.scale()));
    Image out = a.apply_adjoint(observation);
    for (double& v : out.data) v *= w2;
    return out;
}

} // namespace enrec
