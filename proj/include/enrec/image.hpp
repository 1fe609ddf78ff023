#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "enrec/common.hpp"

namespace enrec {

// Vectorized raster image: row-major, channel-interleaved doubles.
// Inputs are scaled to [0,1]; intermediate flow states may leave that range
// and are never clamped.
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;

    Image() = default;
    Image(int w, int h, int c, double fill = 0.0)
        : width(w), height(h), channels(c),
          data(static_cast<size_t>(w) * h * c, fill) {}

    size_t size() const { return data.size(); }
    bool same_shape(const Image& o) const {
        return width == o.width && height == o.height && channels == o.channels;
    }

    double& at(int x, int y, int c) {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
    double at(int x, int y, int c) const {
        return data[(static_cast<size_t>(y) * width + x) * channels + c];
    }
};

// Reflected index into [0, n): mirror without repeating the border sample.
inline int reflect_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i = std::abs(i) % period;
    return i < n ? i : period - i;
}

inline Image pad_reflect(const Image& img, int margin) {
    require(margin >= 0, "pad_reflect: negative margin");
    require(margin < std::min(img.width, img.height),
            "pad_reflect: margin must be smaller than both image dimensions");
    Image out(img.width + 2 * margin, img.height + 2 * margin, img.channels);
    for (int y = 0; y < out.height; ++y) {
        const int sy = reflect_index(y - margin, img.height);
        for (int x = 0; x < out.width; ++x) {
            const int sx = reflect_index(x - margin, img.width);
            for (int c = 0; c < img.channels; ++c)
                out.at(x, y, c) = img.at(sx, sy, c);
        }
    }
    return out;
}

inline Image crop(const Image& img, int margin) {
    require(margin >= 0, "crop: negative margin");
    require(2 * margin < std::min(img.width, img.height), "crop: margin too large");
    Image out(img.width - 2 * margin, img.height - 2 * margin, img.channels);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(x, y, c) = img.at(x + margin, y + margin, c);
    return out;
}

inline Image crop_window(const Image& img, int x0, int y0, int w, int h) {
    require(x0 >= 0 && y0 >= 0 && x0 + w <= img.width && y0 + h <= img.height,
            "crop_window: window out of bounds");
    Image out(w, h, img.channels);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
    return out;
}

inline double mse(const Image& a, const Image& b) {
    require(a.same_shape(b), "mse: shape mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += sqr(a.data[i] - b.data[i]);
    return s / static_cast<double>(a.size());
}

// Peak 1.0 on [0,1]-scaled data; +inf when the images coincide.
inline double psnr(const Image& a, const Image& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(m);
}

// BT.601 luma from an RGB image.
inline Image y_channel(const Image& img) {
    require(img.channels == 3, "y_channel: expects a 3-channel image");
    Image out(img.width, img.height, 1);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y, 0) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) +
                              0.114 * img.at(x, y, 2);
    return out;
}

// Rotation by multiples of 90 degrees plus optional horizontal flip; used for
// training-time augmentation.
inline Image rotate90(const Image& img, int quarter_turns) {
    quarter_turns = ((quarter_turns % 4) + 4) % 4;
    if (quarter_turns == 0) return img;
    const bool swap = quarter_turns % 2 == 1;
    Image out(swap ? img.height : img.width, swap ? img.width : img.height, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            int tx = 0, ty = 0;
            switch (quarter_turns) {
                case 1: tx = img.height - 1 - y; ty = x; break;
                case 2: tx = img.width - 1 - x; ty = img.height - 1 - y; break;
                case 3: tx = y; ty = img.width - 1 - x; break;
            }
            for (int c = 0; c < img.channels; ++c)
                out.at(tx, ty, c) = img.at(x, y, c);
        }
    return out;
}

inline Image flip_horizontal(const Image& img) {
    Image out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(img.width - 1 - x, y, c) = img.at(x, y, c);
    return out;
}

} // namespace enrec
