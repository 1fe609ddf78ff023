#pragma once

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include <png.h>

#include "enrec/image.hpp"

namespace enrec {

// PNG and PGM/PPM raster I/O. Files hold 8- or 16-bit integers mapped
// linearly to [0,1]; save clamps to [0,1] and rounds.

namespace detail {

inline uint16_t quantize(double v, int maxval) {
    v = std::min(1.0, std::max(0.0, v));
    return static_cast<uint16_t>(std::lround(v * maxval));
}

struct FileCloser {
    void operator()(FILE* f) const { if (f) std::fclose(f); }
};

} // namespace detail

inline bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline Image load_png(const std::string& path) {
    std::unique_ptr<FILE, detail::FileCloser> fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw ConfigError("cannot open image file: " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ConfigError("failed to decode PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    if (bit_depth == 16) png_set_swap(png); // stored big-endian
    png_read_update_info(png, info);

    const int width = png_get_image_width(png, info);
    const int height = png_get_image_height(png, info);
    const int channels = png_get_channels(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int maxval = depth == 16 ? 65535 : 255;
    require(channels == 1 || channels == 3, "load_png: unsupported channel count in " + path);

    std::vector<std::vector<png_byte>> rows(height,
        std::vector<png_byte>(png_get_rowbytes(png, info)));
    std::vector<png_bytep> row_ptrs(height);
    for (int y = 0; y < height; ++y) row_ptrs[y] = rows[y].data();
    png_read_image(png, row_ptrs.data());
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(width, height, channels);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            for (int c = 0; c < channels; ++c) {
                uint16_t v;
                if (depth == 16)
                    std::memcpy(&v, &rows[y][(x * channels + c) * 2], 2);
                else
                    v = rows[y][x * channels + c];
                img.at(x, y, c) = static_cast<double>(v) / maxval;
            }
    return img;
}

inline void save_png(const Image& img, const std::string& path, int bit_depth = 8) {
    require(bit_depth == 8 || bit_depth == 16, "save_png: bit depth must be 8 or 16");
    require(img.channels == 1 || img.channels == 3, "save_png: unsupported channel count");
    std::unique_ptr<FILE, detail::FileCloser> fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw ConfigError("cannot create image file: " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw ConfigError("failed to encode PNG: " + path);
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, img.width, img.height, bit_depth,
                 img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    if (bit_depth == 16) png_set_swap(png);

    const int maxval = bit_depth == 16 ? 65535 : 255;
    const size_t rowbytes = static_cast<size_t>(img.width) * img.channels * (bit_depth / 8);
    std::vector<png_byte> row(rowbytes);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c) {
                const uint16_t v = detail::quantize(img.at(x, y, c), maxval);
                if (bit_depth == 16)
                    std::memcpy(&row[(x * img.channels + c) * 2], &v, 2);
                else
                    row[x * img.channels + c] = static_cast<png_byte>(v);
            }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

namespace detail {

inline int pnm_token(std::istream& in) {
    // Skips whitespace and '#' comments.
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value;
    in >> value;
    return value;
}

} // namespace detail

inline Image load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open image file: " + path);
    std::string magic(2, '\0');
    in.read(magic.data(), 2);
    int channels;
    if (magic == "P5") channels = 1;
    else if (magic == "P6") channels = 3;
    else throw ConfigError("unsupported PNM magic in " + path);
    const int width = detail::pnm_token(in);
    const int height = detail::pnm_token(in);
    const int maxval = detail::pnm_token(in);
    require(maxval == 255 || maxval == 65535, "load_pnm: maxval must be 255 or 65535");
    in.get(); // single whitespace before raster
    Image img(width, height, channels);
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raster(static_cast<size_t>(width) * height * channels * bytes);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (!in) throw ConfigError("truncated PNM raster in " + path);
    size_t k = 0;
    for (double& v : img.data) {
        uint16_t value;
        if (bytes == 2) { // big-endian per PNM spec
            value = static_cast<uint16_t>((raster[k] << 8) | raster[k + 1]);
            k += 2;
        } else {
            value = raster[k++];
        }
        v = static_cast<double>(value) / maxval;
    }
    return img;
}

inline void save_pnm(const Image& img, const std::string& path, int bit_depth = 8) {
    require(bit_depth == 8 || bit_depth == 16, "save_pnm: bit depth must be 8 or 16");
    require(img.channels == 1 || img.channels == 3, "save_pnm: unsupported channel count");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot create image file: " + path);
    const int maxval = bit_depth == 16 ? 65535 : 255;
    out << (img.channels == 1 ? "P5" : "P6") << "\n"
        << img.width << " " << img.height << "\n" << maxval << "\n";
    for (double v : img.data) {
        const uint16_t q = detail::quantize(v, maxval);
        if (bit_depth == 16) {
            out.put(static_cast<char>(q >> 8));
            out.put(static_cast<char>(q & 0xff));
        } else {
            out.put(static_cast<char>(q));
        }
    }
}

inline Image load_image(const std::string& path) {
    if (has_suffix(path, ".png")) return load_png(path);
    if (has_suffix(path, ".pgm") || has_suffix(path, ".ppm") || has_suffix(path, ".pnm"))
        return load_pnm(path);
    throw ConfigError("unsupported image format: " + path);
}

inline void save_image(const Image& img, const std::string& path, int bit_depth = 8) {
    if (has_suffix(path, ".png")) return save_png(img, path, bit_depth);
    if (has_suffix(path, ".pgm") || has_suffix(path, ".ppm") || has_suffix(path, ".pnm"))
        return save_pnm(img, path, bit_depth);
    throw ConfigError("unsupported image format: " + path);
}

} // namespace enrec
