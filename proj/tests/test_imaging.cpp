#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "enrec/image.hpp"
#include "enrec/image_io.hpp"
#include "enrec/linear_op.hpp"
#include "enrec/noise.hpp"
#include "enrec/rng.hpp"

using namespace enrec;

namespace {

Image random_image(int w, int h, int c, Rng& rng) {
    Image img(w, h, c);
    for (double& v : img.data) v = rng.uniform();
    return img;
}

double inner(const Image& a, const Image& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

std::vector<char> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::vector<char>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("identity operator returns the input unchanged", "[imaging]") {
    Rng rng(1);
    const Image img = random_image(7, 5, 3, rng);
    const auto op = LinearOperator::identity();
    const Image out = op.apply(img);
    REQUIRE(out.data == img.data);
}

TEST_CASE("gaussian downsample shape arithmetic", "[imaging]") {
    Rng rng(2);
    const Image img = random_image(12, 12, 1, rng);
    const auto op = LinearOperator::gaussian_downsample(3, 2.0);
    const Image out = op.apply(img);
    REQUIRE(out.width == 4);
    REQUIRE(out.height == 4);
    const Image odd = random_image(13, 12, 1, rng);
    REQUIRE_THROWS_AS(op.apply(odd), ConfigError);
}

TEST_CASE("adjoint identity holds for every operator kind", "[imaging]") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        // gaussian downsample 8x8 -> 4x4
        {
            const auto op = LinearOperator::gaussian_downsample(2, 1.5);
            const Image u = random_image(8, 8, 1, rng);
            const Image v = random_image(4, 4, 1, rng);
            const double lhs = inner(op.apply(u), v);
            const double rhs = inner(u, op.apply_adjoint(v));
            REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-10));
        }
        // bayer mosaic on RGB
        {
            const auto op = LinearOperator::bayer_mosaic();
            const Image u = random_image(6, 6, 3, rng);
            const Image v = random_image(6, 6, 1, rng);
            const double lhs = inner(op.apply(u), v);
            const double rhs = inner(u, op.apply_adjoint(v));
            REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-10));
        }
        // identity
        {
            const auto op = LinearOperator::identity();
            const Image u = random_image(5, 4, 1, rng);
            const Image v = random_image(5, 4, 1, rng);
            REQUIRE(inner(op.apply(u), v) == Catch::Approx(inner(u, op.apply_adjoint(v))));
        }
    }
}

TEST_CASE("sisr scale 3 downsample of 12x12 and its initializer", "[imaging]") {
    Rng rng(4);
    const auto op = LinearOperator::gaussian_downsample(3, 2.0);
    const Image u = random_image(12, 12, 1, rng);
    const Image z = op.apply(u);
    const Image x0 = sisr_init(op, z);
    REQUIRE(x0.width == 12);
    REQUIRE(x0.height == 12);
    // omega^2 A^T z equals the adjoint scaled by 9
    const Image adj = op.apply_adjoint(z);
    for (size_t i = 0; i < adj.size(); ++i)
        REQUIRE(x0.data[i] == Catch::Approx(9.0 * adj.data[i]));
}

TEST_CASE("bicubic demosaic reproduces constant images", "[imaging]") {
    Image rgb(8, 8, 3);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            rgb.at(x, y, 0) = 0.2;
            rgb.at(x, y, 1) = 0.5;
            rgb.at(x, y, 2) = 0.8;
        }
    const auto op = LinearOperator::bayer_mosaic();
    const Image mosaic = op.apply(rgb);
    const Image recon = bicubic_demosaic(mosaic);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x)
            for (int c = 0; c < 3; ++c)
                REQUIRE(recon.at(x, y, c) == Catch::Approx(rgb.at(x, y, c)).margin(1e-12));
}

TEST_CASE("bayer patterns are configurable", "[imaging]") {
    const auto rggb = LinearOperator::bayer_mosaic(BayerPattern::RGGB);
    REQUIRE(rggb.bayer_channel(0, 0) == 0);
    REQUIRE(rggb.bayer_channel(1, 0) == 1);
    REQUIRE(rggb.bayer_channel(0, 1) == 1);
    REQUIRE(rggb.bayer_channel(1, 1) == 2);
    const auto grbg = LinearOperator::bayer_mosaic(BayerPattern::GRBG);
    REQUIRE(grbg.bayer_channel(0, 0) == 1);
    REQUIRE(grbg.bayer_channel(1, 0) == 0);
}

TEST_CASE("zero-sigma gaussian noise is exact", "[imaging]") {
    Rng rng(5);
    const Image clean = random_image(9, 9, 1, rng);
    auto model = NoiseModel::gaussian(0.0, 77);
    const Image z = model.corrupt(clean);
    REQUIRE(z.data == clean.data);
}

TEST_CASE("salt-pepper corrupts about the requested fraction", "[imaging]") {
    Image clean(40, 25, 1, 0.5); // 1000 pixels, none at 0 or 1
    auto model = NoiseModel::salt_pepper(0.5, 123);
    const Image z = model.corrupt(clean);
    int corrupted = 0;
    for (double v : z.data) {
        REQUIRE((v == 0.0 || v == 1.0 || v == 0.5));
        if (v != 0.5) ++corrupted;
    }
    REQUIRE(corrupted >= 400);
    REQUIRE(corrupted <= 600);
}

TEST_CASE("gaussian noise empirical stddev matches sigma within 1%", "[imaging]") {
    const double sigma = 25.0 / 255.0;
    Image clean(1000, 1000, 1, 0.5);
    auto model = NoiseModel::gaussian(sigma, 99);
    const Image z = model.corrupt(clean);
    double s2 = 0.0;
    for (size_t i = 0; i < z.size(); ++i) s2 += sqr(z.data[i] - clean.data[i]);
    const double stddev = std::sqrt(s2 / static_cast<double>(z.size()));
    REQUIRE(stddev == Catch::Approx(sigma).epsilon(0.01));
}

TEST_CASE("seeded noise is bit-exactly reproducible", "[imaging]") {
    Rng rng(6);
    const Image clean = random_image(16, 16, 1, rng);
    for (auto make : {+[](uint64_t s) { return NoiseModel::gaussian(0.1, s); },
                      +[](uint64_t s) { return NoiseModel::laplace(0.1, s); },
                      +[](uint64_t s) { return NoiseModel::salt_pepper(0.3, s); },
                      +[](uint64_t s) { return NoiseModel::poisson(4.0, s); },
                      +[](uint64_t s) { return NoiseModel::mixture(s); }}) {
        auto a = make(2024);
        auto b = make(2024);
        auto c = make(2025);
        REQUIRE(a.corrupt(clean).data == b.corrupt(clean).data);
        REQUIRE(a.corrupt(clean).data != c.corrupt(clean).data);
    }
}

TEST_CASE("poisson noise scales as z = Pois(peak y)/peak", "[imaging]") {
    Image clean(500, 500, 1, 0.5);
    auto model = NoiseModel::poisson(4.0, 7);
    const Image z = model.corrupt(clean);
    double mean = 0.0;
    for (double v : z.data) {
        REQUIRE(v >= 0.0);
        REQUIRE(std::fabs(v * 4.0 - std::round(v * 4.0)) < 1e-12);
        mean += v;
    }
    mean /= static_cast<double>(z.size());
    REQUIRE(mean == Catch::Approx(0.5).epsilon(0.02));
}

TEST_CASE("psnr sentinel, shift formula, and independent mse", "[imaging]") {
    Rng rng(8);
    const Image x = random_image(10, 10, 1, rng);
    REQUIRE(std::isinf(psnr(x, x)));
    Image y = x;
    for (double& v : y.data) v += 0.1;
    REQUIRE(psnr(x, y) == Catch::Approx(20.0).epsilon(1e-12));

    const Image a = random_image(12, 7, 3, rng);
    const Image b = random_image(12, 7, 3, rng);
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m += sqr(a.data[i] - b.data[i]);
    m /= static_cast<double>(a.size());
    REQUIRE(psnr(a, b) == Catch::Approx(-10.0 * std::log10(m)));
    REQUIRE(psnr(a, b) == Catch::Approx(psnr(b, a)));
}

TEST_CASE("psnr strictly decreases with perturbation magnitude", "[imaging]") {
    Rng rng(9);
    const Image x = random_image(8, 8, 1, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2}) {
        Image y = x;
        for (double& v : y.data) v += eps;
        const double p = psnr(x, y);
        REQUIRE(p < prev);
        prev = p;
    }
}

TEST_CASE("pad-reflect matches the reflection definition", "[imaging]") {
    Image row(3, 3, 1);
    const double a = 0.1, b = 0.5, c = 0.9;
    for (int y = 0; y < 3; ++y) {
        row.at(0, y, 0) = a;
        row.at(1, y, 0) = b;
        row.at(2, y, 0) = c;
    }
    const Image padded = pad_reflect(row, 1);
    REQUIRE(padded.width == 5);
    const double expect[5] = {b, a, b, c, b};
    for (int x = 0; x < 5; ++x) REQUIRE(padded.at(x, 2, 0) == expect[x]);
}

TEST_CASE("pad-then-crop is the identity for all margins in range", "[imaging]") {
    Rng rng(10);
    const Image img = random_image(11, 9, 2, rng);
    REQUIRE(pad_reflect(img, 0).data == img.data);
    for (int margin = 0; margin < 9; ++margin) {
        const Image round = crop(pad_reflect(img, margin), margin);
        REQUIRE(round.data == img.data);
    }
    REQUIRE_THROWS_AS(pad_reflect(img, 9), ConfigError);
}

TEST_CASE("image files round-trip losslessly", "[imaging]") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "enrec_io_test";
    fs::create_directories(dir);
    Rng rng(11);

    struct Case {
        const char* name;
        int channels;
        int depth;
        const char* ext;
    };
    for (const Case& tc : {Case{"gray8", 1, 8, ".png"}, Case{"rgb8", 3, 8, ".png"},
                           Case{"gray16", 1, 16, ".png"}, Case{"gray8p", 1, 8, ".pgm"},
                           Case{"rgb8p", 3, 8, ".ppm"}, Case{"gray16p", 1, 16, ".pgm"}}) {
        const int maxval = tc.depth == 16 ? 65535 : 255;
        Image img(6, 5, tc.channels);
        for (double& v : img.data)
            v = static_cast<double>(rng.below(maxval + 1)) / maxval;

        const std::string p1 = (dir / (std::string(tc.name) + "_a" + tc.ext)).string();
        const std::string p2 = (dir / (std::string(tc.name) + "_b" + tc.ext)).string();
        save_image(img, p1, tc.depth);
        const Image back = load_image(p1);
        REQUIRE(back.same_shape(img));
        REQUIRE(back.data == img.data); // exact: both sides are k/maxval
        save_image(back, p2, tc.depth);
        REQUIRE(read_bytes(p1) == read_bytes(p2));
    }
    REQUIRE_THROWS_AS(load_image((dir / "missing.png").string()), ConfigError);
    REQUIRE_THROWS_AS(load_image((dir / "missing.tiff").string()), ConfigError);
}

TEST_CASE("y channel uses the bt601 weights", "[imaging]") {
    Image rgb(2, 1, 3);
    rgb.at(0, 0, 0) = 1.0;
    rgb.at(1, 0, 1) = 1.0;
    const Image y = y_channel(rgb);
    REQUIRE(y.at(0, 0, 0) == Catch::Approx(0.299));
    REQUIRE(y.at(1, 0, 0) == Catch::Approx(0.587));
}
