#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cvssi/error.hpp"
#include "cvssi/image.hpp"
#include "cvssi/pnm.hpp"
#include "oracles.hpp"
#include "test_images.hpp"

using namespace cvssi;

namespace {
std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "cvssi_image_tests";
    std::filesystem::create_directories(dir);
    return dir;
}
} // namespace

TEST_CASE("plane construction validates shape and finiteness") {
    CHECK_THROWS_AS(Plane(-1, 4), ShapeError);
    CHECK_THROWS_AS(Plane(2, 2, std::vector<double>{1.0, 2.0, 3.0}), ShapeError);
    CHECK_THROWS_AS(Plane(1, 2, std::vector<double>{1.0, std::nan("")}), InvalidInputError);
    const Plane p(3, 2, 7.0);
    CHECK(p.width() == 3);
    CHECK(p.height() == 2);
    CHECK(p.at(2, 1) == 7.0);
    CHECK(p.at_clamped(-5, 99) == 7.0);
}

TEST_CASE("to_grayscale matches the BT.601 weights") {
    RgbImage img;
    img.width = 2;
    img.height = 1;
    img.samples = {255, 255, 255, 0, 0, 0};
    const GrayImage g = to_grayscale(img);
    CHECK(g.at(0, 0) == 255.0);
    CHECK(g.at(1, 0) == 0.0);

    RgbImage red{1, 1, {255, 0, 0}};
    CHECK(to_grayscale(red).at(0, 0) == doctest::Approx(76.245).epsilon(1e-12));
    RgbImage green{1, 1, {0, 255, 0}};
    CHECK(to_grayscale(green).at(0, 0) == doctest::Approx(149.685).epsilon(1e-12));
    RgbImage blue{1, 1, {0, 0, 255}};
    CHECK(to_grayscale(blue).at(0, 0) == doctest::Approx(29.07).epsilon(1e-12));
}

TEST_CASE("to_grayscale is exact on gray triples") {
    for (double v : {0.0, 1.5, 37.25, 128.0, 200.123, 254.0, 255.0}) {
        RgbImage img{1, 1, {v, v, v}};
        CHECK(to_grayscale(img).at(0, 0) == v); // bitwise
    }
}

TEST_CASE("to_grayscale rejects bad input") {
    RgbImage img{1, 1, {1.0, 2.0}};
    CHECK_THROWS_AS(to_grayscale(img), ShapeError);
    RgbImage nan_img{1, 1, {1.0, std::nan(""), 3.0}};
    CHECK_THROWS_AS(to_grayscale(nan_img), InvalidInputError);
}

TEST_CASE("box_downsample_2x averages 2x2 blocks") {
    const GrayImage quad(2, 2, std::vector<double>{1, 2, 3, 4});
    const GrayImage out = box_downsample_2x(quad);
    CHECK(out.width() == 1);
    CHECK(out.height() == 1);
    CHECK(out.at(0, 0) == 2.5);
}

TEST_CASE("box_downsample_2x keeps constants exact and drops odd edges") {
    const GrayImage c(5, 3, 0.1);
    const GrayImage out = box_downsample_2x(c);
    CHECK(out.width() == 2);
    CHECK(out.height() == 1);
    for (double v : out.samples())
        CHECK(v == 0.1); // bitwise

    // row ramp: rows valued 0,1,2,3 -> block means 0.5 and 2.5
    GrayImage ramp(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
            ramp.at(x, y) = y;
    const GrayImage r2 = box_downsample_2x(ramp);
    CHECK(r2.at(0, 0) == 0.5);
    CHECK(r2.at(1, 0) == 0.5);
    CHECK(r2.at(0, 1) == 2.5);
    CHECK(r2.at(1, 1) == 2.5);
}

TEST_CASE("box_downsample_2x preserves the retained-region mean") {
    const GrayImage img = testimg::value_noise(63, 41, 9);
    const GrayImage down = box_downsample_2x(img);
    double kept = 0.0;
    for (int y = 0; y < 40; ++y)
        for (int x = 0; x < 62; ++x)
            kept += img.at(x, y);
    kept /= 62.0 * 40.0;
    CHECK(std::fabs(down.mean() - kept) <= 1e-9);
}

TEST_CASE("box_downsample_2x rejects undersized input") {
    CHECK_THROWS_AS(box_downsample_2x(GrayImage(1, 5, 0.0)), InvalidInputError);
}

TEST_CASE("local_std_map is zero on constants") {
    const Plane out = local_std_map(GrayImage(9, 7, 123.456), 3);
    for (double v : out.samples())
        CHECK(v == 0.0); // exact
}

TEST_CASE("local_std_map matches the hand value on a single bright pixel") {
    GrayImage img(3, 3, 0.0);
    img.at(1, 1) = 255.0;
    const Plane out = local_std_map(img, 3);
    CHECK(std::fabs(out.at(1, 1) - 85.0) <= 1e-12);
    CHECK(std::fabs(out.at(1, 1) - oracle::window_std(img, 3, 1, 1)) <= 1e-12);
}

TEST_CASE("local_std_map agrees with the brute-force oracle") {
    const Plane img = testimg::value_noise(17, 13, 21);
    for (int window : {3, 5}) {
        const Plane out = local_std_map(img, window);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                CHECK(std::fabs(out.at(x, y) - oracle::window_std(img, window, x, y)) <= 1e-10);
    }
}

TEST_CASE("local_std_map is shift invariant and scales linearly") {
    GrayImage img = testimg::value_noise(16, 12, 4);
    for (double& v : img.samples()) v = std::floor(v); // integer samples
    const Plane base = local_std_map(img, 3);

    GrayImage shifted = img;
    for (double& v : shifted.samples()) v += 17.0;
    const Plane shifted_map = local_std_map(shifted, 3);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(shifted_map.samples()[i] == base.samples()[i]); // exact for integer shifts

    GrayImage doubled = img;
    for (double& v : doubled.samples()) v *= 2.0;
    const Plane doubled_map = local_std_map(doubled, 3);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(doubled_map.samples()[i] == 2.0 * base.samples()[i]);

    GrayImage scaled = img;
    for (double& v : scaled.samples()) v *= 1.7;
    const Plane scaled_map = local_std_map(scaled, 3);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(scaled_map.samples()[i] ==
              doctest::Approx(1.7 * base.samples()[i]).epsilon(1e-9));
}

TEST_CASE("local_std_map is zero where replicate padding makes the window constant") {
    GrayImage img = testimg::value_noise(10, 10, 33);
    img.at(0, 0) = 50.0;
    img.at(1, 0) = 50.0;
    img.at(0, 1) = 50.0;
    img.at(1, 1) = 50.0;
    const Plane out = local_std_map(img, 3);
    CHECK(out.at(0, 0) == 0.0);
}

TEST_CASE("local_std_map validates its window") {
    const GrayImage img(8, 8, 1.0);
    CHECK_THROWS_AS(local_std_map(img, 4), ConfigError);
    CHECK_THROWS_AS(local_std_map(img, 1), ConfigError);
    CHECK_THROWS_AS(local_std_map(img, 9), ConfigError);
    CHECK_THROWS_AS(local_std_map(GrayImage(), 3), ShapeError);
}

TEST_CASE("box_filter_3x3 basics") {
    const Plane c = box_filter_3x3(Plane(5, 5, 3.25));
    for (double v : c.samples())
        CHECK(v == doctest::Approx(3.25).epsilon(1e-12));

    Plane img(3, 1, std::vector<double>{0.0, 9.0, 0.0});
    const Plane out = box_filter_3x3(img);
    // window rows replicate; center column: (0+9+0)*3/9 = 3
    CHECK(out.at(1, 0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("gaussian_blur is symmetric and keeps constants") {
    const Plane c = gaussian_blur(Plane(7, 7, 42.0), 1.5, 3);
    for (double v : c.samples())
        CHECK(v == doctest::Approx(42.0).epsilon(1e-12));

    Plane impulse(9, 9, 0.0);
    impulse.at(4, 4) = 1.0;
    const Plane out = gaussian_blur(impulse, 2.0, 3);
    CHECK(out.at(4, 4) > out.at(3, 4));
    CHECK(out.at(3, 4) == doctest::Approx(out.at(5, 4)).epsilon(1e-12));
    CHECK(out.at(4, 3) == doctest::Approx(out.at(4, 5)).epsilon(1e-12));
    CHECK(out.at(3, 4) == doctest::Approx(out.at(4, 3)).epsilon(1e-12));

    CHECK_THROWS_AS(gaussian_blur(impulse, 0.0, 3), ConfigError);
    CHECK_THROWS_AS(gaussian_blur(impulse, 1.0, -1), ConfigError);
}

TEST_CASE("resize_bilinear identity, constants and a hand case") {
    const Plane img = testimg::value_noise(13, 9, 77);
    const Plane same = resize_bilinear(img, 13, 9);
    for (std::size_t i = 0; i < img.size(); ++i)
        CHECK(same.samples()[i] == img.samples()[i]); // bitwise

    const Plane c = resize_bilinear(Plane(3, 3, 0.7), 10, 6);
    for (double v : c.samples())
        CHECK(v == 0.7); // lerp form is exact on constants

    const Plane line(2, 1, std::vector<double>{0.0, 10.0});
    const Plane up = resize_bilinear(line, 4, 1);
    CHECK(up.at(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(up.at(1, 0) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(up.at(2, 0) == doctest::Approx(7.5).epsilon(1e-12));
    CHECK(up.at(3, 0) == doctest::Approx(10.0).epsilon(1e-12));

    CHECK_THROWS_AS(resize_bilinear(img, 0, 5), ConfigError);
}

TEST_CASE("pgm round-trip is bit exact for integer images") {
    const auto dir = temp_dir();
    GrayImage img = testimg::value_noise(23, 17, 5);
    for (double& v : img.samples()) v = std::floor(v);
    const std::string path = (dir / "roundtrip.pgm").string();
    save_pgm(img, path);
    const GrayImage back = load_pgm(path);
    REQUIRE(back.same_size(img));
    for (std::size_t i = 0; i < img.size(); ++i)
        CHECK(back.samples()[i] == img.samples()[i]);
}

TEST_CASE("pgm parser handles ascii, comments and errors") {
    const auto dir = temp_dir();
    const std::string path = (dir / "ascii.pgm").string();
    {
        std::ofstream f(path);
        f << "P2\n# a comment\n3 2\n255\n0 10 20\n30 40 255\n";
    }
    const GrayImage img = load_pgm(path);
    CHECK(img.width() == 3);
    CHECK(img.height() == 2);
    CHECK(img.at(2, 1) == 255.0);

    const std::string bad16 = (dir / "bad16.pgm").string();
    {
        std::ofstream f(bad16);
        f << "P5\n2 2\n65535\n";
        f << std::string(8, '\0');
    }
    CHECK_THROWS_AS(load_pgm(bad16), ParseError);

    const std::string truncated = (dir / "trunc.pgm").string();
    {
        std::ofstream f(truncated);
        f << "P5\n4 4\n255\nab";
    }
    CHECK_THROWS_AS(load_pgm(truncated), ParseError);

    CHECK_THROWS_AS(load_pgm((dir / "missing.pgm").string()), IoError);
}

TEST_CASE("ppm loads and converts to grayscale") {
    const auto dir = temp_dir();
    const std::string path = (dir / "rgb.ppm").string();
    {
        std::ofstream f(path, std::ios::binary);
        f << "P6\n2 1\n255\n";
        const unsigned char px[6] = {255, 0, 0, 10, 10, 10};
        f.write(reinterpret_cast<const char*>(px), 6);
    }
    const RgbImage rgb = load_ppm(path);
    CHECK(rgb.samples[0] == 255.0);
    const GrayImage gray = load_image_gray(path);
    CHECK(gray.at(0, 0) == doctest::Approx(76.245).epsilon(1e-12));
    CHECK(gray.at(1, 0) == 10.0);
}

TEST_CASE("plane debug dumps") {
    const auto dir = temp_dir();
    const Plane map = testimg::value_noise(8, 6, 3);
    save_plane_pgm(map, (dir / "map.pgm").string());
    const GrayImage dumped = load_pgm((dir / "map.pgm").string());
    CHECK(dumped.same_size(map));
    CHECK(dumped.max_value() == 255.0); // full-range rescale

    save_plane_csv(map, (dir / "map.csv").string());
    std::ifstream csv(dir / "map.csv");
    std::string line;
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 6);
}
