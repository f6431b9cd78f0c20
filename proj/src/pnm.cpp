#include "cvssi/pnm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "cvssi/error.hpp"

namespace cvssi {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Header tokenizer: skips whitespace and '#' comments.
struct PnmReader {
    const std::string& data;
    std::size_t pos = 0;
    const std::string& path;

    void skip_space_and_comments() {
        while (pos < data.size()) {
            const char c = data[pos];
            if (c == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    int next_int() {
        skip_space_and_comments();
        if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
            throw ParseError(path + ": malformed header");
        long v = 0;
        while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
            v = v * 10 + (data[pos] - '0');
            if (v > 1 << 30)
                throw ParseError(path + ": header value out of range");
            ++pos;
        }
        return static_cast<int>(v);
    }
};

struct PnmHeader {
    std::string magic;
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::size_t data_pos = 0;
};

PnmHeader parse_header(const std::string& raw, const std::string& path) {
    if (raw.size() < 2 || raw[0] != 'P')
        throw ParseError(path + ": not a PNM file");
    PnmHeader h;
    h.magic = raw.substr(0, 2);
    PnmReader rd{raw, 2, path};
    h.width = rd.next_int();
    h.height = rd.next_int();
    h.maxval = rd.next_int();
    if (h.width < 1 || h.height < 1)
        throw ParseError(path + ": bad dimensions");
    if (h.maxval < 1 || h.maxval > 255)
        throw ParseError(path + ": unsupported maxval " + std::to_string(h.maxval) +
                         " (only 8-bit supported)");
    if (h.magic == "P5" || h.magic == "P6") {
        // exactly one whitespace byte after maxval
        if (rd.pos >= raw.size() || !std::isspace(static_cast<unsigned char>(raw[rd.pos])))
            throw ParseError(path + ": malformed header");
        h.data_pos = rd.pos + 1;
    } else {
        h.data_pos = rd.pos;
    }
    return h;
}

std::vector<double> read_samples(const std::string& raw, const PnmHeader& h, std::size_t count,
                                 bool binary, const std::string& path) {
    std::vector<double> out(count);
    if (binary) {
        if (raw.size() - h.data_pos < count)
            throw ParseError(path + ": truncated pixel data");
        for (std::size_t i = 0; i < count; ++i)
            out[i] = static_cast<double>(static_cast<unsigned char>(raw[h.data_pos + i]));
    } else {
        PnmReader rd{raw, h.data_pos, path};
        for (std::size_t i = 0; i < count; ++i) {
            rd.skip_space_and_comments();
            if (rd.pos >= raw.size())
                throw ParseError(path + ": truncated pixel data");
            out[i] = static_cast<double>(rd.next_int());
        }
    }
    for (double v : out)
        if (v > h.maxval)
            throw ParseError(path + ": sample exceeds maxval");
    return out;
}

} // namespace

GrayImage load_pgm(const std::string& path) {
    const std::string raw = read_file(path);
    const PnmHeader h = parse_header(raw, path);
    if (h.magic != "P2" && h.magic != "P5")
        throw ParseError(path + ": not a PGM file (magic " + h.magic + ")");
    const std::size_t count = static_cast<std::size_t>(h.width) * h.height;
    return GrayImage(h.width, h.height, read_samples(raw, h, count, h.magic == "P5", path));
}

RgbImage load_ppm(const std::string& path) {
    const std::string raw = read_file(path);
    const PnmHeader h = parse_header(raw, path);
    if (h.magic != "P3" && h.magic != "P6")
        throw ParseError(path + ": not a PPM file (magic " + h.magic + ")");
    const std::size_t count = 3u * static_cast<std::size_t>(h.width) * h.height;
    RgbImage img;
    img.width = h.width;
    img.height = h.height;
    img.samples = read_samples(raw, h, count, h.magic == "P6", path);
    return img;
}

GrayImage load_image_gray(const std::string& path) {
    const std::string raw = read_file(path);
    if (raw.size() < 2 || raw[0] != 'P')
        throw ParseError(path + ": not a PNM file");
    const char kind = raw[1];
    if (kind == '2' || kind == '5')
        return load_pgm(path);
    if (kind == '3' || kind == '6')
        return to_grayscale(load_ppm(path));
    throw ParseError(path + ": unsupported PNM magic P" + std::string(1, kind));
}

void save_pgm(const GrayImage& img, const std::string& path) {
    if (img.empty())
        throw ShapeError("cannot save empty image");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path);
    out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()));
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double v = std::lround(img.at(x, y));
            if (v < 0) v = 0;
            if (v > 255) v = 255;
            row[static_cast<std::size_t>(x)] = static_cast<unsigned char>(v);
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out)
        throw IoError("write failed: " + path);
}

void save_plane_pgm(const Plane& map, const std::string& path) {
    if (map.empty())
        throw ShapeError("cannot save empty map");
    const double lo = map.min_value();
    const double hi = map.max_value();
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    GrayImage img(map.width(), map.height());
    for (std::size_t i = 0; i < map.size(); ++i)
        img.samples()[i] = (map.samples()[i] - lo) * scale;
    save_pgm(img, path);
}

void save_plane_csv(const Plane& map, const std::string& path) {
    if (map.empty())
        throw ShapeError("cannot save empty map");
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    char buf[40];
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            std::snprintf(buf, sizeof buf, "%.12g", map.at(x, y));
            out << buf << (x + 1 < map.width() ? "," : "\n");
        }
    }
    if (!out)
        throw IoError("write failed: " + path);
}

} // namespace cvssi
