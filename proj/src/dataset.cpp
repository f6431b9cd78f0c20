#include "cvssi/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "cvssi/error.hpp"
#include "cvssi/numfmt.hpp"
#include "cvssi/pnm.hpp"

namespace cvssi {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

double parse_double(const std::string& field, const std::string& path, std::size_t row,
                    const char* what) {
    const std::string t = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw ParseError(path + ": row " + std::to_string(row) + ": invalid " + what + " '" +
                         field + "'");
    return v;
}

int parse_int(const std::string& field, const std::string& path, std::size_t row,
              const char* what) {
    const std::string t = trim(field);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError(path + ": row " + std::to_string(row) + ": invalid " + what + " '" +
                         field + "'");
    return v;
}

constexpr char kManifestHeader[] = "ref_path,dist_path,distortion,level,subjective";
constexpr char kScoresHeader[] = "dist_path,score";

// splitmix64: the per-record generator behind the corpus noise.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct Rng {
    std::uint64_t state;

    double next_unit() { // [0, 1)
        std::uint64_t bits = splitmix64(state);
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }
    double next_gaussian() { // Box-Muller, deterministic across platforms
        const double u1 = 1.0 - next_unit(); // (0, 1]
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
};

std::uint64_t record_seed(std::uint64_t seed, std::size_t source, std::size_t family, int level) {
    std::uint64_t s = seed;
    splitmix64(s);
    s ^= (static_cast<std::uint64_t>(source) + 1) * 0x9e3779b97f4a7c15ull;
    splitmix64(s);
    s ^= (static_cast<std::uint64_t>(family) + 1) * 0xbf58476d1ce4e5b9ull;
    splitmix64(s);
    s ^= (static_cast<std::uint64_t>(level) + 1) * 0x94d049bb133111ebull;
    return s;
}

double clamp255(double v) { return std::clamp(v, 0.0, 255.0); }

GrayImage quantize(const GrayImage& img) {
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        out.samples()[i] = static_cast<double>(std::lround(clamp255(img.samples()[i])));
    return out;
}

GrayImage add_noise(const GrayImage& img, double sigma, Rng& rng) {
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        out.samples()[i] = clamp255(img.samples()[i] + sigma * rng.next_gaussian());
    return out;
}

GrayImage scale_contrast(const GrayImage& img, double gain) {
    const double m = img.mean();
    GrayImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i)
        out.samples()[i] = clamp255(m + gain * (img.samples()[i] - m));
    return out;
}

} // namespace

std::string_view orientation_name(ScaleOrientation o) {
    return o == ScaleOrientation::higher_is_better ? "higher-is-better" : "lower-is-better";
}

ScaleOrientation orientation_from_name(std::string_view name) {
    if (name == "higher-is-better") return ScaleOrientation::higher_is_better;
    if (name == "lower-is-better") return ScaleOrientation::lower_is_better;
    throw ParseError("unknown orientation '" + std::string(name) + "'");
}

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);

    DatasetManifest manifest;
    manifest.name = std::filesystem::path(path).stem().string();

    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        const std::string text = trim(line);
        if (text.empty())
            continue;
        if (text[0] == '#') {
            if (header_seen)
                continue; // comments after the header are ignored
            const std::size_t colon = text.find(':');
            if (colon == std::string::npos)
                throw ParseError(path + ": row " + std::to_string(row) + ": malformed preamble");
            const std::string key = trim(text.substr(1, colon - 1));
            const std::string value = trim(text.substr(colon + 1));
            if (key == "name") {
                manifest.name = value;
            } else if (key == "orientation") {
                try {
                    manifest.orientation = orientation_from_name(value);
                } catch (const ParseError&) {
                    throw ParseError(path + ": row " + std::to_string(row) +
                                     ": unknown orientation '" + value + "'");
                }
            } else {
                throw ParseError(path + ": row " + std::to_string(row) +
                                 ": unknown preamble key '" + key + "'");
            }
            continue;
        }
        if (!header_seen) {
            if (text != kManifestHeader)
                throw ParseError(path + ": row " + std::to_string(row) +
                                 ": expected header '" + kManifestHeader + "'");
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_csv(text);
        if (fields.size() != 5)
            throw ParseError(path + ": row " + std::to_string(row) + ": expected 5 columns, got " +
                             std::to_string(fields.size()));
        ManifestRecord rec;
        rec.ref_path = fields[0];
        rec.dist_path = fields[1];
        rec.distortion = fields[2];
        rec.level = parse_int(fields[3], path, row, "level");
        rec.subjective = parse_double(fields[4], path, row, "subjective score");
        if (rec.ref_path.empty() || rec.dist_path.empty())
            throw ParseError(path + ": row " + std::to_string(row) + ": empty image path");
        manifest.records.push_back(std::move(rec));
    }
    if (!header_seen)
        throw ParseError(path + ": missing header row");
    if (manifest.records.empty())
        throw ParseError(path + ": no records");
    return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << "# name: " << manifest.name << "\n";
    out << "# orientation: " << orientation_name(manifest.orientation) << "\n";
    out << kManifestHeader << "\n";
    for (const ManifestRecord& rec : manifest.records) {
        out << rec.ref_path << ',' << rec.dist_path << ',' << rec.distortion << ',' << rec.level
            << ',' << fmt12(rec.subjective) << "\n";
    }
    if (!out)
        throw IoError("write failed: " + path);
}

std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& record_path) {
    const std::filesystem::path rec(record_path);
    if (rec.is_absolute())
        return record_path;
    return (std::filesystem::path(manifest_path).parent_path() / rec).string();
}

void write_scores(const std::string& path, const std::vector<ScoreRecord>& scores) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << kScoresHeader << "\n";
    for (const ScoreRecord& rec : scores)
        out << rec.dist_path << ',' << fmt12(rec.score) << "\n";
    if (!out)
        throw IoError("write failed: " + path);
}

std::vector<ScoreRecord> load_scores(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<ScoreRecord> out;
    std::string line;
    std::size_t row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#')
            continue;
        if (!header_seen) {
            if (text != kScoresHeader)
                throw ParseError(path + ": row " + std::to_string(row) + ": expected header '" +
                                 kScoresHeader + "'");
            header_seen = true;
            continue;
        }
        // split on the last comma so paths may contain commas
        const std::size_t comma = text.rfind(',');
        if (comma == std::string::npos || comma == 0)
            throw ParseError(path + ": row " + std::to_string(row) + ": expected 2 columns");
        ScoreRecord rec;
        rec.dist_path = trim(text.substr(0, comma));
        rec.score = parse_double(text.substr(comma + 1), path, row, "score");
        out.push_back(std::move(rec));
    }
    if (!header_seen)
        throw ParseError(path + ": missing header row");
    return out;
}

ScorePairs join_scores(const DatasetManifest& manifest, const std::vector<ScoreRecord>& scores) {
    std::unordered_map<std::string, double> by_path;
    for (const ScoreRecord& rec : scores) {
        if (!by_path.emplace(rec.dist_path, rec.score).second)
            throw Error("duplicate score for path " + rec.dist_path);
    }
    std::vector<double> objective, subjective;
    objective.reserve(manifest.records.size());
    subjective.reserve(manifest.records.size());
    for (const ManifestRecord& rec : manifest.records) {
        const auto it = by_path.find(rec.dist_path);
        if (it == by_path.end())
            throw Error("no score for manifest path " + rec.dist_path);
        objective.push_back(it->second);
        subjective.push_back(rec.subjective);
        by_path.erase(it);
    }
    if (!by_path.empty())
        throw Error("score file has no manifest row for path " + by_path.begin()->first);
    return ScorePairs(std::move(objective), std::move(subjective));
}

SynthCorpus synth_corpus(std::uint64_t seed, const std::vector<GrayImage>& sources, int levels) {
    if (sources.empty())
        throw InvalidInputError("empty image list");
    if (levels < 2)
        throw ConfigError("levels must be >= 2");
    for (const GrayImage& src : sources) {
        if (src.empty())
            throw InvalidInputError("empty source image");
        if (!src.all_finite())
            throw InvalidInputError("source image contains non-finite samples");
    }

    static constexpr const char* kFamilies[] = {"awgn", "gblur", "contrast"};

    SynthCorpus corpus;
    corpus.manifest.name = "synth";
    corpus.manifest.orientation = ScaleOrientation::higher_is_better;

    for (std::size_t si = 0; si < sources.size(); ++si) {
        const GrayImage ref = quantize(sources[si]);
        const std::string ref_path = "refs/src" + std::to_string(si) + ".pgm";
        corpus.references.push_back(SynthImage{ref_path, ref});

        for (std::size_t fi = 0; fi < 3; ++fi) {
            for (int level = 1; level <= levels; ++level) {
                const double t = static_cast<double>(level - 1) / (levels - 1);
                GrayImage distorted;
                if (fi == 0) {
                    const double sigma = 2.0 * std::pow(40.0 / 2.0, t);
                    Rng rng{record_seed(seed, si, fi, level)};
                    distorted = add_noise(ref, sigma, rng);
                } else if (fi == 1) {
                    const double sigma = 0.5 * std::pow(4.0 / 0.5, t);
                    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
                    distorted = gaussian_blur(ref, sigma, radius);
                } else {
                    const double gain = 0.8 * std::pow(0.33 / 0.8, t);
                    distorted = scale_contrast(ref, gain);
                }
                distorted = quantize(distorted);

                const std::string dist_path = "dist/src" + std::to_string(si) + "_" +
                                              kFamilies[fi] + "_l" + std::to_string(level) +
                                              ".pgm";
                corpus.distorted.push_back(SynthImage{dist_path, std::move(distorted)});
                corpus.manifest.records.push_back(ManifestRecord{
                    ref_path, dist_path, kFamilies[fi], level, -static_cast<double>(level)});
            }
        }
    }
    return corpus;
}

void write_corpus(const SynthCorpus& corpus, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "refs", ec);
    fs::create_directories(fs::path(out_dir) / "dist", ec);
    if (ec)
        throw IoError("cannot create corpus directories under " + out_dir);

    for (const SynthImage& img : corpus.references)
        save_pgm(img.image, (fs::path(out_dir) / img.rel_path).string());
    for (const SynthImage& img : corpus.distorted)
        save_pgm(img.image, (fs::path(out_dir) / img.rel_path).string());
    save_manifest(corpus.manifest, (fs::path(out_dir) / "manifest.csv").string());
}

} // namespace cvssi
