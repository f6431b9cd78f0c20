#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cvssi/eval.hpp"
#include "cvssi/image.hpp"

namespace cvssi {

struct ManifestRecord {
    std::string ref_path;
    std::string dist_path;
    std::string distortion;
    int level = 0;
    double subjective = 0.0; // MOS/DMOS units
};

// Direction of the subjective scale: MOS-style scores grow with quality,
// DMOS-style scores grow with distortion.
enum class ScaleOrientation { higher_is_better, lower_is_better };

std::string_view orientation_name(ScaleOrientation o);
ScaleOrientation orientation_from_name(std::string_view name);

struct DatasetManifest {
    std::string name;
    ScaleOrientation orientation = ScaleOrientation::higher_is_better;
    std::vector<ManifestRecord> records;
};

// Manifest CSV: optional "# name: ..." / "# orientation: ..." preamble
// lines, then a header row
//   ref_path,dist_path,distortion,level,subjective
// followed by one record per row. Image paths are kept verbatim; relative
// paths are interpreted against the manifest's directory (see
// resolve_manifest_path). Parse errors name the 1-based file row.
DatasetManifest load_manifest(const std::string& path);
void save_manifest(const DatasetManifest& manifest, const std::string& path);

// Joins a possibly relative record path against the manifest location.
std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& record_path);

struct ScoreRecord {
    std::string dist_path;
    double score = 0.0;
};

// Score CSV: header "dist_path,score", values at 12 significant digits.
void write_scores(const std::string& path, const std::vector<ScoreRecord>& scores);
std::vector<ScoreRecord> load_scores(const std::string& path);

// Pairs each manifest record's subjective score with the objective score
// carried under the same dist_path. Every manifest row must have exactly
// one score and vice versa; violations name the offending path.
ScorePairs join_scores(const DatasetManifest& manifest, const std::vector<ScoreRecord>& scores);

struct SynthImage {
    std::string rel_path; // relative to the corpus root
    GrayImage image;
};

struct SynthCorpus {
    DatasetManifest manifest; // record paths relative to the corpus root
    std::vector<SynthImage> references;
    std::vector<SynthImage> distorted;
};

// Desk-scale distortion corpus: for each source image, additive Gaussian
// noise (sigma on a geometric ladder 2..40), Gaussian blur (sigma
// 0.5..4) and contrast attenuation (gain 0.8..0.33 about the image mean),
// each at `levels` steps with pseudo-MOS = -level. Samples are quantized
// to integers in [0, 255], so the in-memory corpus matches its files
// exactly. Fully reproducible from the seed.
SynthCorpus synth_corpus(std::uint64_t seed, const std::vector<GrayImage>& sources, int levels);

// Writes refs/, dist/ and manifest.csv under out_dir.
void write_corpus(const SynthCorpus& corpus, const std::string& out_dir);

} // namespace cvssi
