// cvssi command-line tool: score image pairs, batch-score manifests,
// evaluate score files against subjective data, run the pooling ablation,
// and generate synthetic distortion corpora.

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvssi/dataset.hpp"
#include "cvssi/error.hpp"
#include "cvssi/eval.hpp"
#include "cvssi/metric.hpp"
#include "cvssi/numfmt.hpp"
#include "cvssi/pnm.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct OutputOpts {
    std::string format = "json"; // json | csv
    std::string out;             // empty = stdout
};

void add_metric_flags(CLI::App* cmd, cvssi::MetricParams& params) {
    cmd->add_option("--c1", params.c1, "contrast similarity stabilizer");
    cmd->add_option("--c2", params.c2, "saliency similarity stabilizer");
    cmd->add_option("--w1", params.w1, "contrast branch weight");
    cmd->add_option("--w2", params.w2, "saliency branch weight");
    cmd->add_option("--window", params.window, "local contrast window (odd)");
    cmd->add_option("--sr-width", params.sr_working_width, "saliency working width");
}

void add_output_flags(CLI::App* cmd, OutputOpts& opts) {
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opts.out, "write output to this file instead of stdout");
}

void emit(const std::string& text, const OutputOpts& opts) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out);
    if (!f)
        throw cvssi::IoError("cannot write " + opts.out);
    f << text;
}

std::string report_csv_header() {
    return "name,n,srocc,krocc,plcc,rmse,a1,a2,a3,a4,a5,converged";
}

std::string report_csv_row(const std::string& name, const cvssi::CorrelationReport& rep) {
    std::ostringstream ss;
    ss << name << ',' << rep.n << ',' << cvssi::fmt12(rep.srocc) << ','
       << cvssi::fmt12(rep.krocc) << ',' << cvssi::fmt12(rep.plcc) << ','
       << cvssi::fmt12(rep.rmse) << ',' << cvssi::fmt12(rep.logistic.a1) << ','
       << cvssi::fmt12(rep.logistic.a2) << ',' << cvssi::fmt12(rep.logistic.a3) << ','
       << cvssi::fmt12(rep.logistic.a4) << ',' << cvssi::fmt12(rep.logistic.a5) << ','
       << (rep.logistic.converged ? "true" : "false");
    return ss.str();
}

ordered_json report_json(const cvssi::CorrelationReport& rep) {
    ordered_json j;
    j["n"] = rep.n;
    j["srocc"] = cvssi::quant12(rep.srocc);
    j["krocc"] = cvssi::quant12(rep.krocc);
    j["plcc"] = cvssi::quant12(rep.plcc);
    j["rmse"] = cvssi::quant12(rep.rmse);
    j["logistic"] = {{"a1", cvssi::quant12(rep.logistic.a1)},
                     {"a2", cvssi::quant12(rep.logistic.a2)},
                     {"a3", cvssi::quant12(rep.logistic.a3)},
                     {"a4", cvssi::quant12(rep.logistic.a4)},
                     {"a5", cvssi::quant12(rep.logistic.a5)},
                     {"converged", rep.logistic.converged}};
    return j;
}

// Batch-scores a manifest with a bounded worker pool. Results keep
// manifest order and are independent of the thread count.
struct BatchResult {
    std::vector<cvssi::ScoreRecord> scores; // successful records, in order
    std::vector<std::string> failures;      // human-readable, in order
};

template <typename ScoreFn>
BatchResult run_batch(const cvssi::DatasetManifest& manifest, const std::string& manifest_path,
                      int threads, ScoreFn&& score_one) {
    const std::size_t n = manifest.records.size();
    std::vector<std::optional<cvssi::ScoreRecord>> slots(n);
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            const cvssi::ManifestRecord& rec = manifest.records[i];
            try {
                const cvssi::GrayImage ref = cvssi::load_image_gray(
                    cvssi::resolve_manifest_path(manifest_path, rec.ref_path));
                const cvssi::GrayImage dist = cvssi::load_image_gray(
                    cvssi::resolve_manifest_path(manifest_path, rec.dist_path));
                slots[i] = cvssi::ScoreRecord{rec.dist_path, score_one(ref, dist)};
            } catch (const std::exception& e) {
                errors[i] = "record " + std::to_string(i + 1) + " (" + rec.dist_path +
                            "): " + e.what();
            }
        }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    BatchResult result;
    for (std::size_t i = 0; i < n; ++i) {
        if (slots[i])
            result.scores.push_back(*slots[i]);
        else
            result.failures.push_back(errors[i]);
    }
    return result;
}

int cmd_score(const std::string& ref_path, const std::string& dist_path,
              const cvssi::MetricParams& params, const OutputOpts& opts) {
    const cvssi::GrayImage ref = cvssi::load_image_gray(ref_path);
    const cvssi::GrayImage dist = cvssi::load_image_gray(dist_path);

    const auto t0 = std::chrono::steady_clock::now();
    const cvssi::MetricScore score = cvssi::cvssi_score(ref, dist, params);
    const auto t1 = std::chrono::steady_clock::now();
    const double elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (opts.format == "json") {
        ordered_json j;
        j["score"] = cvssi::quant12(score.score);
        j["sd_lcs"] = cvssi::quant12(score.sd_lcs);
        j["sd_gvss"] = cvssi::quant12(score.sd_gvss);
        j["elapsed_ms"] = cvssi::quant12(elapsed_ms);
        emit(j.dump(2) + "\n", opts);
    } else {
        std::ostringstream ss;
        ss << "score,sd_lcs,sd_gvss,elapsed_ms\n"
           << cvssi::fmt12(score.score) << ',' << cvssi::fmt12(score.sd_lcs) << ','
           << cvssi::fmt12(score.sd_gvss) << ',' << cvssi::fmt12(elapsed_ms) << "\n";
        emit(ss.str(), opts);
    }
    return kExitOk;
}

int cmd_batch(const std::string& manifest_path, const std::string& out_path,
              const cvssi::MetricParams& params, int threads) {
    params.validate();
    const cvssi::DatasetManifest manifest = cvssi::load_manifest(manifest_path);
    const BatchResult result =
        run_batch(manifest, manifest_path, threads,
                  [&](const cvssi::GrayImage& ref, const cvssi::GrayImage& dist) {
                      return cvssi::cvssi_score(ref, dist, params).score;
                  });

    cvssi::write_scores(out_path, result.scores);
    if (!result.failures.empty()) {
        for (const std::string& msg : result.failures)
            std::cerr << "error: " << msg << "\n";
        std::cerr << "partial output: " << result.scores.size() << " of "
                  << manifest.records.size() << " records scored -> " << out_path << "\n";
        return kExitUsage;
    }
    std::cout << "scored " << result.scores.size() << " records -> " << out_path << "\n";
    return kExitOk;
}

int cmd_eval(const std::string& manifest_path, const std::string& scores_path,
             const OutputOpts& opts) {
    const cvssi::DatasetManifest manifest = cvssi::load_manifest(manifest_path);
    const std::vector<cvssi::ScoreRecord> scores = cvssi::load_scores(scores_path);
    const cvssi::ScorePairs pairs = cvssi::join_scores(manifest, scores);
    const cvssi::CorrelationReport rep = cvssi::evaluate(pairs);

    if (opts.format == "json") {
        ordered_json j;
        j["name"] = manifest.name;
        j["orientation"] = std::string(cvssi::orientation_name(manifest.orientation));
        j.update(report_json(rep));
        emit(j.dump(2) + "\n", opts);
    } else {
        emit(report_csv_header() + "\n" + report_csv_row(manifest.name, rep) + "\n", opts);
    }
    return kExitOk;
}

int cmd_ablate(const std::string& manifest_path, const cvssi::MetricParams& params, int threads,
               const OutputOpts& opts) {
    params.validate();
    const cvssi::DatasetManifest manifest = cvssi::load_manifest(manifest_path);

    const std::size_t n = manifest.records.size();
    std::vector<std::array<double, 6>> all(n);
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            const cvssi::ManifestRecord& rec = manifest.records[i];
            try {
                const cvssi::GrayImage ref = cvssi::load_image_gray(
                    cvssi::resolve_manifest_path(manifest_path, rec.ref_path));
                const cvssi::GrayImage dist = cvssi::load_image_gray(
                    cvssi::resolve_manifest_path(manifest_path, rec.dist_path));
                all[i] = cvssi::ablate_pooling_all(ref, dist, params);
            } catch (const std::exception& e) {
                errors[i] = "record " + std::to_string(i + 1) + " (" + rec.dist_path +
                            "): " + e.what();
                failed = true;
            }
        }
    };
    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failed) {
        for (const std::string& msg : errors)
            if (!msg.empty())
                std::cerr << "error: " << msg << "\n";
        return kExitUsage;
    }

    std::vector<double> subjective;
    subjective.reserve(n);
    for (const cvssi::ManifestRecord& rec : manifest.records)
        subjective.push_back(rec.subjective);

    ordered_json jrows = ordered_json::array();
    std::ostringstream csv;
    csv << "strategy,srocc,krocc,plcc,rmse\n";
    for (std::size_t s = 0; s < cvssi::kPoolingStrategies.size(); ++s) {
        // scores pass through the 12-digit form, matching what batch + eval
        // see via the score file
        std::vector<double> objective(n);
        for (std::size_t i = 0; i < n; ++i) objective[i] = cvssi::quant12(all[i][s]);
        const cvssi::CorrelationReport rep =
            cvssi::evaluate(cvssi::ScorePairs(objective, subjective));
        const std::string name(cvssi::pooling_strategy_name(cvssi::kPoolingStrategies[s]));
        csv << name << ',' << cvssi::fmt12(rep.srocc) << ',' << cvssi::fmt12(rep.krocc) << ','
            << cvssi::fmt12(rep.plcc) << ',' << cvssi::fmt12(rep.rmse) << "\n";
        ordered_json j;
        j["strategy"] = name;
        j["srocc"] = cvssi::quant12(rep.srocc);
        j["krocc"] = cvssi::quant12(rep.krocc);
        j["plcc"] = cvssi::quant12(rep.plcc);
        j["rmse"] = cvssi::quant12(rep.rmse);
        jrows.push_back(j);
    }

    if (opts.format == "json")
        emit(jrows.dump(2) + "\n", opts);
    else
        emit(csv.str(), opts);
    return kExitOk;
}

int cmd_synth(const std::vector<std::string>& image_paths, const std::string& out_dir,
              std::uint64_t seed, int levels) {
    std::vector<cvssi::GrayImage> sources;
    sources.reserve(image_paths.size());
    for (const std::string& p : image_paths)
        sources.push_back(cvssi::load_image_gray(p));
    const cvssi::SynthCorpus corpus = cvssi::synth_corpus(seed, sources, levels);
    cvssi::write_corpus(corpus, out_dir);
    std::cout << "wrote " << corpus.references.size() << " reference and "
              << corpus.distorted.size() << " distorted images + manifest.csv -> " << out_dir
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"contrast + visual-saliency similarity index (CVSSI) toolkit"};
    app.require_subcommand(1);

    cvssi::MetricParams params;
    OutputOpts opts;
    int threads = 1;
    std::uint64_t seed = 1;
    int levels = 5;
    std::string ref_path, dist_path, manifest_path, scores_path, out_path;
    std::vector<std::string> image_paths;

    CLI::App* score = app.add_subcommand("score", "score one image pair");
    score->add_option("ref", ref_path, "reference image (PGM/PPM)")->required();
    score->add_option("dist", dist_path, "distorted image (PGM/PPM)")->required();
    add_metric_flags(score, params);
    add_output_flags(score, opts);

    CLI::App* batch = app.add_subcommand("batch", "score every record of a manifest");
    batch->add_option("manifest", manifest_path, "manifest CSV")->required();
    batch->add_option("--out", out_path, "output score CSV")->required();
    batch->add_option("--threads", threads, "worker threads");
    add_metric_flags(batch, params);

    CLI::App* eval = app.add_subcommand("eval", "correlate a score file with subjective scores");
    eval->add_option("manifest", manifest_path, "manifest CSV")->required();
    eval->add_option("scores", scores_path, "score CSV")->required();
    add_output_flags(eval, opts);

    CLI::App* ablate = app.add_subcommand("ablate", "evaluate all six pooling strategies");
    ablate->add_option("manifest", manifest_path, "manifest CSV")->required();
    ablate->add_option("--threads", threads, "worker threads");
    add_metric_flags(ablate, params);
    add_output_flags(ablate, opts);

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic distortion corpus");
    synth->add_option("images", image_paths, "source images (PGM/PPM)")->required();
    synth->add_option("--out", out_path, "output directory")->required();
    synth->add_option("--seed", seed, "corpus seed");
    synth->add_option("--levels", levels, "distortion levels per family");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (score->parsed())
            return cmd_score(ref_path, dist_path, params, opts);
        if (batch->parsed())
            return cmd_batch(manifest_path, out_path, params, threads);
        if (eval->parsed())
            return cmd_eval(manifest_path, scores_path, opts);
        if (ablate->parsed())
            return cmd_ablate(manifest_path, params, threads, opts);
        if (synth->parsed())
            return cmd_synth(image_paths, out_path, seed, levels);
    } catch (const cvssi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
