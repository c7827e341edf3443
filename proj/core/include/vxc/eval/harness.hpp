// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "vxc/data/dataset.hpp"
#include "vxc/nn/checkpoint.hpp"
#include "vxc/train/loop.hpp"

namespace vxc::eval {

struct CategoryMetrics {
    std::string category;
    int n = 0;
    double mean_iou = 0.0;
    double mean_ce = 0.0;
};

struct EvalReport {
    std::vector<CategoryMetrics> per_category; // first-appearance order
    CategoryMetrics overall;                   // uniform mean over all pairs
    double threshold = 0.5;
    std::string predictor;          // "checkpoint:<hex>", "copy_input", "identity_oracle"
    std::string checkpoint_digest;  // hex, or "-" for baselines
    std::string manifest_digest;    // hex
    std::string config_digest;      // synthesis config digest from the manifest
    std::uint64_t seed = 0;
};

enum class BaselineKind {
    copy_input,      // prediction = the partial view as probabilities (floor)
    identity_oracle, // prediction = the ground truth (self-test upper bound)
};

/// Forward every test pair through the generator and average IoU/CE per
/// category and overall (uniform over pairs). Deterministic; `jobs` only
/// parallelizes the per-record work, the reduction order is fixed.
EvalReport evaluate_generator(const nn::Generator& gen, const data::Manifest& manifest,
                              double threshold, double ce_eps = 1e-7, int jobs = 1);

EvalReport evaluate_baseline(BaselineKind kind, const data::Manifest& manifest, double threshold,
                             double ce_eps = 1e-7);

std::string report_csv(const EvalReport& report);
void write_report_csv(const EvalReport& report, const std::filesystem::path& path);
/// Markdown summary including provenance and the published full-scale
/// reference results as context.
void write_report_md(std::span<const EvalReport> reports, const std::filesystem::path& path);

/// Reference results from the original full-scale experiments (64^3 grids,
/// ~20K training pairs per category); carried as constants for report
/// footers, not reproducible at desk scale.
struct ReferenceEntry {
    const char* setting;
    const char* mode; // "adversarial" or "reconstruction-only"
    const char* categories;
    double iou;
    double ce;
};
std::span<const ReferenceEntry> reference_results();

/// The section 4.2-style protocol: train on the train-split manifests of
/// `train_categories`, evaluate on the test-split manifests of
/// `test_categories`, write checkpoint + report.csv + report.md.
struct ExperimentConfig {
    std::filesystem::path data_root; // expects <root>/<category>/{train,test}/manifest.txt
    std::vector<std::string> train_categories;
    std::vector<std::string> test_categories;
    nn::ModelSpec model;
    train::TrainSpec tspec;
    std::filesystem::path out_dir;
    double threshold = 0.5;
    int jobs = 1;
};

struct ExperimentResult {
    EvalReport model_report;
    EvalReport baseline_report;
    std::filesystem::path checkpoint_path;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Experiment-level markdown: states the train/test category lists and their
/// relation (identical / overlapping / disjoint) before the per-predictor
/// tables. run_experiment writes this as report.md.
void write_experiment_md(const ExperimentConfig& config, std::span<const EvalReport> reports,
                         const std::filesystem::path& path);

/// Concatenate manifests (resolutions must agree); record paths become
/// absolute so the merged manifest stays loadable.
data::Manifest merge_manifests(std::span<const data::Manifest> manifests);

} // namespace vxc::eval
