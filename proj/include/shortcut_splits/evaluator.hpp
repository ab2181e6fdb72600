#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "shortcut_splits/ingest.hpp"
#include "shortcut_splits/splitter.hpp"

namespace shortcut_splits {

enum class Metric { exact, vqa_soft };

std::string_view to_string(Metric metric);
Metric metric_from_string(std::string_view name);

/// sample id -> canonical predicted answer.
using PredictionSet = std::unordered_map<std::string, std::string>;

/// Line-delimited {"id", "answer"} records; answers are canonicalized on
/// read.
PredictionSet read_predictions(const std::filesystem::path& path);

struct SplitScore {
  double accuracy = 0.0;
  std::size_t size = 0;
  std::size_t missing = 0;  // ids with no prediction; scored 0
};

/// Accuracy over the given ids. exact: prediction equals the primary answer.
/// vqa_soft: min(matching annotator count / 3, 1) per sample. Ids without a
/// prediction score 0. Throws EmptySplit on an empty id list.
double score_split(const PredictionSet& predictions,
                   const std::vector<std::string>& ids,
                   const Dataset& dataset,
                   Metric metric);

SplitScore score_split_detail(const PredictionSet& predictions,
                              const std::vector<std::string>& ids,
                              const Dataset& dataset,
                              Metric metric);

/// Per-shortcut head/tail accuracy on the test copy, IID accuracy, the
/// unweighted mean over the nine OOD (tail) accuracies and the IID-OOD gap.
/// Empty head/tail sets report accuracy 0 with size 0.
struct Report {
  Metric metric = Metric::exact;
  SplitScore iid;
  std::array<SplitScore, kShortcutCount> head_scores;
  std::array<SplitScore, kShortcutCount> tail_scores;
  double mean_ood = 0.0;
  double gap = 0.0;
};

Report full_report(const PredictionSet& predictions,
                   const BenchmarkSplits& splits,
                   const Dataset& dataset,
                   Metric metric);

void write_report(const Report& report, const std::filesystem::path& path);

enum class SelectionCriterion { ood_test, ood_val, iid_val };

SelectionCriterion criterion_from_string(std::string_view name);

/// Index of the prediction set maximizing the criterion (mean over the nine
/// tail sets for ood_* criteria, val accuracy for iid_val); earliest index
/// wins ties. Throws MissingSplit when the criterion's splits are not
/// available.
std::size_t select_checkpoint(const std::vector<PredictionSet>& candidates,
                              SelectionCriterion criterion,
                              const BenchmarkSplits& splits,
                              const Dataset& dataset,
                              Metric metric = Metric::exact);

}  // namespace shortcut_splits
