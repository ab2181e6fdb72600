#include "shortcut_splits/evaluator.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace shortcut_splits {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

double sample_score(const Sample& sample, const std::string& prediction, Metric metric) {
  if (metric == Metric::exact) {
    return prediction == sample.primary_answer ? 1.0 : 0.0;
  }
  // vqa_soft: min(matching annotator count / 3, 1)
  for (const AnswerCount& a : sample.answers) {
    if (a.answer == prediction) {
      return std::min(static_cast<double>(a.count) / 3.0, 1.0);
    }
  }
  return 0.0;
}

ordered_json score_to_json(const SplitScore& score) {
  return ordered_json{
      {"accuracy", score.accuracy}, {"size", score.size}, {"missing", score.missing}};
}

}  // namespace

std::string_view to_string(Metric metric) {
  return metric == Metric::exact ? "exact" : "vqa_soft";
}

Metric metric_from_string(std::string_view name) {
  if (name == "exact") return Metric::exact;
  if (name == "vqa_soft") return Metric::vqa_soft;
  throw InvalidConfig("unknown metric: " + std::string(name));
}

SelectionCriterion criterion_from_string(std::string_view name) {
  if (name == "ood_test") return SelectionCriterion::ood_test;
  if (name == "ood_val") return SelectionCriterion::ood_val;
  if (name == "iid_val") return SelectionCriterion::iid_val;
  throw InvalidConfig("unknown selection criterion: " + std::string(name));
}

PredictionSet read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  PredictionSet predictions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
        !record.contains("answer")) {
      throw ParseError(line_no, "expected {\"id\", \"answer\"} record");
    }
    try {
      predictions[record["id"].get<std::string>()] =
          canonicalize_answer(record["answer"].get<std::string>());
    } catch (const InvalidAnswer& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return predictions;
}

SplitScore score_split_detail(const PredictionSet& predictions,
                              const std::vector<std::string>& ids,
                              const Dataset& dataset,
                              Metric metric) {
  if (ids.empty()) throw EmptySplit("cannot score an empty split");
  SplitScore score;
  score.size = ids.size();
  double total = 0.0;
  for (const std::string& id : ids) {
    auto it = predictions.find(id);
    if (it == predictions.end()) {
      ++score.missing;  // scored 0
      continue;
    }
    total += sample_score(dataset.at(id), it->second, metric);
  }
  score.accuracy = total / static_cast<double>(ids.size());
  return score;
}

double score_split(const PredictionSet& predictions,
                   const std::vector<std::string>& ids,
                   const Dataset& dataset,
                   Metric metric) {
  return score_split_detail(predictions, ids, dataset, metric).accuracy;
}

Report full_report(const PredictionSet& predictions,
                   const BenchmarkSplits& splits,
                   const Dataset& dataset,
                   Metric metric) {
  Report report;
  report.metric = metric;
  report.iid = score_split_detail(predictions, splits.iid_test_ids, dataset, metric);
  double ood_sum = 0.0;
  for (ShortcutKind kind : kAllShortcuts) {
    const HeadTailSplit& ht = splits.test_copy.of(kind);
    SplitScore& head = report.head_scores[index_of(kind)];
    SplitScore& tail = report.tail_scores[index_of(kind)];
    if (!ht.head_ids.empty()) {
      head = score_split_detail(predictions, ht.head_ids, dataset, metric);
    }
    if (!ht.tail_ids.empty()) {
      tail = score_split_detail(predictions, ht.tail_ids, dataset, metric);
    }
    ood_sum += tail.accuracy;
  }
  report.mean_ood = ood_sum / static_cast<double>(kShortcutCount);
  report.gap = report.iid.accuracy - report.mean_ood;
  return report;
}

void write_report(const Report& report, const std::filesystem::path& path) {
  ordered_json doc;
  doc["metric"] = std::string(to_string(report.metric));
  doc["iid"] = score_to_json(report.iid);
  doc["mean_ood"] = report.mean_ood;
  doc["gap"] = report.gap;
  ordered_json per_shortcut = ordered_json::object();
  for (ShortcutKind kind : kAllShortcuts) {
    per_shortcut[std::string(to_string(kind))] = {
        {"acc_head", score_to_json(report.head_scores[index_of(kind)])},
        {"acc_tail", score_to_json(report.tail_scores[index_of(kind)])},
    };
  }
  doc["per_shortcut"] = std::move(per_shortcut);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::size_t select_checkpoint(const std::vector<PredictionSet>& candidates,
                              SelectionCriterion criterion,
                              const BenchmarkSplits& splits,
                              const Dataset& dataset,
                              Metric metric) {
  if (candidates.empty()) throw EmptySplit("no prediction sets to select from");
  if (criterion == SelectionCriterion::ood_val && !splits.val_copy) {
    throw MissingSplit("val-copy head/tail splits are not available");
  }

  auto criterion_score = [&](const PredictionSet& predictions) {
    switch (criterion) {
      case SelectionCriterion::iid_val:
        return score_split(predictions, splits.val_ids, dataset, metric);
      case SelectionCriterion::ood_test:
      case SelectionCriterion::ood_val: {
        const CopySplits& copy =
            criterion == SelectionCriterion::ood_test ? splits.test_copy : *splits.val_copy;
        double sum = 0.0;
        for (ShortcutKind kind : kAllShortcuts) {
          const auto& tail = copy.of(kind).tail_ids;
          if (!tail.empty()) sum += score_split(predictions, tail, dataset, metric);
        }
        return sum / static_cast<double>(kShortcutCount);
      }
    }
    return 0.0;
  };

  std::size_t best = 0;
  double best_score = criterion_score(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = criterion_score(candidates[i]);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return best;
}

}  // namespace shortcut_splits
