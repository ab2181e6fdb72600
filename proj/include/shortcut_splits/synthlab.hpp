#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shortcut_splits/concepts.hpp"
#include "shortcut_splits/core.hpp"
#include "shortcut_splits/evaluator.hpp"
#include "shortcut_splits/ingest.hpp"

namespace shortcut_splits {

/// Recipe for a synthetic corpus with planted concept->answer shortcuts of
/// controllable strength.
struct SynthConfig {
  std::size_t n_samples = 1000;
  std::size_t n_question_types = 8;
  std::size_t keyword_vocab_size = 40;
  std::size_t object_vocab_size = 20;
  std::size_t n_answers = 10;
  /// Per-shortcut probability that a sample's answer follows that concept's
  /// planted answer; indexed by ShortcutKind.
  std::array<double, kShortcutCount> planted_strength{};
  std::pair<std::size_t, std::size_t> question_length{2, 4};   // keywords per question
  std::pair<std::size_t, std::size_t> objects_per_image{0, 3};
  std::uint64_t seed = 0;

  /// Throws InvalidConfig on out-of-range fields.
  void validate() const;

  static SynthConfig from_json_file(const std::filesystem::path& path);
  void to_json_file(const std::filesystem::path& path) const;
};

/// Question-type prefix of the i-th synthetic type ("qt<i> is", two tokens).
std::string synth_qt_prefix(std::size_t index);

/// The answer a planted concept pulls toward. Single-token keys map to
/// answer (token index mod n_answers); composite keys hash their joined
/// parts. Setting n_answers >= the vocabulary size therefore makes the
/// single-token maps injective.
std::string planted_answer(const SynthConfig& config,
                           ShortcutKind kind,
                           const std::vector<std::string>& parts);

/// Generates the corpus. Each sample derives its own sub-seed from
/// (config.seed, index), so generation is reproducible and shardable. For
/// each planted shortcut, in fixed priority order (multi-modality, then
/// visual, then language; composites before their parts), the answer follows
/// planted_answer with the configured probability; when nothing fires the
/// answer is uniform.
Dataset generate_synthetic(const SynthConfig& config);

/// Per-concept majority-vote predictor fitted on training samples: the modal
/// primary answer of each concept key (ties lexicographic), with the overall
/// training modal answer as fallback for absent concepts and unseen keys.
struct FrequencyOracle {
  ShortcutKind shortcut = ShortcutKind::QT;
  std::unordered_map<ConceptKey, std::string> modal_by_key;
  std::string fallback;

  const std::string& predict(const ConceptVector& concepts) const;
};

/// Throws EmptyCorpus when train_ids is empty.
FrequencyOracle frequency_oracle(const std::vector<std::string>& train_ids,
                                 const Dataset& dataset,
                                 const ConceptTable& concepts,
                                 ShortcutKind shortcut);

/// Oracle predictions for every sample in the dataset.
PredictionSet oracle_predictions(const FrequencyOracle& oracle,
                                 const Dataset& dataset,
                                 const ConceptTable& concepts);

void write_predictions(const PredictionSet& predictions,
                       const Dataset& dataset,
                       const std::filesystem::path& path);

}  // namespace shortcut_splits
