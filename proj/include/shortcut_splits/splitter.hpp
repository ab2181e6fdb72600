#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "shortcut_splits/concepts.hpp"
#include "shortcut_splits/core.hpp"
#include "shortcut_splits/ingest.hpp"

namespace shortcut_splits {

/// Fractions of the corpus that become train / val / IID-test. Any positive
/// triple summing to 1 (within 1e-9) is accepted.
struct SplitRatios {
  double train = 0.70;
  double val = 0.05;
  double test = 0.25;

  /// Throws InvalidRatios unless all parts are positive and sum to 1.
  void validate() const;
};

inline constexpr double kDefaultEntropyThreshold = 0.9;
inline constexpr double kDefaultRareFactor = 1.2;

/// All samples of one split that share one concept key, with the answer
/// histogram and its normalized entropy. member_answers[i] is the primary
/// answer of member_ids[i].
struct Group {
  ShortcutKind shortcut = ShortcutKind::QT;
  ConceptKey key;
  std::vector<std::string> member_ids;  // sorted
  std::vector<std::string> member_answers;
  std::map<std::string, std::uint32_t> answer_hist;  // primary answer -> count
  double entropy_norm = 0.0;
};

/// Head (frequent-answer) and tail (rare-answer, OOD) members of one
/// shortcut's imbalanced groups within one split copy.
struct HeadTailSplit {
  ShortcutKind shortcut = ShortcutKind::QT;
  std::vector<std::string> head_ids;  // sorted
  std::vector<std::string> tail_ids;  // sorted
  std::set<ConceptKey> imbalanced_keys;
};

/// Per-shortcut head/tail carving of one split copy, plus the total group
/// count each shortcut produced there.
struct CopySplits {
  std::array<HeadTailSplit, kShortcutCount> per_shortcut;
  std::array<std::size_t, kShortcutCount> group_totals{};

  const HeadTailSplit& of(ShortcutKind kind) const { return per_shortcut[index_of(kind)]; }
};

struct BenchmarkSplits {
  std::vector<std::string> train_ids;     // sorted
  std::vector<std::string> val_ids;       // sorted
  std::vector<std::string> iid_test_ids;  // sorted
  CopySplits test_copy;
  CopySplits train_copy;
  std::optional<CopySplits> val_copy;  // used for ood_val checkpoint selection
  std::uint64_t seed = 0;
  double entropy_threshold = kDefaultEntropyThreshold;
  double rare_factor = kDefaultRareFactor;
};

struct PartitionSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

/// floor(ratio * n) for train and val (with a 1e-9 nudge against binary
/// representation error); test takes the remainder.
PartitionSizes split_sizes(std::size_t n, const SplitRatios& ratios);

/// Random partition: ids are sorted, Fisher-Yates-shuffled with
/// mt19937_64(seed) (see rng.hpp), and sliced by split_sizes. Byte-identical
/// across runs, platforms and thread counts for equal seeds, and independent
/// of sample input order.
std::tuple<std::vector<std::string>, std::vector<std::string>, std::vector<std::string>>
partition_dataset(const Dataset& dataset, const SplitRatios& ratios, std::uint64_t seed);

/// One Group per distinct present key among split_ids, sorted by key;
/// samples whose concept for this shortcut is absent are excluded. Entropy
/// is filled in. Throws MissingConcepts for ids without a concept vector.
std::vector<Group> group_by_concept(const Dataset& dataset,
                                    const ConceptTable& concepts,
                                    const std::vector<std::string>& split_ids,
                                    ShortcutKind shortcut);

/// Normalized answer entropy of one group: -sum p log p over the M distinct
/// answers, divided by log M; 0 when M == 1. Always in [0, 1].
double group_entropy(const Group& group);

/// Keys of groups whose normalized entropy is strictly below the threshold.
std::set<ConceptKey> flag_imbalanced(const std::vector<Group>& groups,
                                     double threshold = kDefaultEntropyThreshold);

/// Splits one imbalanced group: an answer class is rare iff its count is
/// strictly below rare_factor * (group size / M); rare-class members form
/// the tail, the rest the head. Single-answer groups put everyone in the
/// head. Throws NotImbalanced when the group's entropy is not below the
/// threshold.
std::pair<std::vector<std::string>, std::vector<std::string>> split_head_tail(
    const Group& group,
    double rare_factor = kDefaultRareFactor,
    double entropy_threshold = kDefaultEntropyThreshold);

/// Groups the given ids under every shortcut, flags imbalanced groups and
/// merges their heads/tails. Shortcuts are processed independently, so this
/// parallelizes without affecting results.
CopySplits build_copy_splits(const Dataset& dataset,
                             const ConceptTable& concepts,
                             const std::vector<std::string>& ids,
                             double entropy_threshold = kDefaultEntropyThreshold,
                             double rare_factor = kDefaultRareFactor,
                             unsigned threads = 1);

/// Full benchmark construction: partition, then head/tail carving of the
/// IID-test copy (the OOD test sets are the tails), the training copy and
/// the validation copy.
BenchmarkSplits assemble_benchmark(const Dataset& dataset,
                                   const ConceptTable& concepts,
                                   const SplitRatios& ratios,
                                   std::uint64_t seed,
                                   double entropy_threshold = kDefaultEntropyThreshold,
                                   double rare_factor = kDefaultRareFactor,
                                   unsigned threads = 1);

/// Deterministic blend of floor(head_fraction * total) head ids with the
/// remainder from the tail, each drawn uniformly without replacement.
/// Throws InsufficientSamples when either pool is too small.
std::vector<std::string> compose_training_mix(const HeadTailSplit& head_tail,
                                              double head_fraction,
                                              std::size_t total,
                                              std::uint64_t seed);

/// Writes one id-per-line manifests (train.ids, val.ids, iid_test.ids,
/// {shortcut}.head.ids / .tail.ids for the test copy, train.{shortcut}.*.ids,
/// val.{shortcut}.*.ids) plus stats.json into dir.
void save_splits(const BenchmarkSplits& splits, const std::filesystem::path& dir);

/// Reads a directory written by save_splits. The val copy is optional.
BenchmarkSplits load_splits(const std::filesystem::path& dir);

}  // namespace shortcut_splits
