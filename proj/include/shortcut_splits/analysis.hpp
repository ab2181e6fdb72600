#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shortcut_splits/splitter.hpp"

namespace shortcut_splits {

enum class SimilarityKind { jaccard, coincidence };

/// 9x9 matrix indexed by ShortcutKind. Jaccard is symmetric with unit
/// diagonal; coincidence has a unit diagonal but is generally asymmetric.
struct SimilarityMatrix {
  SimilarityKind kind = SimilarityKind::jaccard;
  std::array<std::array<double, kShortcutCount>, kShortcutCount> values{};

  double at(ShortcutKind x, ShortcutKind y) const { return values[index_of(x)][index_of(y)]; }
};

/// entry(x, y) = |head_x ∩ head_y| / |head_x ∪ head_y| over the training
/// head id sets; 0 when both are empty.
SimilarityMatrix jaccard_head_similarity(const CopySplits& train_copy);

/// entry(x, y) = |X ∩ Y| / |Y| over OOD (tail) id sets; 0 when Y is empty.
SimilarityMatrix coincidence_matrix(
    const std::array<std::vector<std::string>, kShortcutCount>& ood_sets);

/// Group-share-weighted mean of normalized entropies: sum over groups of
/// entropy_norm * (group size / samples carrying this shortcut's concept).
/// 1 iff every group is perfectly balanced. Throws UndefinedDegree when
/// there are no groups.
double imbalance_degree(const std::vector<Group>& groups);

struct DistributionRow {
  std::string answer;
  std::uint64_t train_count = 0;
  std::uint64_t ood_count = 0;
};

/// Joins one concept key's training answer histogram with its OOD test
/// histogram; rows ordered by descending train count, ties lexicographic.
/// Throws UnknownKey when the key has no training group.
std::vector<DistributionRow> export_distribution(const std::vector<Group>& train_groups,
                                                 const std::vector<Group>& ood_groups,
                                                 const ConceptKey& key);

void write_similarity_csv(const SimilarityMatrix& matrix, const std::filesystem::path& path);
void write_imbalance_csv(const std::array<std::optional<double>, kShortcutCount>& degrees,
                         const std::filesystem::path& path);
void write_distribution_csv(const std::vector<DistributionRow>& rows,
                            const std::filesystem::path& path);

struct StatsOptions {
  /// Distribution CSVs are written for this many keys per shortcut (largest
  /// training groups that also appear in the OOD set).
  std::size_t dist_top = 3;
};

/// Emits jaccard.csv, coincidence.csv, imbalance.csv and per-concept
/// distribution CSVs into dir. Output is byte-stable across runs.
void write_all_stats(const Dataset& dataset,
                     const ConceptTable& concepts,
                     const BenchmarkSplits& splits,
                     const std::filesystem::path& dir,
                     const StatsOptions& options = {});

}  // namespace shortcut_splits
