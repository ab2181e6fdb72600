#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "shortcut_splits/core.hpp"
#include "shortcut_splits/ingest.hpp"

namespace shortcut_splits {

/// Corpus-wide occurrence counts. Every count is "number of samples in
/// which ...": a token or label occurring several times in one sample still
/// contributes one. Keyword counts run over the question tokens left after
/// the question-type prefix is removed.
struct CountTables {
  std::uint64_t total_samples = 0;
  std::unordered_map<std::string, std::uint32_t> word_counts;
  std::unordered_map<std::string, std::uint32_t> object_counts;
  std::unordered_map<std::string, std::uint32_t> answer_counts;
  std::unordered_map<std::string, std::unordered_map<std::string, std::uint32_t>> word_answer_counts;
  std::unordered_map<std::string, std::unordered_map<std::string, std::uint32_t>> object_answer_counts;

  std::uint32_t word_count(const std::string& w) const;
  std::uint32_t object_count(const std::string& o) const;
  std::uint32_t answer_count(const std::string& a) const;
  std::uint32_t word_answer_count(const std::string& w, const std::string& a) const;
  std::uint32_t object_answer_count(const std::string& o, const std::string& a) const;
};

enum class Modality { word, object };

/// Question tokens eligible as keywords: tokenized, the matched
/// question-type prefix tokens removed from the front (nothing removed for
/// "unknown"), duplicates dropped keeping the first position.
std::vector<std::string> tokenize_keywords(const std::string& question_text,
                                           const std::string& qt_concept);

/// Counts over the whole corpus, before any partitioning. Shards across
/// `threads` workers; the merge is associative so the thread count never
/// changes the result. Throws EmptyCorpus on an empty dataset.
CountTables build_count_tables(const Dataset& dataset, unsigned threads = 1);

/// Pointwise association between a token (or object label) and an answer:
/// log of observed co-occurrence over the count expected under independence,
/// natural log. Returns -infinity when the pair never co-occurs. Throws
/// UnknownSymbol when the token or answer has no count at all.
double mutual_information(const CountTables& tables,
                          const std::string& token,
                          const std::string& answer,
                          Modality modality);

/// Assigns all nine concepts to one sample. Selection is by highest
/// association score with the sample's primary answer; score ties go to the
/// earlier question position (keywords) or the lexicographically smaller
/// string, so assignment is a pure function of (sample, tables).
ConceptVector assign_concepts(const Sample& sample,
                              const CountTables& tables,
                              const std::vector<std::string>& qt_prefixes);

using ConceptTable = std::unordered_map<std::string, ConceptVector>;

/// assign_concepts for every sample, parallel over samples.
ConceptTable assign_all_concepts(const Dataset& dataset,
                                 const CountTables& tables,
                                 unsigned threads = 1);

/// Line-delimited {"id", "concepts": {...}} records in dataset order; absent
/// concepts are encoded as null.
void write_concepts(const Dataset& dataset,
                    const ConceptTable& concepts,
                    const std::filesystem::path& path);

ConceptTable read_concepts(const std::filesystem::path& path);

}  // namespace shortcut_splits
