#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shortcut_splits/errors.hpp"

namespace shortcut_splits {

/// The nine shortcut families a sample can be grouped under: question type,
/// keyword, keyword pair, key object, key object pair, and their composites.
enum class ShortcutKind : int {
  QT = 0,
  KW,
  KWP,
  QT_KW,
  KO,
  KOP,
  QT_KO,
  KW_KO,
  QT_KW_KO,
};

inline constexpr std::size_t kShortcutCount = 9;

inline constexpr std::array<ShortcutKind, kShortcutCount> kAllShortcuts = {
    ShortcutKind::QT,    ShortcutKind::KW,    ShortcutKind::KWP,
    ShortcutKind::QT_KW, ShortcutKind::KO,    ShortcutKind::KOP,
    ShortcutKind::QT_KO, ShortcutKind::KW_KO, ShortcutKind::QT_KW_KO,
};

inline constexpr std::size_t index_of(ShortcutKind kind) {
  return static_cast<std::size_t>(kind);
}

/// Display / serialization names: "QT", "KW", "KWP", "QT+KW", "KO", "KOP",
/// "QT+KO", "KW+KO", "QT+KW+KO".
std::string_view to_string(ShortcutKind kind);

/// Inverse of to_string; throws UnknownSymbol for anything else.
ShortcutKind shortcut_from_string(std::string_view name);

/// One answer with the number of annotators who gave it.
struct AnswerCount {
  std::string answer;
  std::uint32_t count = 1;

  friend bool operator==(const AnswerCount&, const AnswerCount&) = default;
};

/// One corpus record. object_labels is a deduplicated, sorted set of category
/// names; answers holds canonical answers with positive annotator counts.
struct Sample {
  std::string id;
  std::string question_text;
  std::vector<std::string> object_labels;
  std::vector<AnswerCount> answers;
  std::string primary_answer;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Any key a sample can be grouped by: a single token/label or a
/// separator-joined ordered sequence of parts (see encode_concept).
using ConceptKey = std::string;

/// The per-sample assignment of all nine shortcut concepts. A missing entry
/// means the sample lacks the parts that shortcut needs (e.g. no object
/// labels for KO).
struct ConceptVector {
  std::array<std::optional<ConceptKey>, kShortcutCount> keys;

  const std::optional<ConceptKey>& get(ShortcutKind kind) const { return keys[index_of(kind)]; }
  void set(ShortcutKind kind, ConceptKey key) { keys[index_of(kind)] = std::move(key); }
  bool has(ShortcutKind kind) const { return keys[index_of(kind)].has_value(); }

  friend bool operator==(const ConceptVector&, const ConceptVector&) = default;
};

/// Separator used between the parts of a composite concept key: U+241F
/// (SYMBOL FOR UNIT SEPARATOR), UTF-8 bytes E2 90 9F. Occurrences inside a
/// part are backslash-escaped by encode_concept, so keys stay injective even
/// when parts contain the separator or '+'.
inline constexpr std::string_view kConceptSeparator = "\xE2\x90\x9F";

/// Canonical answer form: lowercased, whitespace collapsed to single spaces,
/// surrounding ASCII punctuation stripped. Idempotent. Throws InvalidAnswer
/// when nothing is left.
std::string canonicalize_answer(std::string_view raw);

/// Joins ordered parts into one injective ConceptKey. Escaping guarantees
/// encode(p1) == encode(p2) iff p1 == p2 element-wise in order. Throws
/// InvalidConceptPart on an empty part (or empty part list).
ConceptKey encode_concept(const std::vector<std::string>& parts);

/// Exact inverse of encode_concept.
std::vector<std::string> decode_concept(const ConceptKey& key);

/// The answer with the highest annotator count; ties go to the
/// lexicographically smallest answer. Input order never matters.
std::string compute_primary_answer(const std::vector<AnswerCount>& answers);

/// Canonicalizes and merges raw (answer, count) pairs, sorts them by answer,
/// and fills primary_answer. Throws InvalidAnswer if no valid answer remains.
std::vector<AnswerCount> normalize_answers(const std::vector<AnswerCount>& raw);

/// Builds a fully validated Sample: objects deduplicated and sorted, answers
/// normalized, primary answer computed.
Sample make_sample(std::string id,
                   std::string question_text,
                   std::vector<std::string> object_labels,
                   std::vector<AnswerCount> answers);

}  // namespace shortcut_splits
