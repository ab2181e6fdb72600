#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "shortcut_splits/core.hpp"

namespace shortcut_splits {

/// Question-type concept value for samples no prefix matches.
inline constexpr std::string_view kUnknownQuestionType = "unknown";

/// A corpus plus the question-type prefix list used to label it.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::vector<Sample> samples, std::vector<std::string> qt_prefixes);

  const std::vector<Sample>& samples() const { return samples_; }
  const std::vector<std::string>& qt_prefixes() const { return qt_prefixes_; }
  std::size_t size() const { return samples_.size(); }

  /// nullptr when the id is unknown.
  const Sample* find(const std::string& id) const;
  const Sample& at(const std::string& id) const;

 private:
  std::vector<Sample> samples_;
  std::vector<std::string> qt_prefixes_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// The stock question-type prefix list (65 entries) used when no file is
/// supplied.
const std::vector<std::string>& default_qt_prefixes();

/// Lowercases, trims and deduplicates prefixes, keeping first occurrence.
/// Throws InvalidConfig if nothing remains.
std::vector<std::string> normalize_qt_prefixes(const std::vector<std::string>& prefixes);

/// One prefix per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> load_qt_prefixes(const std::filesystem::path& path);

/// Longest prefix whose tokens match the start of the question's tokens;
/// "unknown" when none does. Independent of prefix list order.
std::string extract_question_type(const std::string& question_text,
                                  const std::vector<std::string>& qt_prefixes);

/// Reads the line-delimited generic corpus format: one JSON object per line
/// with fields id (string), question (string), objects (array of strings,
/// optional) and answers (array of {"answer","count"} objects or one plain
/// string). Answers are canonicalized and merged. Sample order follows file
/// order. Throws ParseError with the offending line and DuplicateId on id
/// reuse.
Dataset parse_generic(const std::filesystem::path& path, std::vector<std::string> qt_prefixes);
Dataset parse_generic(const std::filesystem::path& path);

/// Inverse of parse_generic; parse_generic(write_generic(d)) == d.
void write_generic(const Dataset& dataset, const std::filesystem::path& path);

/// Joins official VQA v2 question/annotation files (both train and val parts
/// may be listed) with an image-id -> object-label map and returns the merged
/// corpus. Questions without a matching annotation are dropped and counted in
/// *dropped; a join failure rate above 1% raises JoinError. A missing
/// objects_file entry degrades to an empty label set.
Dataset adapt_vqa_v2(const std::vector<std::filesystem::path>& question_files,
                     const std::vector<std::filesystem::path>& annotation_files,
                     const std::filesystem::path& objects_file,
                     std::vector<std::string> qt_prefixes,
                     std::size_t* dropped = nullptr);

}  // namespace shortcut_splits
