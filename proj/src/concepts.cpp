#include "shortcut_splits/concepts.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

#include <json.hpp>

#include "shortcut_splits/parallel.hpp"
#include "shortcut_splits/text.hpp"

namespace shortcut_splits {

namespace {

using nlohmann::json;

std::uint32_t lookup(const std::unordered_map<std::string, std::uint32_t>& counts,
                     const std::string& key) {
  auto it = counts.find(key);
  return it == counts.end() ? 0u : it->second;
}

std::uint32_t lookup_pair(
    const std::unordered_map<std::string, std::unordered_map<std::string, std::uint32_t>>& counts,
    const std::string& a,
    const std::string& b) {
  auto it = counts.find(a);
  if (it == counts.end()) return 0;
  auto jt = it->second.find(b);
  return jt == it->second.end() ? 0u : jt->second;
}

void merge_counts(std::unordered_map<std::string, std::uint32_t>& into,
                  const std::unordered_map<std::string, std::uint32_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

void merge_pair_counts(
    std::unordered_map<std::string, std::unordered_map<std::string, std::uint32_t>>& into,
    const std::unordered_map<std::string, std::unordered_map<std::string, std::uint32_t>>& from) {
  for (const auto& [k, inner] : from) {
    auto& dst = into[k];
    for (const auto& [a, v] : inner) dst[a] += v;
  }
}

// Candidate ranking shared by keyword and object selection: score descending,
// then position ascending, then token ascending.
struct RankedToken {
  double score;
  std::size_t position;
  const std::string* token;
};

bool ranked_before(const RankedToken& a, const RankedToken& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.position != b.position) return a.position < b.position;
  return *a.token < *b.token;
}

}  // namespace

std::uint32_t CountTables::word_count(const std::string& w) const {
  return lookup(word_counts, w);
}
std::uint32_t CountTables::object_count(const std::string& o) const {
  return lookup(object_counts, o);
}
std::uint32_t CountTables::answer_count(const std::string& a) const {
  return lookup(answer_counts, a);
}
std::uint32_t CountTables::word_answer_count(const std::string& w, const std::string& a) const {
  return lookup_pair(word_answer_counts, w, a);
}
std::uint32_t CountTables::object_answer_count(const std::string& o, const std::string& a) const {
  return lookup_pair(object_answer_counts, o, a);
}

std::vector<std::string> tokenize_keywords(const std::string& question_text,
                                           const std::string& qt_concept) {
  std::vector<std::string> tokens = tokenize_text(question_text);
  if (qt_concept != kUnknownQuestionType) {
    const std::size_t prefix_len = tokenize_text(qt_concept).size();
    tokens.erase(tokens.begin(),
                 tokens.begin() + std::min(prefix_len, tokens.size()));
  }
  // Dedup keeping first position.
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (std::string& t : tokens) {
    if (seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

CountTables build_count_tables(const Dataset& dataset, unsigned threads) {
  if (dataset.size() == 0) throw EmptyCorpus("cannot count an empty dataset");

  const auto& samples = dataset.samples();
  std::vector<CountTables> partial(std::min<std::size_t>(std::max(1u, threads), samples.size()));
  parallel_chunks(samples.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    CountTables& t = partial[c];
    for (std::size_t i = begin; i < end; ++i) {
      const Sample& s = samples[i];
      ++t.total_samples;
      ++t.answer_counts[s.primary_answer];
      const std::string qt = extract_question_type(s.question_text, dataset.qt_prefixes());
      for (const std::string& w : tokenize_keywords(s.question_text, qt)) {
        ++t.word_counts[w];
        ++t.word_answer_counts[w][s.primary_answer];
      }
      for (const std::string& o : s.object_labels) {
        ++t.object_counts[o];
        ++t.object_answer_counts[o][s.primary_answer];
      }
    }
  });

  CountTables tables = std::move(partial.front());
  for (std::size_t c = 1; c < partial.size(); ++c) {
    tables.total_samples += partial[c].total_samples;
    merge_counts(tables.word_counts, partial[c].word_counts);
    merge_counts(tables.object_counts, partial[c].object_counts);
    merge_counts(tables.answer_counts, partial[c].answer_counts);
    merge_pair_counts(tables.word_answer_counts, partial[c].word_answer_counts);
    merge_pair_counts(tables.object_answer_counts, partial[c].object_answer_counts);
  }
  return tables;
}

double mutual_information(const CountTables& tables,
                          const std::string& token,
                          const std::string& answer,
                          Modality modality) {
  const std::uint32_t f_token =
      modality == Modality::word ? tables.word_count(token) : tables.object_count(token);
  if (f_token == 0) throw UnknownSymbol("token has no count: " + token);
  const std::uint32_t f_answer = tables.answer_count(answer);
  if (f_answer == 0) throw UnknownSymbol("answer has no count: " + answer);
  const std::uint32_t f_joint = modality == Modality::word
                                    ? tables.word_answer_count(token, answer)
                                    : tables.object_answer_count(token, answer);
  if (f_joint == 0) return -std::numeric_limits<double>::infinity();
  const double expected =
      static_cast<double>(f_token) * static_cast<double>(f_answer) /
      static_cast<double>(tables.total_samples);
  return std::log(static_cast<double>(f_joint) / expected);
}

ConceptVector assign_concepts(const Sample& sample,
                              const CountTables& tables,
                              const std::vector<std::string>& qt_prefixes) {
  ConceptVector cv;
  const std::string qt = extract_question_type(sample.question_text, qt_prefixes);
  cv.set(ShortcutKind::QT, encode_concept({qt}));

  // Rank eligible keywords by association with the primary answer. A pair
  // that never co-occurs scores -inf and is never selected.
  const std::vector<std::string> keywords = tokenize_keywords(sample.question_text, qt);
  std::vector<RankedToken> ranked_words;
  ranked_words.reserve(keywords.size());
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    const double mi = mutual_information(tables, keywords[i], sample.primary_answer, Modality::word);
    if (std::isinf(mi) && mi < 0) continue;
    ranked_words.push_back({mi, i, &keywords[i]});
  }
  std::sort(ranked_words.begin(), ranked_words.end(), ranked_before);

  std::vector<RankedToken> ranked_objects;
  ranked_objects.reserve(sample.object_labels.size());
  for (std::size_t i = 0; i < sample.object_labels.size(); ++i) {
    const double mi = mutual_information(tables, sample.object_labels[i], sample.primary_answer,
                                         Modality::object);
    if (std::isinf(mi) && mi < 0) continue;
    // object_labels is sorted, so position order equals lexicographic order.
    ranked_objects.push_back({mi, i, &sample.object_labels[i]});
  }
  std::sort(ranked_objects.begin(), ranked_objects.end(), ranked_before);

  if (!ranked_words.empty()) {
    cv.set(ShortcutKind::KW, encode_concept({*ranked_words[0].token}));
    cv.set(ShortcutKind::QT_KW, encode_concept({qt, *ranked_words[0].token}));
  }
  if (keywords.size() >= 2 && ranked_words.size() >= 2) {
    // Order inside the pair follows the ranking: the pair is sequence-
    // dependent.
    cv.set(ShortcutKind::KWP,
           encode_concept({*ranked_words[0].token, *ranked_words[1].token}));
  }
  if (!ranked_objects.empty()) {
    cv.set(ShortcutKind::KO, encode_concept({*ranked_objects[0].token}));
    cv.set(ShortcutKind::QT_KO, encode_concept({qt, *ranked_objects[0].token}));
  }
  if (sample.object_labels.size() >= 2 && ranked_objects.size() >= 2) {
    cv.set(ShortcutKind::KOP,
           encode_concept({*ranked_objects[0].token, *ranked_objects[1].token}));
  }
  if (!ranked_words.empty() && !ranked_objects.empty()) {
    cv.set(ShortcutKind::KW_KO,
           encode_concept({*ranked_words[0].token, *ranked_objects[0].token}));
    cv.set(ShortcutKind::QT_KW_KO,
           encode_concept({qt, *ranked_words[0].token, *ranked_objects[0].token}));
  }
  return cv;
}

ConceptTable assign_all_concepts(const Dataset& dataset,
                                 const CountTables& tables,
                                 unsigned threads) {
  const auto& samples = dataset.samples();
  std::vector<ConceptVector> vectors(samples.size());
  parallel_chunks(samples.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      vectors[i] = assign_concepts(samples[i], tables, dataset.qt_prefixes());
    }
  });
  ConceptTable table;
  table.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    table.emplace(samples[i].id, std::move(vectors[i]));
  }
  return table;
}

void write_concepts(const Dataset& dataset,
                    const ConceptTable& concepts,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const Sample& s : dataset.samples()) {
    auto it = concepts.find(s.id);
    if (it == concepts.end()) throw MissingConcepts("no concepts for sample " + s.id);
    out << "{\"id\":" << json(s.id).dump() << ",\"concepts\":{";
    bool first = true;
    for (ShortcutKind kind : kAllShortcuts) {
      if (!first) out << ',';
      first = false;
      out << json(std::string(to_string(kind))).dump() << ':';
      const auto& key = it->second.get(kind);
      out << (key ? json(*key).dump() : "null");
    }
    out << "}}\n";
  }
  if (!out) throw IoError("failed while writing " + path.string());
}

ConceptTable read_concepts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  ConceptTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
        !record.contains("concepts")) {
      throw ParseError(line_no, "expected {\"id\", \"concepts\"} record");
    }
    ConceptVector cv;
    for (const auto& [name, value] : record["concepts"].items()) {
      if (value.is_null()) continue;
      cv.set(shortcut_from_string(name), value.get<std::string>());
    }
    if (!table.emplace(record["id"].get<std::string>(), std::move(cv)).second) {
      throw DuplicateId("duplicate id in concepts file at line " + std::to_string(line_no));
    }
  }
  return table;
}

}  // namespace shortcut_splits
