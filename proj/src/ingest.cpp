#include "shortcut_splits/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "shortcut_splits/text.hpp"

namespace shortcut_splits {

namespace {

using nlohmann::json;

json parse_json_line(const std::string& line, std::size_t line_no) {
  json record = json::parse(line, nullptr, false);
  if (record.is_discarded() || !record.is_object()) {
    throw ParseError(line_no, "not a JSON object");
  }
  return record;
}

std::vector<AnswerCount> answers_from_json(const json& value, std::size_t line_no) {
  std::vector<AnswerCount> answers;
  if (value.is_string()) {
    answers.push_back({value.get<std::string>(), 1});
    return answers;
  }
  if (!value.is_array()) throw ParseError(line_no, "answers must be a string or an array");
  for (const json& entry : value) {
    if (!entry.is_object() || !entry.contains("answer") || !entry["answer"].is_string()) {
      throw ParseError(line_no, "answer entry must be an object with an \"answer\" string");
    }
    std::uint32_t count = 1;
    if (entry.contains("count")) {
      if (!entry["count"].is_number_integer() || entry["count"].get<std::int64_t>() < 1) {
        throw ParseError(line_no, "answer count must be a positive integer");
      }
      count = entry["count"].get<std::uint32_t>();
    }
    answers.push_back({entry["answer"].get<std::string>(), count});
  }
  return answers;
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  json value = json::parse(in, nullptr, false);
  if (value.is_discarded()) throw IoError("invalid JSON in " + path.string());
  return value;
}

std::string json_escape_string(const std::string& s) {
  return json(s).dump();
}

}  // namespace

Dataset::Dataset(std::vector<Sample> samples, std::vector<std::string> qt_prefixes)
    : samples_(std::move(samples)), qt_prefixes_(normalize_qt_prefixes(qt_prefixes)) {
  by_id_.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    auto [it, inserted] = by_id_.emplace(samples_[i].id, i);
    if (!inserted) throw DuplicateId("duplicate sample id: " + samples_[i].id);
  }
}

const Sample* Dataset::find(const std::string& id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &samples_[it->second];
}

const Sample& Dataset::at(const std::string& id) const {
  const Sample* s = find(id);
  if (!s) throw UnknownSymbol("unknown sample id: " + id);
  return *s;
}

std::vector<std::string> normalize_qt_prefixes(const std::vector<std::string>& prefixes) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const std::string& p : prefixes) {
    std::string lowered = ascii_lower(p);
    // trim edges
    const auto begin = lowered.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) continue;
    const auto end = lowered.find_last_not_of(" \t\r\n");
    lowered = lowered.substr(begin, end - begin + 1);
    if (seen.insert(lowered).second) out.push_back(std::move(lowered));
  }
  if (out.empty()) throw InvalidConfig("question-type prefix list is empty");
  return out;
}

std::vector<std::string> load_qt_prefixes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> prefixes;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    prefixes.push_back(line);
  }
  return normalize_qt_prefixes(prefixes);
}

std::string extract_question_type(const std::string& question_text,
                                  const std::vector<std::string>& qt_prefixes) {
  const std::vector<std::string> question_tokens = tokenize_text(question_text);
  const std::string* best = nullptr;
  std::size_t best_tokens = 0;
  for (const std::string& prefix : qt_prefixes) {
    const std::vector<std::string> prefix_tokens = tokenize_text(prefix);
    if (prefix_tokens.empty() || prefix_tokens.size() > question_tokens.size()) continue;
    if (!std::equal(prefix_tokens.begin(), prefix_tokens.end(), question_tokens.begin())) {
      continue;
    }
    // Longest match wins: most tokens, then longest string, then smallest
    // string, so the result never depends on list order.
    if (best == nullptr || prefix_tokens.size() > best_tokens ||
        (prefix_tokens.size() == best_tokens &&
         (prefix.size() > best->size() || (prefix.size() == best->size() && prefix < *best)))) {
      best = &prefix;
      best_tokens = prefix_tokens.size();
    }
  }
  return best ? *best : std::string(kUnknownQuestionType);
}

Dataset parse_generic(const std::filesystem::path& path, std::vector<std::string> qt_prefixes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Sample> samples;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const json record = parse_json_line(line, line_no);
    if (!record.contains("id") || !record["id"].is_string()) {
      throw ParseError(line_no, "missing string field \"id\"");
    }
    if (!record.contains("question") || !record["question"].is_string()) {
      throw ParseError(line_no, "missing string field \"question\"");
    }
    if (!record.contains("answers")) throw ParseError(line_no, "missing field \"answers\"");
    std::string id = record["id"].get<std::string>();
    if (!ids.insert(id).second) throw DuplicateId("duplicate sample id: " + id);
    std::vector<std::string> objects;
    if (record.contains("objects")) {
      if (!record["objects"].is_array()) throw ParseError(line_no, "objects must be an array");
      for (const json& o : record["objects"]) {
        if (!o.is_string()) throw ParseError(line_no, "object labels must be strings");
        objects.push_back(o.get<std::string>());
      }
    }
    try {
      samples.push_back(make_sample(std::move(id), record["question"].get<std::string>(),
                                    std::move(objects),
                                    answers_from_json(record["answers"], line_no)));
    } catch (const InvalidAnswer& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return Dataset(std::move(samples), std::move(qt_prefixes));
}

Dataset parse_generic(const std::filesystem::path& path) {
  return parse_generic(path, default_qt_prefixes());
}

void write_generic(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const Sample& s : dataset.samples()) {
    // Fields are emitted in a fixed order for byte-stable output.
    out << "{\"id\":" << json_escape_string(s.id)
        << ",\"question\":" << json_escape_string(s.question_text) << ",\"objects\":[";
    for (std::size_t i = 0; i < s.object_labels.size(); ++i) {
      if (i) out << ',';
      out << json_escape_string(s.object_labels[i]);
    }
    out << "],\"answers\":[";
    for (std::size_t i = 0; i < s.answers.size(); ++i) {
      if (i) out << ',';
      out << "{\"answer\":" << json_escape_string(s.answers[i].answer)
          << ",\"count\":" << s.answers[i].count << '}';
    }
    out << "]}\n";
  }
  if (!out) throw IoError("failed while writing " + path.string());
}

Dataset adapt_vqa_v2(const std::vector<std::filesystem::path>& question_files,
                     const std::vector<std::filesystem::path>& annotation_files,
                     const std::filesystem::path& objects_file,
                     std::vector<std::string> qt_prefixes,
                     std::size_t* dropped) {
  // question id -> (image id, question text), in file order
  std::vector<std::pair<std::int64_t, std::pair<std::int64_t, std::string>>> questions;
  for (const auto& qfile : question_files) {
    const json root = load_json_file(qfile);
    if (!root.contains("questions") || !root["questions"].is_array()) {
      throw JoinError("no \"questions\" array in " + qfile.string());
    }
    for (const json& q : root["questions"]) {
      questions.emplace_back(
          q.at("question_id").get<std::int64_t>(),
          std::make_pair(q.at("image_id").get<std::int64_t>(),
                         q.at("question").get<std::string>()));
    }
  }
  if (questions.empty()) throw JoinError("no questions found");

  std::unordered_map<std::int64_t, std::vector<AnswerCount>> annotations;
  for (const auto& afile : annotation_files) {
    const json root = load_json_file(afile);
    if (!root.contains("annotations") || !root["annotations"].is_array()) {
      throw JoinError("no \"annotations\" array in " + afile.string());
    }
    for (const json& a : root["annotations"]) {
      std::vector<AnswerCount> answers;
      for (const json& ans : a.at("answers")) {
        answers.push_back({ans.at("answer").get<std::string>(), 1});
      }
      annotations.emplace(a.at("question_id").get<std::int64_t>(), std::move(answers));
    }
  }
  if (annotations.empty()) throw JoinError("no annotations found");

  std::unordered_map<std::string, std::vector<std::string>> image_objects;
  if (!objects_file.empty()) {
    const json root = load_json_file(objects_file);
    if (!root.is_object()) throw IoError("objects file must map image id to label array");
    for (const auto& [image_id, labels] : root.items()) {
      std::vector<std::string> names;
      for (const json& label : labels) names.push_back(label.get<std::string>());
      image_objects.emplace(image_id, std::move(names));
    }
  }

  std::vector<Sample> samples;
  samples.reserve(questions.size());
  std::size_t drop_count = 0;
  for (const auto& [question_id, rest] : questions) {
    const auto& [image_id, question_text] = rest;
    auto ann = annotations.find(question_id);
    if (ann == annotations.end()) {
      ++drop_count;
      continue;
    }
    std::vector<std::string> objects;
    if (auto it = image_objects.find(std::to_string(image_id)); it != image_objects.end()) {
      objects = it->second;
    }
    try {
      samples.push_back(make_sample(std::to_string(question_id), question_text,
                                    std::move(objects), ann->second));
    } catch (const InvalidAnswer&) {
      ++drop_count;  // all ten annotator answers were unusable
    }
  }
  if (drop_count * 100 > questions.size()) {
    throw JoinError("join failure rate above 1%: " + std::to_string(drop_count) + " of " +
                    std::to_string(questions.size()));
  }
  if (drop_count > 0) {
    std::cerr << "adapt_vqa_v2: dropped " << drop_count << " questions without usable annotation\n";
  }
  if (dropped) *dropped = drop_count;
  return Dataset(std::move(samples), std::move(qt_prefixes));
}

}  // namespace shortcut_splits
