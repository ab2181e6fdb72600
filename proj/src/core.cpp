#include "shortcut_splits/core.hpp"

#include <algorithm>
#include <map>

#include "shortcut_splits/text.hpp"

namespace shortcut_splits {

namespace {

constexpr std::array<std::string_view, kShortcutCount> kShortcutNames = {
    "QT", "KW", "KWP", "QT+KW", "KO", "KOP", "QT+KO", "KW+KO", "QT+KW+KO",
};

inline bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// ASCII punctuation for edge stripping; anything non-alphanumeric below 0x80.
inline bool is_ascii_punct(unsigned char c) {
  if (c >= 0x80) return false;
  if (is_ascii_space(c)) return false;
  return !((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'));
}

}  // namespace

std::string_view to_string(ShortcutKind kind) {
  return kShortcutNames[index_of(kind)];
}

ShortcutKind shortcut_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kShortcutCount; ++i) {
    if (kShortcutNames[i] == name) return kAllShortcuts[i];
  }
  throw UnknownSymbol("unknown shortcut kind: " + std::string(name));
}

std::string canonicalize_answer(std::string_view raw) {
  // Lowercase and collapse whitespace runs into single spaces.
  std::string collapsed;
  collapsed.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (is_ascii_space(c)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) {
      collapsed.push_back(' ');
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
    collapsed.push_back(static_cast<char>(c));
  }

  // Strip surrounding punctuation, then any space it exposed.
  std::size_t begin = 0;
  std::size_t end = collapsed.size();
  while (begin < end && (is_ascii_punct(collapsed[begin]) || collapsed[begin] == ' ')) ++begin;
  while (end > begin && (is_ascii_punct(collapsed[end - 1]) || collapsed[end - 1] == ' ')) --end;

  if (begin >= end) throw InvalidAnswer("answer empty after normalization");
  return collapsed.substr(begin, end - begin);
}

ConceptKey encode_concept(const std::vector<std::string>& parts) {
  if (parts.empty()) throw InvalidConceptPart("concept needs at least one part");
  std::string out;
  bool first = true;
  for (const std::string& part : parts) {
    if (part.empty()) throw InvalidConceptPart("empty concept part");
    if (!first) out.append(kConceptSeparator);
    first = false;
    for (std::size_t i = 0; i < part.size();) {
      if (part[i] == '\\') {
        out.append("\\\\");
        ++i;
      } else if (part.compare(i, kConceptSeparator.size(), kConceptSeparator) == 0) {
        out.push_back('\\');
        out.append(kConceptSeparator);
        i += kConceptSeparator.size();
      } else {
        out.push_back(part[i]);
        ++i;
      }
    }
  }
  return out;
}

std::vector<std::string> decode_concept(const ConceptKey& key) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < key.size();) {
    if (key[i] == '\\' && i + 1 < key.size()) {
      // Escape quotes the next byte; the separator's remaining bytes follow
      // unescaped and cannot start a separator match themselves.
      cur.push_back(key[i + 1]);
      i += 2;
    } else if (key.compare(i, kConceptSeparator.size(), kConceptSeparator) == 0) {
      parts.push_back(std::move(cur));
      cur.clear();
      i += kConceptSeparator.size();
    } else {
      cur.push_back(key[i]);
      ++i;
    }
  }
  parts.push_back(std::move(cur));
  return parts;
}

std::string compute_primary_answer(const std::vector<AnswerCount>& answers) {
  if (answers.empty()) throw InvalidAnswer("sample has no answers");
  const AnswerCount* best = &answers.front();
  for (const AnswerCount& a : answers) {
    if (a.count > best->count || (a.count == best->count && a.answer < best->answer)) {
      best = &a;
    }
  }
  return best->answer;
}

std::vector<AnswerCount> normalize_answers(const std::vector<AnswerCount>& raw) {
  std::map<std::string, std::uint64_t> merged;
  for (const AnswerCount& a : raw) {
    if (a.count == 0) throw InvalidAnswer("annotator count must be positive");
    std::string canonical;
    try {
      canonical = canonicalize_answer(a.answer);
    } catch (const InvalidAnswer&) {
      continue;  // drop unusable annotator entries
    }
    merged[canonical] += a.count;
  }
  if (merged.empty()) throw InvalidAnswer("no valid answer after normalization");
  std::vector<AnswerCount> out;
  out.reserve(merged.size());
  for (const auto& [answer, count] : merged) {
    out.push_back({answer, static_cast<std::uint32_t>(count)});
  }
  return out;  // sorted by answer via std::map
}

Sample make_sample(std::string id,
                   std::string question_text,
                   std::vector<std::string> object_labels,
                   std::vector<AnswerCount> answers) {
  Sample s;
  s.id = std::move(id);
  s.question_text = std::move(question_text);
  std::sort(object_labels.begin(), object_labels.end());
  object_labels.erase(std::unique(object_labels.begin(), object_labels.end()),
                      object_labels.end());
  s.object_labels = std::move(object_labels);
  s.answers = normalize_answers(answers);
  s.primary_answer = compute_primary_answer(s.answers);
  return s;
}

}  // namespace shortcut_splits
