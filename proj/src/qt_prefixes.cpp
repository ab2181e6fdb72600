#include <vector>

#include "shortcut_splits/ingest.hpp"

namespace shortcut_splits {

// The 65 question-type prefixes shipped with the mscoco VQA annotations.
const std::vector<std::string>& default_qt_prefixes() {
  static const std::vector<std::string> prefixes = {
      "how many",
      "is the",
      "what",
      "what color is the",
      "what is the",
      "none of the above",
      "is this",
      "is this a",
      "what is",
      "are the",
      "what kind of",
      "is there a",
      "what type of",
      "is it",
      "what are the",
      "where is the",
      "is there",
      "what color are the",
      "does the",
      "how",
      "do",
      "what is on the",
      "what does the",
      "how many people are",
      "what is in the",
      "what is this",
      "do you",
      "are there",
      "what time",
      "are they",
      "what sport is",
      "are these",
      "where are the",
      "is he",
      "what color is",
      "why",
      "which",
      "is",
      "was",
      "are",
      "what animal is",
      "is the man",
      "is the woman",
      "is this an",
      "what brand",
      "is this person",
      "what is the man",
      "has",
      "is the person",
      "how many people are in",
      "can you",
      "what is the woman",
      "what number is",
      "is that a",
      "is there an",
      "what is the person",
      "what room is",
      "what is the color of the",
      "what is the name",
      "why is the",
      "is the girl",
      "is the boy",
      "is the dog",
      "is the cat",
      "could",
  };
  return prefixes;
}

}  // namespace shortcut_splits
