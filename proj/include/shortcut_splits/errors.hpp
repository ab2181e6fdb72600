#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shortcut_splits {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvalidAnswer : Error {
  using Error::Error;
};
struct InvalidConceptPart : Error {
  using Error::Error;
};
struct DuplicateId : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};
struct JoinError : Error {
  using Error::Error;
};
struct EmptyCorpus : Error {
  using Error::Error;
};
struct UnknownSymbol : Error {
  using Error::Error;
};
struct InvalidRatios : Error {
  using Error::Error;
};
struct MissingConcepts : Error {
  using Error::Error;
};
struct NotImbalanced : Error {
  using Error::Error;
};
struct InsufficientSamples : Error {
  using Error::Error;
};
struct InvalidConfig : Error {
  using Error::Error;
};
struct EmptySplit : Error {
  using Error::Error;
};
struct MissingSplit : Error {
  using Error::Error;
};
struct UnknownKey : Error {
  using Error::Error;
};
struct UndefinedDegree : Error {
  using Error::Error;
};

/// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line_no_(line_no) {}

  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

}  // namespace shortcut_splits
