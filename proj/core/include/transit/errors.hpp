#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace transit {

// Base for every error raised by the toolkit. CLI maps Error subclasses to
// exit code 1 and UsageError to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CoNLL-U input. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Dependency graph is not a tree (self-loop, cycle, dangling head, no root).
class StructureError : public Error {
 public:
  using Error::Error;
};

// Aggregates every violation found while loading a corpus or lexicon.
class LoadError : public Error {
 public:
  explicit LoadError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// A value outside its admissible range (score, tone component, strength).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (non-verb passed where a verb is
// required, feature rows missing for a sentence, width mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class LayoutError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace transit
