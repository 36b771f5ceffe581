#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dialogic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An annotation or corpus entry references a domain/slot/act the ontology
/// does not allow.
class OntologyError : public Error {
 public:
  using Error::Error;
};

/// A JSON document does not follow the expected schema. `path` is a
/// JSON-pointer-like location of the offending node.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Annotation text could not be parsed. `column` is a 0-based offset into
/// the input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& message)
      : Error("column " + std::to_string(column) + ": " + message), column_(column), message_(message) {}
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t column_;
  std::string message_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A prompt's estimated token count exceeds the configured budget.
class ContextBudgetError : public Error {
 public:
  ContextBudgetError(std::size_t estimated, std::size_t budget)
      : Error("prompt needs ~" + std::to_string(estimated) + " tokens, budget is " + std::to_string(budget)),
        estimated_(estimated),
        budget_(budget) {}
  std::size_t estimated() const { return estimated_; }
  std::size_t budget() const { return budget_; }

 private:
  std::size_t estimated_;
  std::size_t budget_;
};

}  // namespace dialogic
