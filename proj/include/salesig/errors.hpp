#pragma once

#include <stdexcept>
#include <string>

namespace salesig {

// Broad failure families. The CLI maps these onto process exit codes.
enum class ErrorKind {
  Config,       // bad rule/band/policy/grid files, inconsistent options
  Schema,       // CSV header or JSON document does not match the schema
  Io,           // unreadable input, unwritable output
  Persistence,  // model/stats file version or structure problems
  Data,         // contract violations in the data itself (parse, bands, labels)
  Numeric,      // non-finite values produced during optimization
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& w) : Error(ErrorKind::Schema, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

struct PersistenceError : Error {
  explicit PersistenceError(const std::string& w)
      : Error(ErrorKind::Persistence, w) {}
};

struct DataError : Error {
  explicit DataError(const std::string& w) : Error(ErrorKind::Data, w) {}
};

// A numeric cell that does not parse; carries the 1-based file row.
struct ParseError : DataError {
  ParseError(std::size_t row, const std::string& w)
      : DataError("row " + std::to_string(row) + ": " + w), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

struct BandError : DataError {
  explicit BandError(const std::string& w) : DataError(w) {}
};

struct ContractError : DataError {
  explicit ContractError(const std::string& w) : DataError(w) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};

// 0 success, 2 configuration/schema, 3 data contract, 4 numeric failure.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Data:
      return 3;
    case ErrorKind::Numeric:
      return 4;
    default:
      return 2;
  }
}

}  // namespace salesig
