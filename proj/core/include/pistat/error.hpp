#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pistat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the file and 1-based line of the failure.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// The corpus as a whole is unusable (dangling references, empty tables).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::vector<std::string> offending_ids = {});

  const std::vector<std::string>& offending_ids() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

/// Bad command-line or config input.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what);

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// An operation was asked about a year outside the range where it is defined
/// (e.g. researcher internationality before complete author lists exist).
class EraError : public Error {
 public:
  using Error::Error;
};

class StatsError : public Error {
 public:
  using Error::Error;
};

}  // namespace pistat
