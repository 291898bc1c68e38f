#include "pistat/error.hpp"

namespace pistat {

ParseError::ParseError(std::string file, std::size_t line, const std::string& what)
    : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)), line_(line) {}

namespace {

std::string join_ids(const std::string& what, const std::vector<std::string>& ids) {
  if (ids.empty()) return what;
  std::string out = what + ":";
  for (const auto& id : ids) out += " " + id;
  return out;
}

}  // namespace

ValidationError::ValidationError(const std::string& what, std::vector<std::string> offending_ids)
    : Error(join_ids(what, offending_ids)), ids_(std::move(offending_ids)) {}

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what), path_(path) {}

}  // namespace pistat
