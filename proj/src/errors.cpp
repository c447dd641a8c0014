#include "secgame/errors.hpp"

#include <utility>

namespace secgame {
namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "validation failed";
  for (const auto& issue : issues) {
    out += "\n  - ";
    out += issue;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace secgame
