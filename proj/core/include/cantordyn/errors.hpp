#pragma once

#include <stdexcept>
#include <string>

namespace cantordyn {

/// Thrown when a construction would exceed a configured size cap.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cantordyn
