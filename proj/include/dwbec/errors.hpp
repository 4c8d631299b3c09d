#pragma once

#include <stdexcept>
#include <string>

namespace dwbec {

// Exit-code mapping used by the CLI: domain 2, numerical 3, io 4.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dwbec
