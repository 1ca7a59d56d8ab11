#pragma once

#include <stdexcept>
#include <string>

namespace graphpriv {

// Invalid parameters, malformed experiment configs, bad CLI arguments.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed input data (edge lists, mappings, stores).
struct data_error : std::runtime_error {
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace graphpriv
