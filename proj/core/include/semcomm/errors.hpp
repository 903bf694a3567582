#pragma once

#include <stdexcept>
#include <string>

namespace semcomm {

// Bad configuration, malformed input, unknown identifiers, framing
// violations. Mapped to process exit code 2 by the CLI.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite intermediates, impossible observations (zero total
// likelihood), numerical breakdown. Mapped to exit code 3 by the CLI.
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace semcomm
