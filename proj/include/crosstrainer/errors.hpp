#pragma once

#include <stdexcept>
#include <string>

namespace crosstrainer {

// Invalid arguments, shape mismatches, out-of-range parameters.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed file contents (messages carry "path:line:" where known).
struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failures: missing files, unwritable outputs.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crosstrainer
