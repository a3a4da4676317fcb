#pragma once

#include <stdexcept>
#include <string>

namespace mdlcausa {

// Precondition or dimension violation on a public operation.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed tabular input. Messages name the offending line/column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a configured computational limit (NML tables, DAG search).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mdlcausa
