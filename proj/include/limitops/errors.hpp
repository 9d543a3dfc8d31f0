#pragma once

#include <stdexcept>
#include <string>

namespace limitops
{

// Malformed or out-of-range input (bad point encoding, bad parameters, bad config).
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// A construction the library does not provide for the given space, e.g. a partition of
// unity on a graph without lattice structure.
class UnsupportedError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// An operator action would read outside the materialized window.
class TruncationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace limitops
