#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mc {

// Violated precondition or broken internal invariant.
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A computation refused because it would exceed an enumeration budget or
// an explicit size limit.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. Line and column are 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

} // namespace mc
