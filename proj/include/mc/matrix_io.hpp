#pragma once

#include <iosfwd>
#include <string>

#include "mc/matrix.hpp"

namespace mc {

// Matrix file format (text, UTF-8, LF newlines):
//   - lines starting with '#' are comments;
//   - first non-comment line: "p m n" (space-separated decimal);
//   - then m lines, each with n tokens: a decimal in [0, p-1] or '*' for a
//     missing entry.
// Parse failures throw parse_error with 1-based line/column.
IncompleteMatrix parse_matrix(std::istream& in);
IncompleteMatrix parse_matrix_string(const std::string& text);
IncompleteMatrix load_matrix(const std::string& path);

void write_matrix(std::ostream& out, const IncompleteMatrix& m);
void write_matrix(std::ostream& out, const CompleteMatrix& m);
std::string matrix_to_string(const IncompleteMatrix& m);
std::string matrix_to_string(const CompleteMatrix& m);
void save_matrix(const std::string& path, const IncompleteMatrix& m);

} // namespace mc
