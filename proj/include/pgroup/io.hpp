#pragma once

// Plain-text serialization of forms and groups.
//
//   p dimV dimW
//   i j w_1 ... w_dimW      one line per nonzero B(e_i, e_j), i < j
//   cocycle                 optional (groups only)
//   i j w_1 ... w_dimW      f(e_i, e_j) for i >= j
//
// '#' starts a comment; blank lines are ignored.

#include <stdexcept>
#include <string>
#include <string_view>

#include "pgroup/commutator_form.hpp"
#include "pgroup/group_model.hpp"

namespace pgroup {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

std::string write_form(const AlternatingMap& B);
AlternatingMap parse_form(std::string_view text);

/// The cocycle section is written only when it differs from the default.
std::string write_group(const GroupModel& G);
/// Without a cocycle section the default cocycle is used. A form-only file is
/// therefore also a valid group file.
GroupModel parse_group(std::string_view text);

/// Throws std::runtime_error if the file cannot be read or written.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

/// Row-major integer rendering, one row per line, entries separated by spaces.
std::string format_matrix(const Mat& m);

}  // namespace pgroup
