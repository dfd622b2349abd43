#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gshift/encoder.hpp"

namespace gshift {

/// Malformed input text; line() is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Contents of a shift description file.
///
///   group: Z4 x Z2
///   gen @-1: (1,0) (2,1)
///   tap Z2 @0: 1 1        user-supplied encoder tap with its source order
///   search_cap: 12        horizon override
///
/// Symbols are tuples in the group's input coordinates; a group written with
/// one cyclic factor also accepts plain integers. '#' starts a comment.
struct ShiftSpecFile {
  GroupShift shift;
  /// User encoder, empty when the file has no tap lines.
  std::optional<Encoder> encoder;
  /// Horizon overrides by key.
  std::map<std::string, int> overrides;
};

ShiftSpecFile parse_spec_file(const std::string& text);
GroupShift parse_spec(const std::string& text);
std::string print_spec(const ShiftSpecFile& spec);

/// Horizon override keys accepted in spec files.
const std::vector<std::string>& override_keys();
/// Applies file overrides onto `hz`; "memory" is handled by the caller.
void apply_overrides(const std::map<std::string, int>& overrides, Horizons& hz);

/// Symbol or word in the alphabet's input coordinates.
std::string format_symbol(const FiniteAbelianGroup& h, const GroupElement& s);
/// "@first: s s s"; the zero word prints as "@0: " and one zero symbol.
std::string format_word(const FiniteAbelianGroup& h, const Word& w);

/// Message file: one "index: (c_1,...,c_m)" line per time index. Throws
/// ParseError for malformed lines and for coordinates outside the source.
Word parse_message(const std::string& text, const FiniteAbelianGroup& source);

/// Brute-force projection G|[0, length) by subgroup closure over packed
/// symbol codes; independent of the row-form machinery. Returns sorted codes,
/// or nullopt when the window would exceed `cap` elements.
std::optional<std::vector<std::uint64_t>> oracle_window(const GroupShift& g, int length, std::size_t cap);
/// Packed code of a word on [0, length) in input coordinates.
std::uint64_t pack_window(const FiniteAbelianGroup& h, const Word& w, int length);
/// Sorted packed codes of a window module (enumerated from its row form).
std::vector<std::uint64_t> module_codes(const FiniteAbelianGroup& h, const WindowModule& m);
/// FNV-1a digest of a sorted code list.
std::uint64_t digest_codes(const std::vector<std::uint64_t>& codes);

/// Parses argv (argv[0] is the program name), runs the command, writes the
/// report to `out` and diagnostics to `err`. Returns 0 when every check
/// passed, 1 for a negative verdict, 2 for usage or parse errors.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace gshift
