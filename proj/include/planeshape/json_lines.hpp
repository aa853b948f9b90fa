#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace planeshape {

// Source line of every value in a JSON text, keyed by JSON pointer ("" for the
// root, "/maps/0/a", ...). The text is assumed to be well formed.
class JsonLineIndex {
 public:
  explicit JsonLineIndex(std::string_view text);

  // Line of the value at `pointer`, else of its nearest indexed ancestor; 0 if none.
  int line_of(const std::string& pointer) const;

 private:
  std::map<std::string, int> lines_;
};

// 1-based line containing byte `offset`.
int line_at_offset(std::string_view text, std::size_t offset);

}  // namespace planeshape
