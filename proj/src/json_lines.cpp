#include "planeshape/json_lines.hpp"

#include <algorithm>

namespace planeshape {

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

class Scanner {
 public:
  Scanner(std::string_view text, std::map<std::string, int>& lines) : s_(text), lines_(lines) {}

  void run() {
    skip_ws();
    if (pos_ < s_.size()) value("");
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') ++line_;
      else if (c != ' ' && c != '\t' && c != '\r') break;
      ++pos_;
    }
  }

  std::string string_literal() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
        const char e = s_[pos_ + 1];
        // \uXXXX keeps its raw spelling; keys with escapes are rare in configs
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e == 'u' ? 'u' : e;
        pos_ += 2;
        continue;
      }
      out += s_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& ptr) {
    skip_ws();
    if (pos_ >= s_.size()) return;
    lines_[ptr] = line_;
    const char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] != '}') {
        if (s_[pos_] == ',') {
          ++pos_;
          skip_ws();
          continue;
        }
        const std::string key = string_literal();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ':') ++pos_;
        value(ptr + "/" + escape_token(key));
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      int k = 0;
      while (pos_ < s_.size() && s_[pos_] != ']') {
        if (s_[pos_] == ',') {
          ++pos_;
          skip_ws();
          continue;
        }
        value(ptr + "/" + std::to_string(k++));
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_literal();
    } else {
      while (pos_ < s_.size() && std::string_view(",]} \t\r\n").find(s_[pos_]) == std::string_view::npos) ++pos_;
    }
  }

  std::string_view s_;
  std::map<std::string, int>& lines_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

JsonLineIndex::JsonLineIndex(std::string_view text) { Scanner(text, lines_).run(); }

int JsonLineIndex::line_of(const std::string& pointer) const {
  std::string p = pointer;
  for (;;) {
    const auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    if (p.empty()) return 0;
    p.erase(p.rfind('/'));
  }
}

int line_at_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace planeshape
