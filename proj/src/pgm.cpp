#include "planeshape/pgm.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "planeshape/errors.hpp"

namespace planeshape {
namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Cursor {
  explicit Cursor(std::string_view bytes) : s(bytes) {}

  std::string_view s;
  std::size_t pos = 0;
  std::string comment;  // last bounds comment seen

  void skip_space_and_comments() {
    while (pos < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[pos]))) {
        ++pos;
      } else if (s[pos] == '#') {
        const std::size_t end = s.find('\n', pos);
        const std::string_view line = s.substr(pos, end == std::string_view::npos ? end : end - pos);
        if (line.find("bounds=") != std::string_view::npos) comment = std::string(line);
        pos = end == std::string_view::npos ? s.size() : end + 1;
      } else {
        break;
      }
    }
  }

  long number(const char* what) {
    skip_space_and_comments();
    long v = 0;
    bool any = false;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos++] - '0');
      any = true;
      if (v > 1'000'000'000) throw IoError(std::string("PGM ") + what + " too large");
    }
    if (!any) throw IoError(std::string("PGM header: expected ") + what);
    return v;
  }
};

}  // namespace

std::string encode_pgm(const BitGrid& g) {
  const Rect& b = g.geometry().bounds();
  std::string out = "P5\n# bounds=" + fmt17(b.x0) + "," + fmt17(b.y0) + "," + fmt17(b.x1) + "," + fmt17(b.y1) +
                    " res=" + fmt17(g.geometry().resolution()) + "\n" + std::to_string(g.width()) + " " +
                    std::to_string(g.height()) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + g.geometry().cell_count());
  std::vector<std::uint8_t> row(static_cast<std::size_t>(g.width()));
  for (int j = 0; j < g.height(); ++j) {
    g.unpack_row(j, row.data());
    char* dst = out.data() + header + static_cast<std::size_t>(g.height() - 1 - j) * g.width();
    for (int i = 0; i < g.width(); ++i) dst[i] = row[i] ? static_cast<char>(255) : 0;
  }
  return out;
}

BitGrid decode_pgm(std::string_view bytes) {
  Cursor c(bytes);
  if (bytes.substr(0, 2) != "P5") throw IoError("not a binary PGM (missing P5 magic)");
  c.pos = 2;
  const long w = c.number("width");
  const long h = c.number("height");
  const long maxval = c.number("maxval");
  if (w < 1 || h < 1) throw IoError("PGM dimensions must be positive");
  if (maxval != 255) throw IoError("only 8-bit PGM (maxval 255) is supported");
  if (c.pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[c.pos])))
    throw IoError("PGM header not terminated");
  ++c.pos;
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() - c.pos < need) throw IoError("PGM pixel data truncated");

  Rect bounds{0.0, 0.0, static_cast<double>(w), static_cast<double>(h)};
  double res = 1.0;
  if (!c.comment.empty()) {
    std::string text = c.comment;
    for (char& ch : text)
      if (ch == ',' || ch == '=') ch = ' ';
    std::istringstream in(text);
    std::string hash, key_bounds, key_res;
    if (!(in >> hash >> key_bounds >> bounds.x0 >> bounds.y0 >> bounds.x1 >> bounds.y1 >> key_res >> res) ||
        key_bounds != "bounds" || key_res != "res")
      throw IoError("malformed PGM bounds comment: " + c.comment);
  }
  GridGeometry geometry(bounds, res);
  if (geometry.width() != w || geometry.height() != h)
    throw IoError("PGM size " + std::to_string(w) + "x" + std::to_string(h) +
                  " disagrees with its bounds comment");
  BitGrid g(geometry);
  const auto* px = reinterpret_cast<const unsigned char*>(bytes.data() + c.pos);
  for (long r = 0; r < h; ++r) {
    const int j = static_cast<int>(h - 1 - r);
    for (long i = 0; i < w; ++i)
      if (px[r * w + i] >= 128) g.set(static_cast<int>(i), j);
  }
  return g;
}

BitGrid read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return decode_pgm(bytes);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_pgm(const std::string& path, const BitGrid& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  const std::string bytes = encode_pgm(g);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace planeshape
