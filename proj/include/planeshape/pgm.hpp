#pragma once

#include <string>
#include <string_view>

#include "planeshape/bit_grid.hpp"

namespace planeshape {

// Binary PGM (P5, maxval 255): 0 empty, 255 occupied, top row first. The
// geometry travels in a comment line `# bounds=x0,y0,x1,y1 res=R`.
std::string encode_pgm(const BitGrid& g);

// Pixels >= 128 read as occupied. Without a bounds comment the grid spans
// [0, width] x [0, height] at resolution 1.
BitGrid decode_pgm(std::string_view bytes);

BitGrid read_pgm(const std::string& path);
void write_pgm(const std::string& path, const BitGrid& g);

}  // namespace planeshape
