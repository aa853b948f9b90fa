#pragma once

#include <string>
#include <vector>

#include "planeshape/geometry.hpp"
#include "planeshape/ifs.hpp"

namespace planeshape {

// Six similarities: three at ratio 19/30, three at ratio 1/2.
IFSystem example41_ifs();
IFSystem example41_first3();  // ratio 19/30 members
IFSystem example41_last3();   // ratio 1/2 members; the Sierpinski gasket
// Four maps at ratio 1/3 on the unit segment.
IFSystem koch_ifs();

// A built-in system with a working frame and an invariant seed inside it.
struct BuiltinIfs {
  IFSystem system;
  Rect bounds;
  Region seed;
};

// example41, example41-first3, example41-last3, koch. Throws ConfigError.
BuiltinIfs builtin_ifs(const std::string& name);
std::vector<std::string> builtin_ifs_names();

}  // namespace planeshape
