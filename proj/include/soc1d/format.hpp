#pragma once

#include <string>

namespace soc1d {

// Fixed 17-significant-digit formatting ('.' decimal, no locale) used by every
// CSV/JSON emitter so identical inputs give byte-identical outputs.
std::string fmt_g17(double v);

}  // namespace soc1d
