#include "soc1d/format.hpp"

#include <cstdio>

namespace soc1d {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace soc1d
