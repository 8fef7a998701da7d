#pragma once

#include "hyperpart/partition.hpp"

#include <string>

namespace hyperpart {

// Static SVG 1.1 picture of the truncated enumeration: one dot per partition
// point (dot radius grows with the level) and one circle of radius c4 per
// translated disk, in complex-plane user units with the imaginary axis up.
// The viewBox is fitted to the drawn content. Numbers are printed with six
// fixed decimals, so identical inputs give byte-identical output. An empty
// truncation still emits both (empty) groups.
std::string render_svg(const Partition& part, const Truncation& t,
                       double width_px = 800.0);

} // namespace hyperpart
