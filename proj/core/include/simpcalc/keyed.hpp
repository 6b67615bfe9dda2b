#pragma once

// Builds a presheaf from cells described by integer keys, with the structure
// maps given as functions on keys. Used by every construction whose cells
// have a natural combinatorial description (nerves, joins, slices, functor
// categories).

#include <functional>
#include <string>
#include <vector>

#include "simpcalc/presheaf.hpp"

namespace simpcalc {

using CellKey = std::vector<int>;

struct KeyedSpec {
    Shape shape = Shape::Simplex;
    Bound bound{0, 0};
    // Per level index; keys must be distinct within a level. Cell order is kept.
    std::vector<std::vector<CellKey>> cells;
    std::function<std::string(int level, const CellKey&)> name;
    std::function<CellKey(int level, int dir, int i, const CellKey&)> face;
    std::function<CellKey(int level, int dir, int i, const CellKey&)> degeneracy;
    std::function<bool(int level, const CellKey&)> marked; // optional
    CoskCertificate cosk{};
    CoskCertificate skel{};
};

// Throws Error when a structure map leaves the listed cells.
[[nodiscard]] Presheaf build_keyed(const KeyedSpec& spec);

} // namespace simpcalc
