#pragma once

// Flat, sharp and forgetful functors between plain and marked presheaves.
// Markings live on the (1, l) levels; for a bisimplicial shape they are marked
// edges of the rows X_{•,l}.

#include <string>
#include <vector>

#include "simpcalc/hom.hpp"
#include "simpcalc/presheaf.hpp"

namespace simpcalc {

enum class MarkingPolicy { Flat, Sharp };

[[nodiscard]] Presheaf flat(const Presheaf& s);
[[nodiscard]] Presheaf sharp(const Presheaf& s);
[[nodiscard]] Presheaf forget(const Presheaf& m);
[[nodiscard]] Presheaf apply_policy(const Presheaf& s, MarkingPolicy policy);

// Marks the named (1, l) cells in addition to the degenerate ones. For a
// simplicial shape only column 0 exists. Throws if a name is unknown.
[[nodiscard]] Presheaf with_markings(const Presheaf& s, const std::vector<std::vector<std::string>>& marked_names);

// Marked (1, l) cells, per column.
[[nodiscard]] std::vector<std::vector<int>> marked_edges(const Presheaf& m);
[[nodiscard]] long marked_count(const Presheaf& m);

// Maps preserving markings.
[[nodiscard]] HomSet marked_hom(const PresheafPtr& m1, const PresheafPtr& m2);

} // namespace simpcalc
