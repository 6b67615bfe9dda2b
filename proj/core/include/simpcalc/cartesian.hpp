#pragma once

// Joins, slices over a vertex or an edge, p-Cartesian edges and Cartesian
// fibrations of simplicial sets, and the natural marking of a Cartesian
// fibration.

#include <vector>

#include "simpcalc/presheaf.hpp"
#include "simpcalc/report.hpp"

namespace simpcalc {

// (a⋆b)_n = a_n ⊔ b_n ⊔ ⨆_{i+j=n-1} a_i × b_j. Level n needs a_n and b_n, so
// the result is computed through the smaller of the two bounds.
[[nodiscard]] Presheaf join(const Presheaf& a, const Presheaf& b);

// T_{/q} for q a vertex (k = 0) or an edge (k = 1) of T: the n-cells are the
// (n+k+1)-cells of T whose last k-dimensional face is q, i.e. the maps
// Δ[n] ⋆ Δ[k] → T restricting to q. Computed through bound(T) − k − 1.
struct SliceObject {
    PresheafPtr object;
    PresheafPtr total;
    int k = 0;
    int base_cell = 0;
    std::vector<std::vector<int>> cell_of;  // per slice level: the cell of T
    std::vector<std::vector<int>> index_of; // per slice level: T cell -> slice cell or -1
};

[[nodiscard]] SliceObject slice(const PresheafPtr& t, int k, int cell);

// T_{/f} → T_{/y} for an edge f with target y, restricting along {1} ⊂ Δ[1].
[[nodiscard]] PresheafMap slice_restriction(const SliceObject& over_edge, const SliceObject& over_target);
// p_*: T_{/q} → S_{/p(q)}.
[[nodiscard]] PresheafMap slice_map(const PresheafMap& p, const SliceObject& t_slice, const SliceObject& s_slice);

inline constexpr int default_cartesian_cap = 2;

// f is p-Cartesian when T_{/f} → S_{/p(f)} ×_{S_{/p(y)}} T_{/y} has the right
// lifting property against every ∂Δ[n] ⊂ Δ[n], n ≤ cap. Throws when p fails
// the inner-fibration check.
[[nodiscard]] CheckReport is_p_cartesian(const PresheafMap& p, int edge, int cap = default_cartesian_cap);

// Inner fibration, and every edge of S has a p-Cartesian lift ending at each
// vertex over its target.
[[nodiscard]] CheckReport is_cartesian_fibration(const PresheafMap& p, int cap = default_cartesian_cap);

struct NaturalMarking {
    PresheafPtr marked; // T with its p-Cartesian edges marked
    PresheafMap to_base; // into S♯
    std::vector<int> cartesian;
    CheckReport report;
};

// Throws when p is found not to be a Cartesian fibration.
[[nodiscard]] NaturalMarking natural_marking(const PresheafMap& p, int cap = default_cartesian_cap);

} // namespace simpcalc
