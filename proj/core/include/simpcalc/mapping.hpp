#pragma once

// Mapping spaces, exponentials and matching objects: presheaves whose cells
// are maps X × C(k, l) → Y for a cosimplicial family C, with structure maps
// given by precomposition.

#include <array>
#include <functional>
#include <vector>

#include "simpcalc/hom.hpp"
#include "simpcalc/presheaf.hpp"

namespace simpcalc {

// C(k, l) together with its operator maps. coface(k, l, dir, i) goes from the
// object one lower in dir to C(k, l); codegeneracy(k, l, dir, i) goes from the
// object one higher in dir to C(k, l).
struct CoFamily {
    std::function<PresheafPtr(int, int)> object;
    std::function<PresheafMap(int, int, int, int)> coface;
    std::function<PresheafMap(int, int, int, int)> codegeneracy;
    // Direction of the target that each output direction varies; a
    // coskeletality certificate of Y in that direction passes to the output.
    std::array<int, 2> target_direction{0, 1};
};

struct HomObject {
    Presheaf object;
    // elements[level][cell] is the map X × C(level) → Y of that cell.
    std::vector<std::vector<Components>> elements;
    PresheafPtr x; // X cut to the working bound
    PresheafPtr y; // Y cut to the working bound
    std::vector<PresheafPtr> cylinders; // X × C(level)
    Exactness exactness;
};

// The presheaf of maps X × C(k, l) → Y, of shape out_shape and bound out_bound.
// Extra constraints (for example maps over a base) apply to every level and
// are passed through from make_constraints(level, cylinder).
[[nodiscard]] HomObject hom_object(const PresheafPtr& x, const PresheafPtr& y, Shape out_shape, Bound out_bound,
                                   const CoFamily& family,
                                   const std::function<HomConstraints(int, const PresheafPtr&)>& make_constraints = {});

// Δ[n], Δ[n]♯, pt⊠Δ[n] or (pt⊠Δ[n])♯ according to the shape, built at bound b.
[[nodiscard]] CoFamily space_family(Shape shape, Bound b);
// F(k) × (pt⊠Δ[l]) = Δ[k]⊠Δ[l].
[[nodiscard]] CoFamily box_family(Bound b);

// Map(X, Y)_n = Hom(X × Δ[n], Y); the cylinder is sharp for marked shapes and
// constant in the first direction for bisimplicial shapes.
[[nodiscard]] HomObject mapping_space(const PresheafPtr& x, const PresheafPtr& y, int n_max);

// (Y^X)_{k,n} = Hom(X × F(k) × Δ[n], Y).
[[nodiscard]] HomObject exponential(const PresheafPtr& x, const PresheafPtr& y, Bound out_bound);

// Evaluation Y^X × X → Y of an exponential computed by exponential().
[[nodiscard]] PresheafMap evaluation(const HomObject& exp);

struct MatchingResult {
    Presheaf column;    // X_{n,•}
    HomObject matching; // M_n X = Map(∂F(n), X)
    Components map;     // X_{n,m} → (M_n X)_m, per level m
};

[[nodiscard]] MatchingResult matching_object(const PresheafPtr& x, int n);

struct RelativeMatchingResult {
    Presheaf fiber_product; // M_n Y ×_{M_n X} X_n
    Components map;         // Y_n → fiber product
    bool bijective = false;
};

// Relative matching map of p: Y → X at n.
[[nodiscard]] RelativeMatchingResult relative_matching(const PresheafMap& p, int n);

} // namespace simpcalc
