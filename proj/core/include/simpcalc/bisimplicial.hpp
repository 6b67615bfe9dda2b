#pragma once

// Checkers for fibrations of bisimplicial sets X_{k,l}: direction 0 (k) is
// the categorical direction, direction 1 (l) the space direction. A base
// simplicial set S is viewed as the bisimplicial set pt ⊠ S, S_{kl} = S_l.
//
// Homotopical conditions (Kan equivalences of mapping spaces, homotopy
// pullbacks) are decided only where the spaces involved are discrete or are
// verified Kan complexes with a coskeletality certificate ≤ 2, so that
// π0 and the fundamental groupoid determine them. Elsewhere the verdict is
// inconclusive.

#include <string>

#include "simpcalc/lifting.hpp"
#include "simpcalc/presheaf.hpp"
#include "simpcalc/report.hpp"

namespace simpcalc {

struct DiscreteRegimeFlag {
    bool verified = false;
    // "discrete", "1-type", or the reason the scan failed.
    std::string regime;
};

// Every column l ↦ X_{k,l} is constant (its degeneracies from l = 0 are
// bijections) within the stored bound.
[[nodiscard]] DiscreteRegimeFlag discreteness_scan(const Presheaf& x);

// True when every direction-0 operator is a bijection, i.e. x ≅ pt ⊠ S.
[[nodiscard]] bool constant_in_first_direction(const Presheaf& x);

// Y_{k,•} → X_{k,•} of a bisimplicial map.
[[nodiscard]] PresheafMap column_map(const PresheafMap& p, int k);

// For every k, Y_{k,•} → S is a right fibration. X must be constant in the
// first direction.
[[nodiscard]] CheckReport right_fib_rows(const PresheafMap& p, int cap = default_lift_cap);

// R_n → X_n ×_{X_0} R_0 (along the last vertex) is a bijection, for R and X
// discrete in the space direction.
[[nodiscard]] CheckReport hopullback_discrete(const PresheafMap& p, int n);

// Whether a map of simplicial sets is a Kan equivalence: π0 must be a
// bijection; then discrete spaces are done, and Kan complexes with
// certificate ≤ 2 are compared on their fundamental groupoids. Anything else
// is inconclusive.
[[nodiscard]] CheckReport space_equivalence(const PresheafMap& f, int cap = default_lift_cap);

struct CsoOptions {
    // K ranges over the simplices Δ[j] → S whose Δ[j] has at most this many
    // nondegenerate cells.
    int max_cylinder_cells = 8;
    int cap = default_lift_cap;
};

// Segal maps G(n) ⊂ F(n) (2 ≤ n ≤ bound) and completeness F(0) → E(1): the
// restriction Map(B, w) → Map(A, w) must be a Kan equivalence.
[[nodiscard]] CheckReport segal_completeness_check(const PresheafPtr& w, const CsoOptions& options = {});

// T → pt ⊠ S is a complete Segal object in right fibrations over S: the
// columns are right fibrations, and Map_{/S}(B × K, T) → Map_{/S}(A × K, T)
// is a Kan equivalence for the Segal and completeness maps A → B and the
// cylinders K within the budget.
[[nodiscard]] CheckReport is_cartesian_fibration_bisimplicial(const PresheafMap& p, const CsoOptions& options = {});

// T with a second filler glued onto the spine of its first (n, 0) cell,
// breaking the Segal condition at n.
[[nodiscard]] Presheaf inject_segal_violation(const PresheafPtr& t, int n);

} // namespace simpcalc
