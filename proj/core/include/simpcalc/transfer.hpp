#pragma once

// The transfer adjunctions between simplicial and bisimplicial objects and
// their marked variants:
//
//   p₁* ⊣ i₁*        (p₁*S)_{k,l} = S_k,   (i₁*X)_k = X_{k,0}
//   t_! ⊣ t^!        t([n],[m]) = Δ[n] × J[m]
//   (p⁺)* ⊣ (i⁺)*    marked analogues of p₁*, i₁*
//   (t⁺)_! ⊣ (t⁺)^!  τ(n) × Δ[m]♯ with τ(n) = Δ[n]♭ and τ(1⁺) = Δ[1]♯
//
// plus the levelwise prolongations of flat and forget, and checks of the
// hom bijections and of the composite identities t_!p₁* ≅ id.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simpcalc/mapping.hpp"
#include "simpcalc/presheaf.hpp"
#include "simpcalc/report.hpp"

namespace simpcalc {

enum class TransferTag {
    P1Star,
    I1Star,
    TLower,
    TUpper,
    PPlusStar,
    IPlusStar,
    TauPlusLower,
    TauPlusUpper,
    FlatStarProlong,
    ForgetProlong
};

// CLI spellings: p1* i1* t! t^! p+* i+* t+! t+^! flat forget.
[[nodiscard]] std::string_view to_string(TransferTag tag);
[[nodiscard]] TransferTag transfer_tag_from_string(std::string_view text);

// The cosimplicial objects t(n, m) = Δ[n] × J[m] (unmarked) or
// τ(n) × Δ[m]♯ (marked) at a fixed bound, with their operator maps.
class TransferModels {
public:
    TransferModels(bool marked, int bound);

    [[nodiscard]] bool marked() const noexcept { return marked_; }
    [[nodiscard]] int bound() const noexcept { return bound_; }
    [[nodiscard]] PresheafPtr object(int n, int m);
    // τ(1⁺) × Δ[m]♯; marked models only.
    [[nodiscard]] PresheafPtr plus(int m);
    // Into object(n, m) from the object one lower (coface) or one higher
    // (codegeneracy) in direction dir.
    [[nodiscard]] const PresheafMap& coface(int n, int m, int dir, int i);
    [[nodiscard]] const PresheafMap& codegeneracy(int n, int m, int dir, int i);
    [[nodiscard]] CoFamily family();

private:
    PresheafPtr factor(int which, int n);
    const PresheafMap& operator_map(int n, int m, int dir, int i, bool degeneracy);

    bool marked_;
    int bound_;
    std::array<std::map<int, PresheafPtr>, 2> factors_;
    std::map<std::pair<int, int>, PresheafPtr> objects_;
    std::map<int, PresheafPtr> plus_;
    std::map<std::array<int, 5>, PresheafMap> maps_;
};

// p₁*S = S ⊠ pt with m_bound as the second bound; markings of S are kept.
[[nodiscard]] Presheaf p1_star(const Presheaf& s, int m_bound);
// i₁*X = X_{•,0}, with markings for marked X.
[[nodiscard]] Presheaf i1_star(const Presheaf& x);

struct LowerExtension {
    PresheafPtr object;
    std::shared_ptr<TransferModels> models;
    // For each cell x of X (by level and cell), the diagram copy of t(x)
    // and its coprojection into the colimit.
    std::vector<std::vector<int>> copy_of;
    std::vector<Components> coprojections;
    bool exact = true;
    std::vector<std::string> notes;

    // ι_x: t(n, m) → t_!X for the cell x of X at level idx.
    [[nodiscard]] const Components& insertion(int idx, int cell) const
    {
        return coprojections[copy_of[idx][cell]];
    }
};

// t_!X (or (t⁺)_!X for marked X) computed through `bound` as the colimit of
// t(n, m) over the cells of X. Exact when X has no nondegenerate cells above
// its own bound.
[[nodiscard]] LowerExtension t_lower(const PresheafPtr& x, int bound);

// t^!S (or (t⁺)^!S for marked S) through out_bound. S must carry a
// coskeletality certificate; the output inherits it in both directions.
[[nodiscard]] HomObject t_upper(const PresheafPtr& s, Bound out_bound);

struct TransferResult {
    Presheaf object;
    bool exact = true;
    std::vector<std::string> notes;
};

// Applies a transfer functor. The bound defaults to the input's own.
[[nodiscard]] TransferResult apply_transfer(TransferTag tag, const PresheafPtr& x, std::optional<Bound> bound = std::nullopt);

enum class AdjunctionPair { P1I1, TLowerUpper, PPlusIPlus, TauPlus, FlatForget, ForgetSharp };

[[nodiscard]] std::string_view to_string(AdjunctionPair pair);
[[nodiscard]] AdjunctionPair adjunction_from_string(std::string_view text);

struct AdjunctionCheck {
    CheckReport report;
    std::size_t left_size = 0;  // |Hom(L x, y)|
    std::size_t right_size = 0; // |Hom(x, R y)|
};

// Enumerates Hom(L x, y) and Hom(x, R y), transposes each element across the
// adjunction and checks the two transposes are mutually inverse bijections.
[[nodiscard]] AdjunctionCheck verify_adjunction(AdjunctionPair pair, const PresheafPtr& x, const PresheafPtr& y);

// Unit S → t_!p₁*S (or its marked analogue), sending s ∈ S_n to the cell
// (id_[n], 0) of the copy of t(n, 0) indexed by s.
[[nodiscard]] PresheafMap composite_unit(const PresheafPtr& s, int m_bound = 1);

// For each simplicial object: t_!p₁*S ≅ S via composite_unit, the marked
// composite on S♭ and S♯ (and on S itself when marked), and
// p₁*(S)♭ = (p⁺)*(S♭).
[[nodiscard]] CheckReport composite_identity_suite(const std::vector<PresheafPtr>& corpus);

} // namespace simpcalc
