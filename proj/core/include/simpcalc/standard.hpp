#pragma once

// Named objects: simplices, boundaries, horns, spines, groupoid nerves J[l],
// the bisimplicial generators F(n), E(n), G(n), ∂F(n), L(n)_l, the column
// objects pt⊠Δ[l], and the marked objects τ(o).
//
// Cells of the simplicial ones are vertex sequences named by their digits,
// so "012" is the top cell of Δ[2] and "010" a 2-cell of J[1]. Bisimplicial
// generators are box products with the point and carry names "seq|0…0".

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "simpcalc/presheaf.hpp"

namespace simpcalc {

struct StandardObjectSpec {
    enum class Kind {
        Simplex,
        Boundary,
        Horn,
        Spine,
        GroupoidNerve,
        FGen,
        EGen,
        GGen,
        FBoundary,
        FHorn,
        ConstCol,
        TauObj,
        MarkedGen
    };
    Kind kind = Kind::Simplex;
    int n = 0;
    int i = 0;         // horn index
    bool plus = false; // the object [1⁺] for TauObj / MarkedGen

    [[nodiscard]] bool bisimplicial() const noexcept;
    [[nodiscard]] bool marked() const noexcept;
    [[nodiscard]] std::string describe() const;
};

[[nodiscard]] StandardObjectSpec parse_spec(const std::string& kind, const std::vector<std::string>& params);

// Maximum vertex label; sequence names use one digit per vertex.
inline constexpr int max_standard_n = 9;

[[nodiscard]] Presheaf build(const StandardObjectSpec& spec, Bound bound);
[[nodiscard]] Presheaf build(const StandardObjectSpec& spec, int bound);

// Shorthands.
[[nodiscard]] Presheaf simplex(int n, int bound);
[[nodiscard]] Presheaf boundary(int n, int bound);
[[nodiscard]] Presheaf horn(int n, int i, int bound);
[[nodiscard]] Presheaf spine(int n, int bound);
[[nodiscard]] Presheaf groupoid_nerve(int l, int bound);
[[nodiscard]] Presheaf point(int bound);
[[nodiscard]] Presheaf point2(Bound bound);

// The simplicial set of vertex sequences over {0..n} passing keep, closed
// under faces and degeneracies by assumption.
[[nodiscard]] Presheaf sequence_presheaf(int n, int bound, bool monotone,
                                         const std::function<bool(const std::vector<int>&)>& keep);

// Applies a vertex map to the digit part `part` of every cell name (parts are
// separated by '|') and looks the result up in the target.
[[nodiscard]] PresheafMap sequence_map(const PresheafPtr& source, const PresheafPtr& target,
                                       const std::vector<int>& vertex_map, int part = 0);

// One of the generating inclusions. vertex selects the point for F(0)→F(n),
// F(0)→E(1) and Δ[0]→Δ[n]; by default the last vertex of F(n) and Δ[n] and
// vertex 0 of E(1).
[[nodiscard]] PresheafMap canonical_inclusion(const StandardObjectSpec& sub, const StandardObjectSpec& sup,
                                              Bound bound, std::optional<int> vertex = std::nullopt);

// Sets the coskeletality certificate after verifying it at the stored bound.
[[nodiscard]] Presheaf certify_coskeletal(Presheaf x, CoskCertificate c);

} // namespace simpcalc
