#pragma once

// Finite truncated presheaves over Δ, Δ×Δ, Δ⁺ and Δ⁺×Δ.
//
// A presheaf stores every cell of every level within its bound together with
// the action of the generating face and degeneracy maps. Bisimplicial shapes
// have two directions: direction 0 acts on the first index k, direction 1 on
// the second index l. Marked shapes store their [1⁺]-level as a flag on the
// cells of the (1, l) levels, which makes every stored marked object separated.

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "simpcalc/report.hpp"

namespace simpcalc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Shape { Simplex, BiSimplex, MarkedSimplex, MarkedBiSimplex };

[[nodiscard]] std::string_view to_string(Shape shape);
[[nodiscard]] Shape shape_from_string(std::string_view text);
[[nodiscard]] constexpr bool is_marked_shape(Shape s) noexcept
{
    return s == Shape::MarkedSimplex || s == Shape::MarkedBiSimplex;
}
[[nodiscard]] constexpr bool is_bisimplicial_shape(Shape s) noexcept
{
    return s == Shape::BiSimplex || s == Shape::MarkedBiSimplex;
}
[[nodiscard]] Shape unmarked(Shape s) noexcept;
[[nodiscard]] Shape with_marking(Shape s) noexcept;

using Bound = std::array<int, 2>;
using CoskCertificate = std::array<std::optional<int>, 2>;

struct DegenerateSource {
    int dir = -1;   // -1 when the cell is nondegenerate
    int index = -1; // which s_i
    int cell = -1;  // the cell it is the degeneracy of
};

struct Level {
    std::vector<std::string> names;
    // faces[dir][i][cell], degeneracies[dir][i][cell]; empty when the
    // operator leaves the truncation.
    std::array<std::vector<std::vector<int>>, 2> faces;
    std::array<std::vector<std::vector<int>>, 2> degeneracies;
    std::vector<char> marked;

    std::vector<DegenerateSource> degenerate_source;
    std::unordered_map<std::string, int> by_name;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(names.size()); }
};

class Presheaf {
public:
    Presheaf() = default;
    Presheaf(Shape shape, Bound bound);

    [[nodiscard]] Shape shape() const noexcept { return shape_; }
    [[nodiscard]] bool marked_shape() const noexcept { return is_marked_shape(shape_); }
    [[nodiscard]] bool bisimplicial() const noexcept { return is_bisimplicial_shape(shape_); }
    [[nodiscard]] const Bound& bound() const noexcept { return bound_; }
    [[nodiscard]] int dim() const noexcept { return bound_[0]; }

    [[nodiscard]] int level_count() const noexcept { return static_cast<int>(levels_.size()); }
    [[nodiscard]] int level_index(int k, int l = 0) const;
    [[nodiscard]] std::array<int, 2> coords(int index) const noexcept
    {
        return {index / (bound_[1] + 1), index % (bound_[1] + 1)};
    }
    [[nodiscard]] bool has_level(int k, int l = 0) const noexcept
    {
        return k >= 0 && l >= 0 && k <= bound_[0] && l <= bound_[1];
    }
    [[nodiscard]] const Level& level(int index) const { return levels_.at(index); }
    [[nodiscard]] Level& level(int index) { return levels_.at(index); }
    [[nodiscard]] const Level& level_at(int k, int l = 0) const { return levels_.at(level_index(k, l)); }
    [[nodiscard]] int size(int index) const { return levels_.at(index).size(); }
    [[nodiscard]] int size_at(int k, int l = 0) const { return level_at(k, l).size(); }
    [[nodiscard]] long total_cells() const;

    // Index of the level reached by a face / degeneracy in direction dir, or -1.
    [[nodiscard]] int face_level(int index, int dir) const noexcept;
    [[nodiscard]] int degeneracy_level(int index, int dir) const noexcept;
    [[nodiscard]] int directions() const noexcept { return bisimplicial() ? 2 : 1; }

    [[nodiscard]] int face(int index, int dir, int i, int cell) const
    {
        return levels_[index].faces[dir][i][cell];
    }
    [[nodiscard]] int degeneracy(int index, int dir, int i, int cell) const
    {
        return levels_[index].degeneracies[dir][i][cell];
    }
    [[nodiscard]] bool is_marked(int index, int cell) const
    {
        return marked_shape() && levels_[index].marked[cell] != 0;
    }
    [[nodiscard]] bool is_degenerate(int index, int cell) const
    {
        return levels_[index].degenerate_source[cell].dir >= 0;
    }
    [[nodiscard]] const DegenerateSource& degenerate_source(int index, int cell) const
    {
        return levels_[index].degenerate_source[cell];
    }
    [[nodiscard]] const std::string& name(int index, int cell) const { return levels_[index].names[cell]; }
    // -1 when absent.
    [[nodiscard]] int find(int index, std::string_view name) const;
    // Number of nondegenerate cells at a level.
    [[nodiscard]] int nondegenerate_count(int index) const;

    [[nodiscard]] const CoskCertificate& cosk() const noexcept { return cosk_; }
    [[nodiscard]] const CoskCertificate& skel() const noexcept { return skel_; }
    void set_cosk(int dir, std::optional<int> c) { cosk_.at(dir) = c; }
    void set_skel(int dir, std::optional<int> s) { skel_.at(dir) = s; }

    // Construction: allocate a level with n cells (names empty, maps -1).
    void resize_level(int index, int n);
    void set_face(int index, int dir, int i, int cell, int value) { levels_[index].faces[dir][i][cell] = value; }
    void set_degeneracy(int index, int dir, int i, int cell, int value)
    {
        levels_[index].degeneracies[dir][i][cell] = value;
    }
    void set_marked(int index, int cell, bool m) { levels_[index].marked[cell] = m ? 1 : 0; }

    // Computes derived tables and validates structure; throws Error.
    void finalize();
    // First violated identity, if any. Does not require finalize().
    [[nodiscard]] std::optional<std::string> check_identities() const;
    [[nodiscard]] std::optional<std::string> check_markings() const;

    // Upper bound on the operator index in direction dir at a level.
    [[nodiscard]] int extent(int index, int dir) const noexcept { return coords(index)[dir]; }

private:
    Shape shape_ = Shape::Simplex;
    Bound bound_{0, 0};
    std::vector<Level> levels_;
    CoskCertificate cosk_{};
    CoskCertificate skel_{};
};

using PresheafPtr = std::shared_ptr<const Presheaf>;
using Components = std::vector<std::vector<int>>;

[[nodiscard]] inline PresheafPtr share(Presheaf p) { return std::make_shared<const Presheaf>(std::move(p)); }

class PresheafMap {
public:
    PresheafMap() = default;
    PresheafMap(PresheafPtr source, PresheafPtr target, Components components);

    [[nodiscard]] const Presheaf& source() const { return *source_; }
    [[nodiscard]] const Presheaf& target() const { return *target_; }
    [[nodiscard]] const PresheafPtr& source_ptr() const noexcept { return source_; }
    [[nodiscard]] const PresheafPtr& target_ptr() const noexcept { return target_; }
    [[nodiscard]] const Components& components() const noexcept { return components_; }
    [[nodiscard]] int operator()(int index, int cell) const { return components_[index][cell]; }

    [[nodiscard]] std::optional<std::string> check() const;
    void validate() const;
    [[nodiscard]] bool levelwise_injective() const;
    [[nodiscard]] bool levelwise_bijective() const;

private:
    PresheafPtr source_;
    PresheafPtr target_;
    Components components_;
};

[[nodiscard]] PresheafMap compose(const PresheafMap& second, const PresheafMap& first);
[[nodiscard]] PresheafMap identity_map(const PresheafPtr& x);
[[nodiscard]] bool same_components(const PresheafMap& a, const PresheafMap& b);

// Elementary constructions.
[[nodiscard]] Presheaf terminal(Shape shape, Bound bound);
[[nodiscard]] Presheaf empty_presheaf(Shape shape, Bound bound);
[[nodiscard]] PresheafMap to_terminal(const PresheafPtr& x);
[[nodiscard]] Presheaf truncate(const Presheaf& x, Bound bound);
// Truncates both ends; the result owns fresh copies unless the bound is unchanged.
[[nodiscard]] PresheafMap truncate(const PresheafMap& f, Bound bound);
[[nodiscard]] Bound common_bound(const Presheaf& a, const Presheaf& b);
[[nodiscard]] Presheaf relabel(const Presheaf& x);

[[nodiscard]] Presheaf product(const Presheaf& a, const Presheaf& b);
// Product projections; a×b must come from product(a, b).
[[nodiscard]] PresheafMap product_projection(const PresheafPtr& prod, const PresheafPtr& factor, int which);
[[nodiscard]] PresheafMap product_map(const PresheafMap& f, const PresheafMap& g, const PresheafPtr& source,
                                      const PresheafPtr& target);

// (a ⊠ b)_{k,l} = a_k × b_l for simplicial a, b. Markings of a become the
// markings of the result.
[[nodiscard]] Presheaf box_product(const Presheaf& a, const Presheaf& b);

// Row X_{•,l} (direction 0, keeps markings) and column X_{k,•} (direction 1)
// of a bisimplicial presheaf, as simplicial presheaves.
[[nodiscard]] Presheaf row(const Presheaf& x, int l);
[[nodiscard]] Presheaf column(const Presheaf& x, int k);

struct DiagramArrow {
    int source = 0;
    int target = 0;
    Components components;
};

struct Diagram {
    std::vector<PresheafPtr> objects;
    std::vector<std::string> labels;
    std::vector<DiagramArrow> arrows;

    int add_object(PresheafPtr p, std::string label);
    void add_arrow(int source, int target, Components components);
    void add_arrow(int source, int target, const PresheafMap& map);
};

struct ColimitResult {
    Presheaf object;
    // coprojections[object][level][cell] -> cell of the colimit
    std::vector<Components> coprojections;
};

// Levelwise quotient of the disjoint union by the equivalence generated by
// the arrows. Each output cell is named after its least representative.
[[nodiscard]] ColimitResult colimit(const Diagram& diagram);

struct PullbackResult {
    Presheaf object;
    // For each level, the pair (x cell, y cell) of each output cell.
    std::vector<std::vector<std::pair<int, int>>> pairs;
};

[[nodiscard]] PullbackResult limit_level0(const PresheafMap& f, const PresheafMap& g);

// Action of a simplicial operator given as a sequence a: [m] -> [n] on a
// cell of a simplicial (direction dir) presheaf at level n.
[[nodiscard]] int act(const Presheaf& x, int index, int dir, int cell, const std::vector<int>& operator_sequence);

// A presheaf over Δ⁺ or Δ⁺×Δ given with an explicit [1⁺]-level, which need
// not be separated. plus_to_edge[l][m] is the (1, l) cell under marking m.
struct RawMarkedPresheaf {
    Presheaf underlying;
    std::vector<std::vector<int>> plus_to_edge;
    std::vector<std::vector<std::string>> plus_names;
};

[[nodiscard]] CheckReport is_separated(const RawMarkedPresheaf& raw);
// Stored marked presheaves are separated by construction; this re-checks
// degenerate-edge containment and compatibility of the markings.
[[nodiscard]] CheckReport is_separated(const Presheaf& marked);
[[nodiscard]] RawMarkedPresheaf to_raw(const Presheaf& marked);
// Separated reflection: markings become the image of the [1⁺]-level.
[[nodiscard]] Presheaf separate(const RawMarkedPresheaf& raw);

} // namespace simpcalc
