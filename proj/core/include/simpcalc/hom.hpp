#pragma once

// Enumeration of presheaf maps by backtracking over cells.
//
// Cells of the source are visited by total degree, then first index, then id.
// A degenerate cell has its image forced by the image of the cell it is a
// degeneracy of; a nondegenerate cell draws candidates from the target cells
// whose faces match the images already chosen for its own faces.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simpcalc/presheaf.hpp"

namespace simpcalc {

struct HomConstraints {
    // fixed[level][cell] >= 0 pins the image of a source cell.
    const Components* fixed = nullptr;
    // Maps over a common base: base(f(c)) must equal source_to_base(c).
    const PresheafMap* source_to_base = nullptr;
    const PresheafMap* target_to_base = nullptr;
    bool injective = false;
    // Stop after this many maps; 0 means no limit.
    std::size_t limit = 0;
};

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (int x : v)
            h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
        return h;
    }
};

class HomEngine {
public:
    explicit HomEngine(PresheafPtr target);

    [[nodiscard]] const Presheaf& target() const noexcept { return *target_; }
    [[nodiscard]] const PresheafPtr& target_ptr() const noexcept { return target_; }

    // Calls visit for each map in canonical order until it returns false.
    // Returns the number of maps visited. Source and target must share shape
    // and bound.
    std::size_t search(const Presheaf& source, const HomConstraints& constraints,
                       const std::function<bool(const Components&)>& visit) const;

    [[nodiscard]] std::vector<Components> all(const Presheaf& source, const HomConstraints& constraints = {}) const;
    [[nodiscard]] std::size_t count(const Presheaf& source, const HomConstraints& constraints = {}) const;
    [[nodiscard]] std::optional<Components> first(const Presheaf& source, const HomConstraints& constraints = {}) const;

private:
    using Bucket = std::unordered_map<std::vector<int>, std::vector<int>, VecHash>;
    PresheafPtr target_;
    std::vector<Bucket> by_faces_;
    std::vector<std::vector<int>> all_cells_;
};

struct Exactness {
    enum class Kind { Exact, ByCoskeletality, Bounded };
    Kind kind = Kind::Exact;
    int value = 0;

    [[nodiscard]] bool exact() const noexcept { return kind != Kind::Bounded; }
    [[nodiscard]] std::string describe() const;
};

// Exactness of Hom(x, y) when both are cut to the bound d: exact in each
// direction where x has no nondegenerate cells above d, or y is coskeletal
// at or below d.
[[nodiscard]] Exactness hom_exactness(const Presheaf& x, const Presheaf& y, Bound d);

struct HomSet {
    PresheafPtr source;
    PresheafPtr target;
    std::vector<PresheafMap> elements;
    Exactness exactness;

    [[nodiscard]] std::size_t size() const noexcept { return elements.size(); }
};

// Both sides are truncated to their common bound first.
[[nodiscard]] HomSet enumerate_hom(const PresheafPtr& x, const PresheafPtr& y, const HomConstraints& constraints = {});
[[nodiscard]] std::size_t count_hom(const Presheaf& x, const Presheaf& y);

[[nodiscard]] std::optional<PresheafMap> find_isomorphism(const PresheafPtr& x, const PresheafPtr& y);
[[nodiscard]] bool isomorphic(const PresheafPtr& x, const PresheafPtr& y);

// The first map whose vertex components (level 0, or (0,0)) are as given.
// Unique when the target is a nerve.
[[nodiscard]] std::optional<PresheafMap> map_from_vertices(const PresheafPtr& source, const PresheafPtr& target,
                                                           const std::vector<int>& vertex_images);

// Compatible boundary tuples of a level in one direction, as lists of cells
// of the face level: (x_0, ..., x_k) with d_i x_j = d_{j-1} x_i for i < j.
[[nodiscard]] std::vector<std::vector<int>> boundary_tuples(const Presheaf& x, int index, int dir);

// Holds iff every level above c in every direction is in bijection with its
// compatible boundary tuples. c applies to both directions of a bisimplicial
// object unless given per direction.
[[nodiscard]] CheckReport is_coskeletal(const Presheaf& x, int c);
[[nodiscard]] CheckReport is_coskeletal(const Presheaf& x, CoskCertificate c);

} // namespace simpcalc
