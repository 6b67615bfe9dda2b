#pragma once

// Lifting problems, right lifting properties against the horn and boundary
// generators, quasi-category detection and equivalence edges.

#include <optional>
#include <string>
#include <vector>

#include "simpcalc/hom.hpp"
#include "simpcalc/presheaf.hpp"
#include "simpcalc/report.hpp"

namespace simpcalc {

enum class FibrationClass { Kan, Inner, Left, Right, TrivialKan, MarkedAnodyneShadow };

[[nodiscard]] std::string_view to_string(FibrationClass c);
[[nodiscard]] FibrationClass fibration_class_from_string(std::string_view s);

inline constexpr int default_lift_cap = 3;

// Square   A --top--> X
//          |i         |f
//          B --bot--> Y
struct LiftingProblem {
    PresheafMap i;
    PresheafMap f;
    PresheafMap top;
    PresheafMap bottom;
};

struct LiftResult {
    CheckReport report;
    std::optional<PresheafMap> diagonal;
};

// A lift found between truncations counts only when Hom(B, X) is exact at
// the common bound; otherwise the verdict is inconclusive. No truncated lift
// means no lift.
[[nodiscard]] LiftResult solve_lift(const LiftingProblem& p);

struct Generator {
    std::string name;
    PresheafMap inclusion;
    int dimension = 0;
};

// The generating inclusions of a class up to dimension cap, built at bound d.
[[nodiscard]] std::vector<Generator> generators(FibrationClass c, int cap, int d);

// Iterates every square from the generators against f. Exact when X and Y
// carry coskeletality certificates c with cap >= c + 1 (c for boundaries).
[[nodiscard]] CheckReport has_rlp(const PresheafMap& f, FibrationClass c, int cap = default_lift_cap);

[[nodiscard]] CheckReport is_quasicategory(const PresheafPtr& s, int cap = default_lift_cap);

struct EdgeSet {
    std::vector<int> edges; // level-1 cells
    bool exact = false;
    std::vector<std::string> notes;
};

// Homotopy classes of edges: f ~ g when some 2-cell has faces (s_0 y, g, f).
[[nodiscard]] std::vector<int> homotopy_classes(const Presheaf& s);

// Edges whose homotopy class is invertible in the homotopy category.
[[nodiscard]] EdgeSet hoequiv_edges(const PresheafPtr& s);

} // namespace simpcalc
