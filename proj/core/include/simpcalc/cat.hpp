#pragma once

// Finite categories given by composition tables, functors between them, and
// the constructions used as brute-force oracles: nerves, Grothendieck
// constructions of Cat-valued presheaves, and classification diagrams.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simpcalc/presheaf.hpp"

namespace simpcalc {

struct Morphism {
    std::string name;
    int source = 0;
    int target = 0;
};

class FiniteCategory {
public:
    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<int> identities;  // per object
    std::vector<int> composition; // [g * M + f] = g∘f, -1 unless target(f) = source(g)

    [[nodiscard]] int object_count() const noexcept { return static_cast<int>(objects.size()); }
    [[nodiscard]] int morphism_count() const noexcept { return static_cast<int>(morphisms.size()); }
    [[nodiscard]] int source(int m) const { return morphisms.at(m).source; }
    [[nodiscard]] int target(int m) const { return morphisms.at(m).target; }
    [[nodiscard]] int compose(int g, int f) const;
    [[nodiscard]] int identity(int object) const { return identities.at(object); }
    [[nodiscard]] bool is_identity(int m) const { return identities.at(source(m)) == m; }
    [[nodiscard]] std::vector<int> hom(int a, int b) const;
    [[nodiscard]] std::optional<int> inverse(int m) const;
    [[nodiscard]] bool is_iso(int m) const { return inverse(m).has_value(); }
    [[nodiscard]] bool is_groupoid() const;
    [[nodiscard]] std::vector<int> isomorphisms() const;
    [[nodiscard]] int find_object(const std::string& name) const;
    [[nodiscard]] int find_morphism(const std::string& name) const;

    // Exhaustive check of typing, unit laws and associativity.
    [[nodiscard]] std::optional<std::string> validate() const;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

// Incremental construction. Identities are added by object() and composites
// with identities are filled in by finish(), which validates.
class CategoryBuilder {
public:
    // Adds an object and its identity, named id_<name> unless given.
    int object(const std::string& name, std::string identity_name = {});
    int arrow(const std::string& name, int source, int target);
    void compose(int g, int f, int result);
    [[nodiscard]] FiniteCategory finish() const;
    [[nodiscard]] const FiniteCategory& partial() const noexcept { return c_; }

private:
    FiniteCategory c_;
    std::vector<std::array<int, 3>> comps_;
};

// The poset [n], the chaotic groupoid I[l], the discrete category on n
// objects, the cyclic group of order k as a one-object category, a single
// object with an idempotent, and the parallel pair.
[[nodiscard]] FiniteCategory poset_category(int n);
[[nodiscard]] FiniteCategory chaotic_groupoid(int l);
[[nodiscard]] FiniteCategory discrete_category(int n);
[[nodiscard]] FiniteCategory cyclic_group(int k);
[[nodiscard]] FiniteCategory idempotent_category();
[[nodiscard]] FiniteCategory parallel_pair();
[[nodiscard]] FiniteCategory product_category(const FiniteCategory& a, const FiniteCategory& b);

struct CatFunctor {
    CategoryPtr source;
    CategoryPtr target;
    std::vector<int> on_objects;
    std::vector<int> on_morphisms;
    bool contravariant = false;

    [[nodiscard]] std::optional<std::string> validate() const;
};

[[nodiscard]] CatFunctor identity_functor(const CategoryPtr& c);
[[nodiscard]] CatFunctor compose(const CatFunctor& second, const CatFunctor& first);
[[nodiscard]] bool same_functor(const CatFunctor& a, const CatFunctor& b);
// Every covariant functor, by backtracking over objects then morphisms.
[[nodiscard]] std::vector<CatFunctor> all_functors(const CategoryPtr& source, const CategoryPtr& target);

// A strict functor F: C^op → Cat: a fiber per object and, per morphism
// f: c → d, a functor F(f): F(d) → F(c).
struct CatDiagram {
    CategoryPtr base;
    std::vector<CategoryPtr> fibers;
    std::vector<CatFunctor> transition;

    [[nodiscard]] std::optional<std::string> validate() const;
};

struct GrothendieckResult {
    std::shared_ptr<const FiniteCategory> total;
    CatFunctor projection;
    std::vector<std::array<int, 2>> object_of;   // (c, x)
    std::vector<std::array<int, 2>> morphism_of; // (f, φ) with φ: x → F(f)(y) in F(c)
};

[[nodiscard]] GrothendieckResult grothendieck(const CatDiagram& f);
// Morphisms (f, φ) of the total category with φ invertible in its fiber.
[[nodiscard]] std::vector<int> classical_cartesian_edges(const CatDiagram& f, const GrothendieckResult& g);

// Nerve truncated at bound: k-cells are composable chains of k morphisms,
// named "f1,f2,...". Vertices follow object order and edges morphism order.
[[nodiscard]] Presheaf nerve(const FiniteCategory& c, int bound);
[[nodiscard]] PresheafMap nerve_map(const CatFunctor& f, const PresheafPtr& source, const PresheafPtr& target);
// Longest chain of non-identity morphisms, or nothing when unbounded.
[[nodiscard]] std::optional<int> longest_chain(const FiniteCategory& c);

// Level (n, m) holds the functors [n]×I[m] → C.
[[nodiscard]] Presheaf classification_diagram(const FiniteCategory& c, Bound bound);

[[nodiscard]] nlohmann::json to_json(const FiniteCategory& c);
[[nodiscard]] FiniteCategory category_from_json(const nlohmann::json& j);
// {"objects": {x: y}, "morphisms": {f: g}}; identities may be omitted.
[[nodiscard]] nlohmann::json to_json(const CatFunctor& f);
[[nodiscard]] CatFunctor functor_from_json(const nlohmann::json& j, const CategoryPtr& source,
                                           const CategoryPtr& target);
// {"base": category, "fibers": {c: category}, "maps": {f: functor}}.
[[nodiscard]] nlohmann::json to_json(const CatDiagram& d);
[[nodiscard]] CatDiagram diagram_from_json(const nlohmann::json& j);

} // namespace simpcalc
