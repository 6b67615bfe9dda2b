#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simpcalc/bisimplicial.hpp"
#include "simpcalc/cat.hpp"
#include "simpcalc/hom.hpp"
#include "simpcalc/standard.hpp"
#include "simpcalc/transfer.hpp"

using namespace simpcalc;

namespace {

CategoryPtr ptr(FiniteCategory c)
{
    return std::make_shared<const FiniteCategory>(std::move(c));
}

PresheafPtr constant(const Presheaf& s, int m_bound)
{
    return share(p1_star(s, m_bound));
}

// p₁* of the unique map between nerves with the given vertex images.
PresheafMap constant_map(const Presheaf& source, const Presheaf& target, const std::vector<int>& vertices,
                         int m_bound)
{
    auto f = map_from_vertices(share(source), share(target), vertices);
    REQUIRE(f.has_value());
    auto s = constant(source, m_bound);
    auto t = constant(target, m_bound);
    Components comps(s->level_count());
    for (int idx = 0; idx < s->level_count(); ++idx)
        comps[idx] = f->components()[s->coords(idx)[0]];
    return PresheafMap(s, t, std::move(comps));
}

// F: [1]^op → Set with F(1) = {a, b}, F(0) = {c} and both of F(1) sent to c.
CatDiagram discrete_fibration()
{
    CatDiagram d;
    d.base = ptr(poset_category(1));
    d.fibers = {ptr(discrete_category(1)), ptr(discrete_category(2))};
    for (int f = 0; f < d.base->morphism_count(); ++f) {
        const int s = d.base->source(f), t = d.base->target(f);
        if (s == t)
            d.transition.push_back(identity_functor(d.fibers[s]));
        else
            d.transition.push_back({d.fibers[t], d.fibers[s], {0, 0}, {0, 0}, false});
    }
    return d;
}

} // namespace

TEST_CASE("discreteness scan")
{
    CHECK(discreteness_scan(*constant(nerve(poset_category(2), 2), 2)).verified);
    auto flag = discreteness_scan(classification_diagram(chaotic_groupoid(1), {2, 2}));
    CHECK_FALSE(flag.verified);
    CHECK(discreteness_scan(classification_diagram(poset_category(2), {2, 2})).verified);
    CHECK(constant_in_first_direction(box_product(point(2), simplex(1, 2))));
    CHECK_FALSE(constant_in_first_direction(*constant(simplex(1, 2), 2)));
}

TEST_CASE("rows of fibrations over a point")
{
    auto cd = share(classification_diagram(chaotic_groupoid(1), {2, 3}));
    CHECK(right_fib_rows(to_terminal(cd)).holds());

    auto d1_row = share(box_product(point(2), simplex(1, 3)));
    auto r = right_fib_rows(to_terminal(d1_row));
    CHECK(r.fails());
    CHECK(r.witness.contains("column"));

    auto x = share(box_product(point(2), nerve(poset_category(1), 3)));
    CHECK(right_fib_rows(identity_map(x)).holds());

    CHECK_THROWS_AS((void)right_fib_rows(identity_map(constant(simplex(1, 2), 2))), Error);
}

TEST_CASE("homotopy pullback in the discrete regime")
{
    auto g = grothendieck(discrete_fibration());
    const auto total = nerve(*g.total, 3);
    const auto base = nerve(*g.projection.target, 3);
    std::vector<int> vertices;
    for (int x = 0; x < g.total->object_count(); ++x)
        vertices.push_back(g.projection.on_objects[x]);
    auto p = constant_map(total, base, vertices, 2);
    for (int n = 0; n <= 3; ++n)
        CHECK(hopullback_discrete(p, n).holds());

    // Two arrows 0 → 1 over the one arrow of [1].
    auto bad = constant_map(nerve(parallel_pair(), 3), nerve(poset_category(1), 3), {0, 1}, 2);
    CHECK(hopullback_discrete(bad, 0).holds());
    auto r = hopullback_discrete(bad, 1);
    CHECK(r.fails());
    CHECK(r.witness.at("cells").size() == 2);

    auto cd = share(classification_diagram(chaotic_groupoid(1), {2, 2}));
    CHECK(hopullback_discrete(to_terminal(cd), 1).inconclusive());
}

TEST_CASE("Segal and completeness for constant nerves")
{
    for (const auto& c : {poset_category(2), parallel_pair(), idempotent_category()}) {
        auto r = segal_completeness_check(constant(nerve(c, 3), 2));
        CHECK(r.holds());
    }
    // Completeness sees the non-identity isomorphisms.
    auto j = segal_completeness_check(constant(nerve(chaotic_groupoid(1), 3), 2));
    CHECK(j.fails());
    CHECK(j.witness.at("generator") == "Comp");
    auto z = segal_completeness_check(constant(nerve(cyclic_group(2), 3), 2));
    CHECK(z.fails());

    // The horn has a spine without a filler.
    auto h = segal_completeness_check(constant(horn(2, 1, 3), 2));
    CHECK(h.fails());
    CHECK(h.witness.at("generator") == "Seg(2)");
}

TEST_CASE("classification diagrams are complete Segal objects")
{
    for (const auto& c : {poset_category(1), chaotic_groupoid(1), cyclic_group(2), idempotent_category()}) {
        auto cd = share(classification_diagram(c, {2, 3}));
        auto r = is_cartesian_fibration_bisimplicial(to_terminal(cd));
        CHECK(r.holds());
        auto s = segal_completeness_check(cd);
        CHECK(s.verdict == r.verdict);
    }
}

TEST_CASE("fibrations over a base")
{
    auto s = share(box_product(point(2), nerve(poset_category(1), 3)));
    CHECK(is_cartesian_fibration_bisimplicial(identity_map(s)).holds());

    // Rows Δ[1] over the point.
    auto d1_row = share(box_product(point(2), simplex(1, 3)));
    auto r = is_cartesian_fibration_bisimplicial(to_terminal(d1_row));
    CHECK(r.fails());
    CHECK(r.witness.at("condition") == "rows");

    CHECK_THROWS_AS((void)is_cartesian_fibration_bisimplicial(identity_map(constant(simplex(1, 2), 2))), Error);
}

TEST_CASE("an injected Segal violation is caught")
{
    for (const auto& c : {poset_category(2), chaotic_groupoid(1), cyclic_group(2)}) {
        auto cd = share(classification_diagram(c, {2, 3}));
        auto bad = share(inject_segal_violation(cd, 2));
        // A new diagonal edge 02, the new 2-cell and the two degeneracies of 02.
        CHECK(bad->size_at(1, 0) == cd->size_at(1, 0) + 1);
        CHECK(bad->size_at(2, 0) == cd->size_at(2, 0) + 3);
        auto r = is_cartesian_fibration_bisimplicial(to_terminal(bad));
        REQUIRE(r.fails());
        CHECK(r.witness.at("generator") == "Seg(2)");
        CHECK(r.witness.at("detail").at("invariant") == "pi0");
    }
}

TEST_CASE("space equivalences")
{
    auto d1 = share(simplex(1, 3));
    auto pt = share(simplex(0, 3));
    CHECK(space_equivalence(to_terminal(d1)).inconclusive());
    auto j1 = share(groupoid_nerve(1, 3));
    auto v = sequence_map(pt, j1, {0});
    auto r = space_equivalence(v);
    CHECK(r.holds());
    auto z2 = share(nerve(cyclic_group(2), 3));
    auto pz = space_equivalence(to_terminal(z2));
    CHECK(pz.fails());
    CHECK(pz.witness.at("invariant") == "pi1");
}
