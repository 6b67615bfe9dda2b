#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "simpcalc/cat.hpp"
#include "simpcalc/hom.hpp"
#include "simpcalc/lifting.hpp"
#include "simpcalc/standard.hpp"

using namespace simpcalc;

namespace {

CategoryPtr ptr(FiniteCategory c)
{
    return std::make_shared<const FiniteCategory>(std::move(c));
}

std::vector<CategoryPtr> small_categories()
{
    return {ptr(poset_category(0)),      ptr(poset_category(1)),  ptr(poset_category(2)),
            ptr(chaotic_groupoid(1)),    ptr(chaotic_groupoid(2)), ptr(cyclic_group(2)),
            ptr(cyclic_group(3)),        ptr(idempotent_category()), ptr(parallel_pair()),
            ptr(discrete_category(2)),   ptr(product_category(poset_category(1), chaotic_groupoid(1)))};
}

// Sequences of k morphisms with matching ends, counted directly.
long composable_sequences(const FiniteCategory& c, int k)
{
    if (k == 0)
        return c.object_count();
    long count = 0;
    std::function<void(int, int)> go = [&](int len, int last) {
        if (len == k) {
            ++count;
            return;
        }
        for (int m = 0; m < c.morphism_count(); ++m)
            if (len == 0 || c.source(m) == c.target(last))
                go(len + 1, m);
    };
    go(0, -1);
    return count;
}

// The diagram [1]^op → Cat sending 1 to the discrete category on `points`
// objects and 0 to the terminal category.
CatDiagram two_level(int points)
{
    CatDiagram d;
    d.base = ptr(poset_category(1));
    d.fibers = {ptr(poset_category(0)), ptr(discrete_category(points))};
    for (int f = 0; f < d.base->morphism_count(); ++f) {
        const int s = d.base->source(f), t = d.base->target(f);
        if (s == t)
            d.transition.push_back(identity_functor(d.fibers[s]));
        else {
            CatFunctor g{d.fibers[t], d.fibers[s], std::vector<int>(points, 0), {}, false};
            for (int m = 0; m < d.fibers[t]->morphism_count(); ++m)
                g.on_morphisms.push_back(0);
            d.transition.push_back(g);
        }
    }
    return d;
}

CatDiagram constant_diagram(const CategoryPtr& base, const CategoryPtr& fiber)
{
    CatDiagram d{base, std::vector<CategoryPtr>(base->object_count(), fiber), {}};
    for (int f = 0; f < base->morphism_count(); ++f)
        d.transition.push_back(identity_functor(fiber));
    return d;
}

} // namespace

TEST_CASE("standard categories validate")
{
    for (const auto& c : small_categories())
        CHECK_FALSE(c->validate());
    CHECK(poset_category(2).morphism_count() == 6);
    CHECK(chaotic_groupoid(2).morphism_count() == 9);
    CHECK(cyclic_group(3).is_groupoid());
    CHECK_FALSE(idempotent_category().is_groupoid());
    CHECK(chaotic_groupoid(1).is_groupoid());
}

TEST_CASE("builder rejects bad tables")
{
    CategoryBuilder missing;
    const int a = missing.object("a");
    missing.arrow("e", a, a);
    CHECK_THROWS_AS((void)missing.finish(), Error);

    // e∘e = f, f∘e = e∘f = e, f∘f = f breaks associativity at (e∘e)∘e.
    CategoryBuilder bad;
    bad.object("a");
    const int e = bad.arrow("e", 0, 0);
    const int f = bad.arrow("f", 0, 0);
    bad.compose(e, e, f);
    bad.compose(f, e, e);
    bad.compose(e, f, f);
    bad.compose(f, f, f);
    CHECK_THROWS_AS((void)bad.finish(), Error);

    CategoryBuilder typed;
    const int x = typed.object("x");
    const int y = typed.object("y");
    const int u = typed.arrow("u", x, y);
    const int w = typed.arrow("w", y, x);
    typed.compose(w, u, u);
    CHECK_THROWS_AS((void)typed.finish(), Error);
    CHECK_THROWS_AS((void)typed.object("p,q"), Error);
}

TEST_CASE("inverses and isomorphisms")
{
    auto z3 = cyclic_group(3);
    CHECK(*z3.inverse(z3.find_morphism("g1")) == z3.find_morphism("g2"));
    auto p = poset_category(2);
    CHECK(p.isomorphisms().size() == 3);
}

TEST_CASE("nerve of [n] is Δ[n] and of I[1] is J[1]")
{
    for (int n = 0; n <= 3; ++n)
        CHECK(isomorphic(share(nerve(poset_category(n), 4)), share(simplex(n, 4))));
    CHECK(isomorphic(share(nerve(chaotic_groupoid(1), 3)), share(groupoid_nerve(1, 3))));
    CHECK(isomorphic(share(nerve(chaotic_groupoid(2), 3)), share(groupoid_nerve(2, 3))));
}

TEST_CASE("nerve cells are composable chains")
{
    for (const auto& c : small_categories()) {
        auto n = nerve(*c, 3);
        for (int k = 0; k <= 3; ++k)
            CHECK(n.size(k) == composable_sequences(*c, k));
        CHECK(is_coskeletal(n, 2).holds());
    }
    // Parallel pair: a k-chain holds at most one of u, v.
    auto pp = nerve(parallel_pair(), 4);
    for (int k = 1; k <= 4; ++k)
        CHECK(pp.size(k) == 2 + 2 * k);
    CHECK(*longest_chain(poset_category(3)) == 3);
    CHECK_FALSE(longest_chain(cyclic_group(2)));
}

TEST_CASE("functor enumeration")
{
    auto p1 = ptr(poset_category(1));
    CHECK(all_functors(p1, p1).size() == 3);
    auto z2 = ptr(cyclic_group(2));
    CHECK(all_functors(z2, z2).size() == 2);
    CHECK(all_functors(ptr(chaotic_groupoid(1)), p1).size() == 2);
    for (const auto& f : all_functors(ptr(parallel_pair()), ptr(idempotent_category())))
        CHECK_FALSE(f.validate());
}

TEST_CASE("nerve is fully faithful on small categories")
{
    const auto cats = small_categories();
    for (const auto& c : cats)
        for (const auto& d : cats) {
            if (c->morphism_count() * d->morphism_count() > 40)
                continue;
            auto nc = share(nerve(*c, 3));
            auto nd = share(nerve(*d, 3));
            auto h = enumerate_hom(nc, nd);
            CHECK(h.exactness.exact());
            CHECK(h.size() == all_functors(c, d).size());
        }
}

TEST_CASE("nerve maps")
{
    auto c = ptr(poset_category(2));
    auto nc = share(nerve(*c, 3));
    for (const auto& f : all_functors(c, c))
        CHECK_FALSE(nerve_map(f, nc, nc).check());
}

TEST_CASE("Grothendieck construction examples")
{
    // Constant at the terminal category: ∫F ≅ C with the identity projection.
    auto base = ptr(poset_category(2));
    auto g = grothendieck(constant_diagram(base, ptr(poset_category(0))));
    CHECK(g.total->object_count() == base->object_count());
    CHECK(g.total->morphism_count() == base->morphism_count());
    CHECK(isomorphic(share(nerve(*g.total, 3)), share(nerve(*base, 3))));
    CHECK_FALSE(g.projection.validate());

    auto one = grothendieck(two_level(1));
    CHECK(isomorphic(share(nerve(*one.total, 3)), share(simplex(1, 3))));

    auto two = grothendieck(two_level(2));
    CHECK(two.total->object_count() == 3);
    // Over id_0: 1; over id_1: 2 identities; over 0<1: one φ per y.
    CHECK(two.total->morphism_count() == 5);
}

TEST_CASE("classical Cartesian edges")
{
    auto base = ptr(poset_category(1));
    auto constant = constant_diagram(base, ptr(poset_category(1)));
    auto g = grothendieck(constant);
    // Fibers [1]: φ is an iso exactly when it is an identity.
    auto edges = classical_cartesian_edges(constant, g);
    int identities_phi = 0;
    for (const auto& [f, phi] : g.morphism_of)
        identities_phi += constant.fibers[base->source(f)]->is_identity(phi);
    CHECK(static_cast<int>(edges.size()) == identities_phi);

    auto groupoid = constant_diagram(base, ptr(chaotic_groupoid(1)));
    auto gg = grothendieck(groupoid);
    CHECK(classical_cartesian_edges(groupoid, gg).size() == gg.morphism_of.size());

    auto terminal = constant_diagram(base, ptr(poset_category(0)));
    auto gt = grothendieck(terminal);
    CHECK(classical_cartesian_edges(terminal, gt).size() == gt.morphism_of.size());
}

TEST_CASE("diagram validation catches non-functorial transitions")
{
    auto d = two_level(2);
    // Swap the objects under F(id_1): no longer the identity.
    auto& t = d.transition[d.base->identity(1)];
    t.on_objects = {1, 0};
    t.on_morphisms = {1, 0};
    CHECK(d.validate());
    CHECK_THROWS_AS((void)grothendieck(d), Error);
}

TEST_CASE("classification diagram examples")
{
    auto pt = classification_diagram(poset_category(0), {2, 2});
    for (int idx = 0; idx < pt.level_count(); ++idx)
        CHECK(pt.size(idx) == 1);

    auto c1 = classification_diagram(poset_category(1), {3, 2});
    for (int n = 0; n <= 3; ++n)
        CHECK(c1.size_at(n, 0) == n + 2);
    for (int m = 0; m <= 2; ++m)
        CHECK(c1.size_at(0, m) == 2);

    auto i1 = classification_diagram(chaotic_groupoid(1), {1, 1});
    CHECK(i1.size_at(0, 1) == 4);

    // Row 0 is the nerve; column 0 is the nerve of the groupoid core.
    for (const auto& c : small_categories()) {
        auto cd = classification_diagram(*c, {2, 2});
        CHECK(isomorphic(share(row(cd, 0)), share(nerve(*c, 2))));
        CHECK(cd.size_at(0, 1) == static_cast<int>(c->isomorphisms().size()));
        CHECK(is_coskeletal(cd, cd.cosk()).holds());
    }
}

TEST_CASE("nerves are quasi-categories; right fibration over a point iff groupoid")
{
    for (const auto& c : small_categories()) {
        auto n = share(nerve(*c, 3));
        CHECK(is_quasicategory(n).holds());
        auto r = has_rlp(to_terminal(n), FibrationClass::Right);
        CHECK(r.holds() == c->is_groupoid());
        CHECK(r.fails() == !c->is_groupoid());
    }
}

TEST_CASE("equivalence edges of a nerve are the isomorphisms")
{
    for (const auto& c : small_categories()) {
        if (c->object_count() == 1 && c->morphism_count() == 1)
            continue;
        auto n = share(nerve(*c, 3));
        auto e = hoequiv_edges(n);
        CHECK(e.exact);
        CHECK(e.edges == c->isomorphisms());
    }
}

TEST_CASE("JSON round trips")
{
    for (const auto& c : small_categories()) {
        auto back = category_from_json(to_json(*c));
        CHECK(to_json(back) == to_json(*c));
    }
    auto d = two_level(2);
    auto dd = diagram_from_json(to_json(d));
    CHECK(to_json(dd) == to_json(d));
    auto p = ptr(poset_category(2));
    for (const auto& f : all_functors(p, p))
        CHECK(same_functor(functor_from_json(to_json(f), p, p), f));
    CHECK_THROWS_AS((void)category_from_json(nlohmann::json::parse(R"({"objects":["a"],"homs":{"a,b":["f"]}})")),
                    Error);
}
