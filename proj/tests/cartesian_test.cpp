#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "simpcalc/cartesian.hpp"
#include "simpcalc/cat.hpp"
#include "simpcalc/hom.hpp"
#include "simpcalc/lifting.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"

using namespace simpcalc;

namespace {

CategoryPtr ptr(FiniteCategory c)
{
    return std::make_shared<const FiniteCategory>(std::move(c));
}

// The projection C×D → C as a functor.
CatFunctor first_projection(const CategoryPtr& prod, const FiniteCategory& c, const FiniteCategory& d)
{
    CatFunctor f{prod, std::make_shared<const FiniteCategory>(c), {}, {}, false};
    for (int x = 0; x < prod->object_count(); ++x)
        f.on_objects.push_back(x / d.object_count());
    for (int m = 0; m < prod->morphism_count(); ++m)
        f.on_morphisms.push_back(m / d.morphism_count());
    return f;
}

PresheafMap nerve_of(const CatFunctor& f, int bound)
{
    return nerve_map(f, share(nerve(*f.source, bound)), share(nerve(*f.target, bound)));
}

std::vector<int> cartesian_edges(const PresheafMap& p)
{
    std::vector<int> out;
    for (int e = 0; e < p.source().size(1); ++e)
        if (is_p_cartesian(p, e).holds())
            out.push_back(e);
    return out;
}

CatDiagram two_level(int points)
{
    CatDiagram d;
    d.base = ptr(poset_category(1));
    d.fibers = {ptr(poset_category(0)), ptr(discrete_category(points))};
    for (int f = 0; f < d.base->morphism_count(); ++f) {
        const int s = d.base->source(f), t = d.base->target(f);
        if (s == t)
            d.transition.push_back(identity_functor(d.fibers[s]));
        else
            d.transition.push_back({d.fibers[t], d.fibers[s], std::vector<int>(points, 0),
                                    std::vector<int>(d.fibers[t]->morphism_count(), 0), false});
    }
    return d;
}

// F: [1]^op → Cat with F(1) = [1], F(0) = I[1] and F(0<1) the inclusion.
CatDiagram poset_into_groupoid()
{
    CatDiagram d;
    d.base = ptr(poset_category(1));
    d.fibers = {ptr(chaotic_groupoid(1)), ptr(poset_category(1))};
    for (int f = 0; f < d.base->morphism_count(); ++f) {
        const int s = d.base->source(f), t = d.base->target(f);
        if (s == t) {
            d.transition.push_back(identity_functor(d.fibers[s]));
            continue;
        }
        CatFunctor g{d.fibers[1], d.fibers[0], {0, 1}, {}, false};
        for (int m = 0; m < d.fibers[1]->morphism_count(); ++m) {
            const auto& mm = d.fibers[1]->morphisms[m];
            const auto& h = d.fibers[0]->hom(mm.source, mm.target);
            g.on_morphisms.push_back(mm.source == mm.target ? d.fibers[0]->identity(mm.source) : h.front());
        }
        d.transition.push_back(g);
    }
    return d;
}

// F: [1]^op → Cat with both fibers [1] and F(0<1) constant at 1.
CatDiagram constant_transition()
{
    CatDiagram d;
    d.base = ptr(poset_category(1));
    auto fib = ptr(poset_category(1));
    d.fibers = {fib, fib};
    for (int f = 0; f < d.base->morphism_count(); ++f) {
        if (d.base->is_identity(f))
            d.transition.push_back(identity_functor(fib));
        else
            d.transition.push_back({fib, fib, {1, 1}, std::vector<int>(fib->morphism_count(), fib->identity(1)), false});
    }
    return d;
}

} // namespace

TEST_CASE("joins of simplices")
{
    CHECK(isomorphic(share(join(simplex(0, 3), simplex(0, 3))), share(simplex(1, 3))));
    CHECK(isomorphic(share(join(simplex(1, 3), simplex(0, 3))), share(simplex(2, 3))));
    CHECK(isomorphic(share(join(boundary(1, 3), simplex(0, 3))), share(horn(2, 2, 3))));
    CHECK(isomorphic(share(join(simplex(0, 3), boundary(1, 3))), share(horn(2, 0, 3))));
    auto j = join(simplex(1, 3), simplex(1, 2));
    CHECK(j.dim() == 2);
    CHECK(isomorphic(share(j), share(simplex(3, 2))));
}

TEST_CASE("slices")
{
    auto d1 = share(simplex(1, 4));
    auto s = slice(d1, 0, d1->find(0, "1"));
    CHECK(isomorphic(s.object, share(simplex(1, 3))));

    auto n2 = share(nerve(poset_category(2), 4));
    auto s2 = slice(n2, 0, n2->find(0, "2"));
    CHECK(s2.object->size(0) == 3);
    CHECK(s2.object->nondegenerate_count(1) == 3);
    CHECK(s2.object->nondegenerate_count(2) == 1);
    CHECK(isomorphic(s2.object, share(simplex(2, 3))));

    // Every cell restricts to the base cell along K.
    auto j = share(groupoid_nerve(2, 4));
    for (int k = 0; k <= 1; ++k)
        for (int q = 0; q < j->size(k); ++q) {
            auto sl = slice(j, k, q);
            for (int n = 0; n <= sl.object->dim(); ++n)
                for (int c : sl.cell_of[n]) {
                    int last = c;
                    for (int lv = n + k + 1; lv > k; --lv)
                        last = j->face(lv, 0, 0, last);
                    CHECK(last == q);
                }
            CHECK(is_coskeletal(*sl.object, 2).holds());
        }
    CHECK_THROWS_AS((void)slice(j, 2, 0), Error);
}

TEST_CASE("every edge is Cartesian for the identity")
{
    auto t = share(nerve(poset_category(2), 4));
    auto id = identity_map(t);
    CHECK(static_cast<int>(cartesian_edges(id).size()) == t->size(1));
    auto nm = natural_marking(id);
    CHECK(marked_count(*nm.marked) == t->size(1));
    CHECK_FALSE(nm.to_base.check());
}

TEST_CASE("Cartesian edges of a product projection")
{
    const auto c = poset_category(1);
    for (const auto& d : {chaotic_groupoid(1), poset_category(1)}) {
        auto prod = ptr(product_category(c, d));
        auto p = nerve_of(first_projection(prod, c, d), 4);
        std::vector<int> expected;
        for (int m = 0; m < prod->morphism_count(); ++m)
            if (d.is_iso(m % d.morphism_count()))
                expected.push_back(m);
        CHECK(cartesian_edges(p) == expected);
        CHECK(is_cartesian_fibration(p).holds());
    }
}

TEST_CASE("Cartesian edges of Grothendieck constructions match the classical ones")
{
    for (const auto& d : {two_level(2), poset_into_groupoid(), constant_transition()}) {
        auto g = grothendieck(d);
        auto p = nerve_of(g.projection, 4);
        CHECK(cartesian_edges(p) == classical_cartesian_edges(d, g));
        CHECK(is_cartesian_fibration(p).holds());
        auto nm = natural_marking(p);
        CHECK(nm.cartesian == classical_cartesian_edges(d, g));
    }
}

TEST_CASE("no lift means no Cartesian fibration")
{
    auto pt = share(simplex(0, 4));
    auto d1 = share(simplex(1, 4));
    auto v = sequence_map(pt, d1, {1});
    auto r = is_cartesian_fibration(v);
    CHECK(r.fails());
    CHECK(r.witness.at("edge") == "01");
    CHECK_THROWS_AS((void)natural_marking(v), Error);
}

TEST_CASE("over the point Cartesian edges are the equivalences")
{
    for (const auto& c : {poset_category(2), chaotic_groupoid(1), cyclic_group(2), idempotent_category(),
                          product_category(poset_category(1), chaotic_groupoid(1))}) {
        auto t = share(nerve(c, 4));
        auto p = to_terminal(t);
        CHECK(is_cartesian_fibration(p).holds());
        auto nm = natural_marking(p);
        CHECK(nm.cartesian == hoequiv_edges(t).edges);
        CHECK(nm.cartesian == c.isomorphisms());
    }
}

TEST_CASE("degenerate edges are Cartesian and Cartesian edges compose")
{
    auto d = poset_into_groupoid();
    auto g = grothendieck(d);
    auto p = nerve_of(g.projection, 4);
    const auto& T = p.source();
    auto cart = cartesian_edges(p);
    for (int v = 0; v < T.size(0); ++v)
        CHECK(std::binary_search(cart.begin(), cart.end(), T.degeneracy(0, 0, 0, v)));
    for (int c = 0; c < T.size(2); ++c) {
        const int d0 = T.face(2, 0, 0, c), d1 = T.face(2, 0, 1, c), d2 = T.face(2, 0, 2, c);
        if (std::binary_search(cart.begin(), cart.end(), d0) && std::binary_search(cart.begin(), cart.end(), d2))
            CHECK(std::binary_search(cart.begin(), cart.end(), d1));
    }
}

TEST_CASE("p-Cartesian needs an inner fibration")
{
    auto h = share(horn(2, 1, 4));
    CHECK_THROWS_AS((void)is_p_cartesian(to_terminal(h), 0), Error);
    auto r = is_cartesian_fibration(to_terminal(h));
    CHECK(r.fails());
    CHECK(r.witness.at("stage") == "inner");
}
