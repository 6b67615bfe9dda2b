#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simpcalc/hom.hpp"
#include "simpcalc/mapping.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/presheaf.hpp"
#include "simpcalc/standard.hpp"

using namespace simpcalc;
using K = StandardObjectSpec::Kind;

namespace {

// Monotone maps [n] -> [m], counted by brute force.
long monotone_maps(int n, int m)
{
    long count = 0;
    std::vector<int> f(n + 1, 0);
    std::function<void(int, int)> go = [&](int pos, int lo) {
        if (pos > n) {
            ++count;
            return;
        }
        for (int v = lo; v <= m; ++v)
            go(pos + 1, v);
    };
    go(0, 0);
    return count;
}

PresheafPtr const_row(const Presheaf& s, int d1)
{
    return share(box_product(s, point(d1)));
}

} // namespace

TEST_CASE("hom between simplices counts monotone maps")
{
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m <= 3; ++m) {
            auto h = enumerate_hom(share(simplex(n, 4)), share(simplex(m, 4)));
            CHECK(static_cast<long>(h.size()) == monotone_maps(n, m));
            CHECK(h.exactness.exact());
            for (const auto& f : h.elements)
                CHECK_FALSE(f.check());
        }
}

TEST_CASE("hom examples")
{
    CHECK(count_hom(simplex(1, 3), simplex(1, 3)) == 3);
    CHECK(count_hom(spine(2, 3), simplex(2, 3)) == 10);
    CHECK(marked_hom(share(sharp(simplex(1, 2))), share(flat(simplex(1, 2)))).size() == 2);
}

TEST_CASE("hom count is invariant under relabelling the target")
{
    auto x = share(spine(3, 3));
    for (auto y : {groupoid_nerve(2, 3), simplex(2, 3), horn(3, 1, 3)}) {
        auto a = enumerate_hom(x, share(y)).size();
        auto b = enumerate_hom(x, share(relabel(y))).size();
        CHECK(a == b);
    }
}

TEST_CASE("hom into a coskeletal target is stable in the bound")
{
    auto x3 = share(product(simplex(1, 3), simplex(1, 3)));
    auto x4 = share(product(simplex(1, 4), simplex(1, 4)));
    for (int l = 1; l <= 2; ++l) {
        auto h3 = enumerate_hom(x3, share(groupoid_nerve(l, 3)));
        auto h4 = enumerate_hom(x4, share(groupoid_nerve(l, 4)));
        CHECK(h3.exactness.exact());
        CHECK(h3.size() == h4.size());
    }
}

TEST_CASE("exactness flags")
{
    auto j = share(groupoid_nerve(1, 3));
    auto e = enumerate_hom(j, share(groupoid_nerve(2, 3))).exactness;
    CHECK(e.kind == Exactness::Kind::ByCoskeletality);
    Presheaf loose = simplex(2, 3);
    loose.set_cosk(0, std::nullopt);
    auto b = enumerate_hom(j, share(loose)).exactness;
    CHECK(b.kind == Exactness::Kind::Bounded);
    CHECK(b.describe() == "bounded-at 3");
}

TEST_CASE("isomorphism search")
{
    auto a = share(product(simplex(1, 3), simplex(1, 3)));
    auto b = share(product(simplex(1, 3), simplex(1, 3)));
    auto iso = find_isomorphism(a, b);
    REQUIRE(iso);
    CHECK(iso->levelwise_bijective());
    CHECK_FALSE(isomorphic(share(simplex(2, 3)), share(groupoid_nerve(1, 3))));
}

TEST_CASE("maps between nerves are determined by vertices")
{
    auto x = share(simplex(2, 3));
    auto y = share(groupoid_nerve(1, 3));
    auto f = map_from_vertices(x, y, {1, 0, 1});
    REQUIRE(f);
    CHECK(f->target().name(2, (*f)(2, x->find(2, "012"))) == "101");
}

TEST_CASE("currying")
{
    auto a = share(simplex(1, 3));
    for (auto bc : {std::pair{simplex(1, 3), simplex(2, 3)}, std::pair{spine(2, 3), groupoid_nerve(1, 3)}}) {
        auto b = share(bc.first);
        auto c = share(bc.second);
        const auto lhs = count_hom(product(*a, *b), *c);
        auto map = mapping_space(b, c, 3);
        CHECK(map.exactness.exact());
        CHECK(count_hom(*a, map.object) == lhs);
    }
}

TEST_CASE("mapping spaces")
{
    auto x = share(groupoid_nerve(1, 3));
    auto m = mapping_space(share(point(3)), x, 3);
    for (int k = 0; k <= 3; ++k)
        CHECK(m.object.size(k) == x->size(k));
    CHECK(isomorphic(share(m.object), x));

    auto y = share(simplex(2, 3));
    auto ms = mapping_space(share(spine(2, 3)), y, 2);
    CHECK(static_cast<std::size_t>(ms.object.size(0)) == count_hom(spine(2, 3), *y));

    // Yoneda in the first direction: Map(F(1), X)_0 = X_{1,0}.
    auto X = share(build({K::FGen, 2}, {2, 2}));
    auto F1 = share(build({K::FGen, 1}, {2, 2}));
    auto yo = mapping_space(F1, X, 2);
    CHECK(yo.object.size(0) == X->size_at(1, 0));

    auto marked = mapping_space(share(flat(simplex(1, 2))), share(sharp(simplex(1, 2))), 1);
    CHECK(marked.object.size(0) == 3);
    // Level 1 uses the sharp cylinder: every map Δ[1]×Δ[1] → Δ[1] qualifies.
    CHECK(static_cast<std::size_t>(marked.object.size(1)) == count_hom(product(simplex(1, 2), simplex(1, 2)), simplex(1, 2)));
}

TEST_CASE("exponential")
{
    auto pt = share(point2({2, 2}));
    auto y = const_row(simplex(1, 2), 2);
    auto e = exponential(pt, y, {2, 2});
    CHECK(isomorphic(share(e.object), y));

    auto f1 = share(build({K::FGen, 1}, {2, 2}));
    auto e2 = exponential(f1, y, {1, 1});
    CHECK(e2.object.size_at(0, 0) == 3);
    auto ev = evaluation(e2);
    CHECK_FALSE(ev.check());

    // Currying across the exponential at level (0,0).
    auto x = share(build({K::FBoundary, 2}, {2, 2}));
    auto z = share(build({K::EGen, 1}, {2, 2}));
    auto ex = exponential(x, z, {2, 2});
    CHECK(static_cast<std::size_t>(ex.object.size_at(0, 0)) == count_hom(*x, *z));
}

TEST_CASE("matching objects")
{
    auto x = const_row(simplex(1, 3), 2);
    auto m0 = matching_object(x, 0);
    for (int m = 0; m <= 2; ++m)
        CHECK(m0.matching.object.size(m) == 1);
    auto m1 = matching_object(x, 1);
    for (int m = 0; m <= 2; ++m)
        CHECK(m1.matching.object.size(m) == x->size_at(0, m) * x->size_at(0, m));
    auto m2 = matching_object(x, 2);
    int triples = 0;
    for (int a = 0; a <= 1; ++a)
        for (int b = a; b <= 1; ++b)
            for (int c = b; c <= 1; ++c)
                ++triples;
    CHECK(m2.matching.object.size(0) == triples);
    CHECK(triples == 4);

    // The matching map of a coskeletal-in-each-row object at n = 2 is a
    // bijection since Δ[1] is 1-coskeletal.
    for (int m = 0; m <= 2; ++m) {
        std::vector<int> v = m2.map[m];
        std::sort(v.begin(), v.end());
        CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
        CHECK(static_cast<int>(v.size()) == m2.matching.object.size(m));
    }
}

TEST_CASE("relative matching map of the identity is bijective")
{
    auto x = const_row(groupoid_nerve(1, 2), 1);
    auto r = relative_matching(identity_map(x), 1);
    CHECK(r.bijective);
}

TEST_CASE("coskeletality checks")
{
    CHECK(is_coskeletal(simplex(1, 3), 0).fails());
    CHECK(is_coskeletal(groupoid_nerve(1, 4), 2).holds());
    CHECK(is_coskeletal(simplex(2, 4), 2).holds());
}
