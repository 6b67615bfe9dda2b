#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "simpcalc/hom.hpp"
#include "simpcalc/json_io.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/presheaf.hpp"
#include "simpcalc/standard.hpp"

using namespace simpcalc;

namespace {

// Strictly increasing chains of length k+1 in the poset [p]x[q]: the
// nondegenerate k-simplices of the nerve of that poset.
int increasing_chains(int p, int q, int k)
{
    std::vector<std::pair<int, int>> pts;
    for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b)
            pts.emplace_back(a, b);
    int count = 0;
    std::function<void(int, int)> go = [&](int len, int last) {
        if (len == k + 1) {
            ++count;
            return;
        }
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
            if (last >= 0) {
                const auto& u = pts[last];
                const auto& v = pts[i];
                if (!(v.first >= u.first && v.second >= u.second && v != u))
                    continue;
            }
            go(len + 1, i);
        }
    };
    go(0, -1);
    return count;
}

} // namespace

TEST_CASE("product of simplices matches the poset-chain count")
{
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q) {
            auto prod = product(simplex(p, 4), simplex(q, 4));
            for (int k = 0; k <= 4; ++k)
                CHECK(prod.nondegenerate_count(k) == increasing_chains(p, q, k));
        }
    auto sq = product(simplex(1, 3), simplex(1, 3));
    CHECK(sq.nondegenerate_count(2) == 2);
}

TEST_CASE("product cell counts multiply")
{
    auto a = groupoid_nerve(1, 3);
    auto b = horn(2, 1, 3);
    auto prod = product(a, b);
    for (int k = 0; k <= 3; ++k)
        CHECK(prod.size(k) == a.size(k) * b.size(k));
}

TEST_CASE("unit of product")
{
    auto unit = share(product(point(3), simplex(2, 3)));
    CHECK(isomorphic(unit, share(simplex(2, 3))));
}

TEST_CASE("product markings are pairs of markings")
{
    auto m = product(sharp(simplex(1, 2)), flat(simplex(1, 2)));
    CHECK(marked_count(m) == 6);
}

TEST_CASE("coproduct of two points")
{
    Diagram d;
    auto pt = share(point(2));
    d.add_object(share(empty_presheaf(Shape::Simplex, {2, 0})), "e");
    d.add_object(pt, "a");
    d.add_object(pt, "b");
    auto r = colimit(d);
    CHECK(r.object.size(0) == 2);
    CHECK(r.object.nondegenerate_count(1) == 0);
}

TEST_CASE("coequalizer of the two vertex inclusions is a loop")
{
    Diagram d;
    auto v = share(point(2));
    auto e = share(simplex(1, 2));
    d.add_object(v, "v");
    d.add_object(e, "e");
    d.add_arrow(0, 1, canonical_inclusion({StandardObjectSpec::Kind::Simplex, 0}, {StandardObjectSpec::Kind::Simplex, 1},
                                          {2, 0}, 0));
    d.add_arrow(0, 1, canonical_inclusion({StandardObjectSpec::Kind::Simplex, 0}, {StandardObjectSpec::Kind::Simplex, 1},
                                          {2, 0}, 1));
    auto r = colimit(d);
    CHECK(r.object.size(0) == 1);
    CHECK(r.object.nondegenerate_count(1) == 1);
    CHECK(r.object.nondegenerate_count(2) == 0);
}

TEST_CASE("gluing two edges end to start gives the spine")
{
    Diagram d;
    auto v = share(point(3));
    auto e = share(simplex(1, 3));
    using K = StandardObjectSpec::Kind;
    d.add_object(v, "v");
    d.add_object(e, "a");
    d.add_object(e, "b");
    d.add_arrow(0, 1, canonical_inclusion({K::Simplex, 0}, {K::Simplex, 1}, {3, 0}, 1));
    d.add_arrow(0, 2, canonical_inclusion({K::Simplex, 0}, {K::Simplex, 1}, {3, 0}, 0));
    auto r = colimit(d);
    CHECK(isomorphic(share(r.object), share(spine(2, 3))));
    for (int o = 0; o < 3; ++o)
        CHECK_FALSE(PresheafMap(d.objects[o], share(r.object), r.coprojections[o]).check());
}

TEST_CASE("one-object colimit is isomorphic to its input")
{
    for (auto x : {simplex(2, 3), groupoid_nerve(2, 3), horn(3, 0, 3)}) {
        Diagram d;
        d.add_object(share(x), "x");
        auto r = colimit(d);
        CHECK(isomorphic(share(r.object), share(x)));
    }
}

TEST_CASE("pullbacks")
{
    auto x = share(simplex(2, 2));
    auto id = identity_map(x);
    auto pb = limit_level0(id, id);
    CHECK(isomorphic(share(pb.object), x));

    using K = StandardObjectSpec::Kind;
    auto v0 = canonical_inclusion({K::Simplex, 0}, {K::Simplex, 1}, {2, 0}, 0);
    auto fiber = limit_level0(v0, v0);
    CHECK(fiber.object.size(0) == 1);

    // Brute-force pair count of the pullback of the two vertex maps of Δ[1]
    // over the point at every level.
    auto e = share(simplex(1, 2));
    auto t = to_terminal(e);
    auto sq = limit_level0(t, t);
    for (int k = 0; k <= 2; ++k) {
        int pairs = 0;
        for (int a = 0; a < e->size(k); ++a)
            for (int b = 0; b < e->size(k); ++b)
                pairs += t(k, a) == t(k, b);
        CHECK(sq.object.size(k) == pairs);
    }
}

TEST_CASE("separatedness")
{
    CHECK(is_separated(sharp(simplex(2, 2))).holds());
    CHECK(is_separated(flat(simplex(2, 2))).holds());
    auto raw = to_raw(flat(simplex(1, 1)));
    raw.plus_to_edge[0].push_back(raw.plus_to_edge[0][0]);
    raw.plus_names[0].push_back("extra");
    auto r = is_separated(raw);
    REQUIRE(r.fails());
    CHECK(r.witness["plus_cells"][1] == "extra");
    CHECK(isomorphic(share(separate(raw)), share(flat(simplex(1, 1)))));
}

TEST_CASE("identity validation rejects a broken relation")
{
    std::mt19937_64 rng(7);
    const auto base = groupoid_nerve(1, 3);
    int rejected = 0;
    for (int trial = 0; trial < 40; ++trial) {
        Presheaf p = base;
        const int k = 1 + static_cast<int>(rng() % 3);
        const int c = static_cast<int>(rng() % p.size(k));
        const int i = static_cast<int>(rng() % (k + 1));
        const int old = p.face(k, 0, i, c);
        p.set_face(k, 0, i, c, (old + 1 + static_cast<int>(rng() % (p.size(k - 1) - 1))) % p.size(k - 1));
        try {
            p.finalize();
        }
        catch (const Error&) {
            ++rejected;
        }
    }
    CHECK(rejected == 40);
}

TEST_CASE("operator action")
{
    auto s = simplex(3, 3);
    const int top = s.find(3, "0123");
    CHECK(s.name(1, act(s, 3, 0, top, {0, 2})) == "02");
    CHECK(s.name(3, act(s, 3, 0, top, {0, 1, 2, 3})) == "0123");
    auto e = simplex(1, 3);
    const int edge = e.find(1, "01");
    CHECK(e.name(3, act(e, 1, 0, edge, {0, 0, 1, 1})) == "0011");
    CHECK(e.name(0, act(e, 1, 0, edge, {1})) == "1");
}

TEST_CASE("json round trip is byte-identical")
{
    using K = StandardObjectSpec::Kind;
    for (auto p : {simplex(2, 3), groupoid_nerve(1, 2), build({K::FGen, 1}, {2, 2}), sharp(horn(2, 1, 2)),
                   flat(build({K::EGen, 1}, {2, 1}))}) {
        auto j = to_json(p);
        auto text = canonical_dump(j);
        auto back = presheaf_from_json(nlohmann::json::parse(text));
        CHECK(canonical_dump(to_json(back)) == text);
    }
    auto f = canonical_inclusion({K::Horn, 2, 1}, {K::Simplex, 2}, {2, 0});
    auto text = canonical_dump(to_json(f));
    CHECK(canonical_dump(to_json(map_from_json(nlohmann::json::parse(text)))) == text);
}

TEST_CASE("relabel keeps the structure")
{
    auto x = share(groupoid_nerve(2, 2));
    auto r = share(relabel(*x));
    CHECK(r->name(0, 0) == "c0_0");
    CHECK(isomorphic(x, r));
}
