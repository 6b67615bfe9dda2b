#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "simpcalc/hom.hpp"
#include "simpcalc/presheaf.hpp"
#include "simpcalc/standard.hpp"

using namespace simpcalc;
using K = StandardObjectSpec::Kind;

namespace {

long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Sequences of length k+1 over {0..l} with no two consecutive entries equal.
int alternating(int l, int k)
{
    int count = 0;
    std::vector<int> seq(k + 1, 0);
    std::function<void(int)> go = [&](int pos) {
        if (pos > k) {
            ++count;
            return;
        }
        for (int v = 0; v <= l; ++v) {
            if (pos > 0 && seq[pos - 1] == v)
                continue;
            seq[pos] = v;
            go(pos + 1);
        }
    };
    go(0);
    return count;
}

} // namespace

TEST_CASE("simplex has binomially many nondegenerate cells")
{
    for (int n = 0; n <= 4; ++n) {
        auto s = simplex(n, 5);
        for (int k = 0; k <= 5; ++k)
            CHECK(s.nondegenerate_count(k) == binomial(n + 1, k + 1));
    }
}

TEST_CASE("J[l] nondegenerate cells are alternating sequences")
{
    auto j1 = groupoid_nerve(1, 3);
    for (int k = 0; k <= 3; ++k)
        CHECK(j1.nondegenerate_count(k) == 2);
    for (int l = 0; l <= 2; ++l) {
        auto j = groupoid_nerve(l, 4);
        for (int k = 0; k <= 4; ++k)
            CHECK(j.nondegenerate_count(k) == alternating(l, k));
    }
}

TEST_CASE("spines")
{
    auto sp = spine(2, 2);
    CHECK(sp.size(0) == 3);
    CHECK(sp.nondegenerate_count(1) == 2);
    CHECK(sp.nondegenerate_count(2) == 0);
    for (int n = 1; n <= 4; ++n)
        CHECK(spine(n, 3).nondegenerate_count(1) == n);
}

TEST_CASE("G(3) edges satisfy the gap bound")
{
    auto g = build({K::GGen, 3}, {2, 1});
    int expected = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = a; b <= 3; ++b)
            expected += (b - a <= 1);
    CHECK(expected == 7);
    CHECK(g.size_at(1, 0) == expected);
}

TEST_CASE("horn and boundary cells")
{
    auto h = horn(2, 1, 2);
    CHECK(h.nondegenerate_count(1) == 2);
    CHECK(h.find(1, "02") < 0);
    auto b = boundary(3, 3);
    CHECK(b.nondegenerate_count(2) == 4);
    CHECK(b.nondegenerate_count(3) == 0);
}

TEST_CASE("certificates verify")
{
    std::vector<Presheaf> objs = {simplex(0, 4), simplex(2, 5), boundary(1, 4), boundary(2, 5), horn(2, 1, 5),
                                  horn(3, 0, 5), spine(3, 4),   groupoid_nerve(1, 4), groupoid_nerve(2, 4),
                                  build({K::FGen, 2}, {4, 2}), build({K::EGen, 1}, {3, 2}),
                                  build({K::ConstCol, 2}, {2, 4})};
    for (const auto& x : objs)
        CHECK(is_coskeletal(x, x.cosk()).holds());
    CHECK(is_coskeletal(groupoid_nerve(1, 4), 2).holds());
    CHECK(is_coskeletal(simplex(1, 3), 0).fails());
    CHECK(is_coskeletal(horn(2, 1, 4), 1).holds());
    CHECK(is_coskeletal(boundary(2, 4), 1).fails());
}

TEST_CASE("canonical inclusions are injective and preserve markings")
{
    const Bound b{3, 2};
    std::vector<std::pair<StandardObjectSpec, StandardObjectSpec>> pairs = {
        {{K::Horn, 2, 1}, {K::Simplex, 2}},   {{K::Boundary, 3}, {K::Simplex, 3}},
        {{K::Spine, 3}, {K::Simplex, 3}},     {{K::GGen, 3}, {K::FGen, 3}},
        {{K::FBoundary, 2}, {K::FGen, 2}},    {{K::FHorn, 2, 0}, {K::FGen, 2}},
        {{K::FGen, 0}, {K::EGen, 1}},         {{K::FGen, 0}, {K::FGen, 2}},
        {{K::Simplex, 1}, {K::GroupoidNerve, 1}}, {{K::TauObj, 1}, {K::TauObj, 1, 0, true}}};
    for (const auto& [sub, sup] : pairs) {
        auto f = canonical_inclusion(sub, sup, b);
        CHECK_FALSE(f.check());
        CHECK(f.levelwise_injective());
    }
    CHECK_THROWS_AS((void)canonical_inclusion({K::Simplex, 2}, {K::Horn, 2, 1}, b), Error);
}

TEST_CASE("generator examples")
{
    auto h = canonical_inclusion({K::Horn, 2, 1}, {K::Simplex, 2}, {2, 0});
    std::set<std::string> hit;
    for (int c : h.components()[1])
        hit.insert(h.target().name(1, c));
    CHECK(hit.count("02") == 0);
    CHECK(hit.size() == 5);

    auto v = canonical_inclusion({K::FGen, 0}, {K::FGen, 2}, {2, 1});
    CHECK(v.target().name(0, v(0, 0)) == "2|0");

    auto j = canonical_inclusion({K::Simplex, 1}, {K::GroupoidNerve, 1}, {3, 0});
    int nondeg = 0;
    for (int c : j.components()[1])
        nondeg += !j.target().is_degenerate(1, c);
    CHECK(nondeg == 1);
}

TEST_CASE("first row of E(1) is J[1]")
{
    auto e = build({K::EGen, 1}, {3, 2});
    auto r = share(row(e, 0));
    CHECK(isomorphic(r, share(groupoid_nerve(1, 3))));
}

TEST_CASE("marked generators")
{
    auto t = build({K::TauObj, 1, 0, true}, 2);
    CHECK(t.shape() == Shape::MarkedSimplex);
    int marked = 0;
    for (int c = 0; c < t.size(1); ++c)
        marked += t.is_marked(1, c);
    CHECK(marked == 3);
    auto f = build({K::MarkedGen, 2}, 2);
    marked = 0;
    for (int c = 0; c < f.size(1); ++c)
        marked += f.is_marked(1, c);
    CHECK(marked == 3);
}

TEST_CASE("spec parsing")
{
    auto s = parse_spec("horn", {"3", "1"});
    CHECK(s.kind == K::Horn);
    CHECK(s.describe() == "Horn(3,1)");
    CHECK(parse_spec("tau", {"1+"}).plus);
    CHECK_THROWS_AS((void)parse_spec("cube", {"1"}), Error);
}
