#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "simpcalc/cat.hpp"
#include "simpcalc/hom.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"
#include "simpcalc/transfer.hpp"

using namespace simpcalc;

namespace {

CategoryPtr ptr(FiniteCategory c)
{
    return std::make_shared<const FiniteCategory>(std::move(c));
}

PresheafPtr box(int n, int m, Bound b)
{
    return share(box_product(simplex(n, b[0]), simplex(m, b[1])));
}

} // namespace

TEST_CASE("tag spellings round trip")
{
    for (auto t : {TransferTag::P1Star, TransferTag::I1Star, TransferTag::TLower, TransferTag::TUpper,
                   TransferTag::PPlusStar, TransferTag::IPlusStar, TransferTag::TauPlusLower,
                   TransferTag::TauPlusUpper, TransferTag::FlatStarProlong, TransferTag::ForgetProlong})
        CHECK(transfer_tag_from_string(to_string(t)) == t);
    for (auto p : {AdjunctionPair::P1I1, AdjunctionPair::TLowerUpper, AdjunctionPair::PPlusIPlus,
                   AdjunctionPair::TauPlus, AdjunctionPair::FlatForget, AdjunctionPair::ForgetSharp})
        CHECK(adjunction_from_string(to_string(p)) == p);
    CHECK_THROWS_AS((void)transfer_tag_from_string("t?"), Error);
}

TEST_CASE("i1* after p1* is the identity")
{
    for (const auto& s : {simplex(2, 3), horn(2, 1, 3), groupoid_nerve(1, 3), nerve(parallel_pair(), 3)}) {
        auto back = apply_transfer(TransferTag::I1Star, share(apply_transfer(TransferTag::P1Star, share(s)).object)).object;
        REQUIRE(back.level_count() == s.level_count());
        for (int idx = 0; idx < s.level_count(); ++idx)
            CHECK(back.size(idx) == s.size(idx));
        CHECK(isomorphic(share(back), share(s)));
    }
    auto m = share(sharp(simplex(1, 2)));
    auto mm = apply_transfer(TransferTag::IPlusStar, share(apply_transfer(TransferTag::PPlusStar, m).object)).object;
    CHECK(marked_count(mm) == marked_count(*m));
    CHECK_THROWS_AS((void)apply_transfer(TransferTag::P1Star, m), Error);
}

TEST_CASE("t_! on representables")
{
    const int k = 3;
    CHECK(isomorphic(t_lower(box(1, 0, {2, 2}), k).object, share(simplex(1, k))));
    for (int n = 0; n <= 1; ++n)
        for (int m = 0; m <= 1; ++m) {
            auto lower = t_lower(box(n, m, {2, 2}), k);
            CHECK(lower.exact);
            CHECK(isomorphic(lower.object, share(product(simplex(n, k), groupoid_nerve(m, k)))));
        }
    // G(2) = F(1) ∪ F(1) over F(0), and t_! keeps the pushout.
    auto g2 = share(build(parse_spec("G", {"2"}), Bound{3, 1}));
    CHECK(isomorphic(t_lower(g2, 3).object, share(spine(2, 3))));
    auto e1 = share(build(parse_spec("E", {"1"}), Bound{3, 1}));
    CHECK(isomorphic(t_lower(e1, 3).object, share(groupoid_nerve(1, 3))));
}

TEST_CASE("t_! levels do not depend on cells above the working bound")
{
    for (const auto& spec : {parse_spec("E", {"1"}), parse_spec("col", {"2"}), parse_spec("F", {"2"})}) {
        auto small = t_lower(share(build(spec, Bound{2, 2})), 2);
        auto large = t_lower(share(build(spec, Bound{4, 4})), 2);
        CHECK(small.exact);
        CHECK(isomorphic(small.object, large.object));
    }
    auto e1 = t_lower(share(build(parse_spec("E", {"1"}), Bound{1, 1})), 2);
    CHECK_FALSE(e1.exact);
}

TEST_CASE("t^! of Δ[1]")
{
    auto t = apply_transfer(TransferTag::TUpper, share(simplex(1, 3)), Bound{3, 2}).object;
    for (int n = 0; n <= 3; ++n)
        CHECK(t.size_at(n, 0) == n + 2);
    for (int m = 0; m <= 2; ++m)
        CHECK(t.size_at(0, m) == 2);
    CHECK(t.cosk()[0] == 1);
    CHECK(t.cosk()[1] == 1);
}

TEST_CASE("t^! of a nerve counts functors [n] × I[m] → C")
{
    for (const auto& c : {ptr(poset_category(1)), ptr(chaotic_groupoid(1)), ptr(cyclic_group(2)),
                          ptr(idempotent_category()), ptr(parallel_pair())}) {
        auto up = t_upper(share(nerve(*c, 2)), {2, 2});
        CHECK(up.exactness.exact());
        for (int n = 0; n <= 2; ++n)
            for (int m = 0; m <= 2; ++m) {
                auto shape = ptr(product_category(poset_category(n), chaotic_groupoid(m)));
                CHECK(up.object.size_at(n, m) == static_cast<int>(all_functors(shape, c).size()));
            }
        // Row 0 is the nerve itself.
        for (int n = 0; n <= 2; ++n)
            CHECK(up.object.size_at(n, 0) == nerve(*c, 2).size(n));
        CHECK(isomorphic(share(classification_diagram(*c, {2, 2})), share(up.object)));
        CHECK(is_coskeletal(up.object, up.object.cosk()).holds());
    }
}

TEST_CASE("t^! needs a certificate")
{
    auto s = simplex(1, 2);
    s.set_cosk(0, std::nullopt);
    CHECK_THROWS_AS((void)apply_transfer(TransferTag::TUpper, share(s)), Error);
    CHECK_THROWS_AS((void)apply_transfer(TransferTag::TUpper, box(1, 0, {1, 1})), Error);
}

TEST_CASE("t_! ⊣ t^! on F(1) and Δ[2]")
{
    auto f1 = share(build(parse_spec("F", {"1"}), Bound{2, 2}));
    auto r = verify_adjunction(AdjunctionPair::TLowerUpper, f1, share(simplex(2, 2)));
    CHECK(r.report.holds());
    CHECK(r.left_size == 6);
    CHECK(r.right_size == 6);
}

TEST_CASE("t_! ⊣ t^! on small bisimplicial sets and nerves")
{
    const std::vector<PresheafPtr> xs{box(1, 1, {2, 2}), share(build(parse_spec("E", {"1"}), Bound{2, 2})),
                                      share(build(parse_spec("G", {"2"}), Bound{2, 2})),
                                      share(build(parse_spec("col", {"1"}), Bound{2, 2}))};
    for (const auto& x : xs)
        for (const auto& c : {poset_category(1), chaotic_groupoid(1), cyclic_group(2)}) {
            auto r = verify_adjunction(AdjunctionPair::TLowerUpper, x, share(nerve(c, 2)));
            CHECK(r.report.holds());
            CHECK(r.left_size == r.right_size);
        }
}

TEST_CASE("p1* ⊣ i1* and the marked analogue")
{
    auto x = box(1, 1, {2, 1});
    auto r = verify_adjunction(AdjunctionPair::P1I1, share(simplex(1, 2)), x);
    CHECK(r.report.holds());
    // i1*(Δ[1]⊠Δ[1]) is Δ[1] × Δ[1]_0, two copies of Δ[1].
    CHECK(r.left_size == 6);

    auto mx = share(box_product(sharp(simplex(1, 2)), simplex(1, 1)));
    auto rm = verify_adjunction(AdjunctionPair::PPlusIPlus, share(sharp(simplex(1, 2))), mx);
    CHECK(rm.report.holds());
    CHECK(rm.left_size == 6);
    auto rf = verify_adjunction(AdjunctionPair::PPlusIPlus, share(sharp(simplex(1, 2))),
                                share(box_product(flat(simplex(1, 2)), simplex(1, 1))));
    CHECK(rf.report.holds());
    // Only the constant maps send the marked edge to a degenerate one.
    CHECK(rf.left_size == 4);
}

TEST_CASE("flat ⊣ forget ⊣ sharp")
{
    auto r = verify_adjunction(AdjunctionPair::FlatForget, share(simplex(2, 2)), share(sharp(simplex(1, 2))));
    CHECK(r.report.holds());
    CHECK(r.left_size == 4);
    auto s = verify_adjunction(AdjunctionPair::ForgetSharp, share(flat(simplex(1, 2))), share(simplex(1, 2)));
    CHECK(s.report.holds());
    CHECK(s.left_size == 3);
    auto b = verify_adjunction(AdjunctionPair::FlatForget, box(1, 1, {2, 1}), share(flat(*box(1, 0, {2, 1}))));
    CHECK(b.report.holds());
}

TEST_CASE("marked transfer")
{
    // (t⁺)_!(p⁺)*Δ[1]♯ = Δ[1]♯, so both sides count the marked edges of the
    // nerve of I[1], all four of them.
    auto x = share(p1_star(sharp(simplex(1, 2)), 1));
    auto y = share(sharp(nerve(chaotic_groupoid(1), 2)));
    auto r = verify_adjunction(AdjunctionPair::TauPlus, x, y);
    CHECK(r.report.holds());
    CHECK(r.left_size == 4);
    CHECK(r.right_size == 4);

    auto flat_y = share(flat(nerve(chaotic_groupoid(1), 2)));
    auto rf = verify_adjunction(AdjunctionPair::TauPlus, x, flat_y);
    CHECK(rf.report.holds());
    CHECK(rf.left_size == 2);

    for (const auto& s : {flat(nerve(poset_category(1), 2)), sharp(nerve(chaotic_groupoid(1), 2))}) {
        auto up = apply_transfer(TransferTag::TauPlusUpper, share(s), Bound{2, 1}).object;
        CHECK(is_separated(up).holds());
        CHECK(is_separated(to_raw(up)).holds());
    }
    // With every edge marked, the marked level is all of level (1, m).
    auto up = apply_transfer(TransferTag::TauPlusUpper, y, Bound{2, 1}).object;
    for (int m = 0; m <= 1; ++m)
        CHECK(static_cast<int>(marked_edges(up)[m].size()) == up.size_at(1, m));
}

TEST_CASE("composite identities")
{
    auto d2 = share(simplex(2, 3));
    auto unit = composite_unit(d2);
    CHECK_FALSE(unit.check());
    CHECK(unit.levelwise_bijective());

    std::vector<PresheafPtr> corpus{d2,
                                    share(horn(2, 1, 3)),
                                    share(boundary(2, 3)),
                                    share(groupoid_nerve(1, 3)),
                                    share(nerve(cyclic_group(2), 3)),
                                    share(sharp(simplex(1, 3))),
                                    share(build(parse_spec("marked", {"1+"}), 2))};
    auto r = composite_identity_suite(corpus);
    CHECK(r.holds());
    CHECK(composite_identity_suite({}).holds());
}

TEST_CASE("transfer outputs are separated")
{
    auto m = share(box_product(sharp(simplex(1, 2)), simplex(1, 1)));
    CHECK(is_separated(apply_transfer(TransferTag::IPlusStar, m).object).holds());
    CHECK(is_separated(apply_transfer(TransferTag::TauPlusLower, m).object).holds());
    CHECK(is_separated(apply_transfer(TransferTag::PPlusStar, share(flat(simplex(2, 2)))).object).holds());
    CHECK(is_separated(apply_transfer(TransferTag::FlatStarProlong, box(1, 1, {2, 1})).object).holds());
}
