#include "simpcalc/lifting.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"

namespace simpcalc {

std::string_view to_string(FibrationClass c)
{
    switch (c) {
    case FibrationClass::Kan: return "kan";
    case FibrationClass::Inner: return "inner";
    case FibrationClass::Left: return "left";
    case FibrationClass::Right: return "right";
    case FibrationClass::TrivialKan: return "trivial";
    case FibrationClass::MarkedAnodyneShadow: return "marked-anodyne";
    }
    return "?";
}

FibrationClass fibration_class_from_string(std::string_view s)
{
    for (auto c : {FibrationClass::Kan, FibrationClass::Inner, FibrationClass::Left, FibrationClass::Right,
                   FibrationClass::TrivialKan, FibrationClass::MarkedAnodyneShadow})
        if (to_string(c) == s)
            return c;
    throw Error("unknown fibration class '" + std::string(s) + "'");
}

namespace {

nlohmann::json map_witness(const Presheaf& src, const Presheaf& tgt, const Components& comps)
{
    nlohmann::json j = nlohmann::json::object();
    for (int idx = 0; idx < src.level_count(); ++idx)
        for (int c = 0; c < src.size(idx); ++c)
            if (!src.is_degenerate(idx, c))
                j[src.name(idx, c)] = tgt.name(idx, comps[idx][c]);
    return j;
}

Components blank(const Presheaf& x)
{
    Components c(x.level_count());
    for (int idx = 0; idx < x.level_count(); ++idx)
        c[idx].assign(x.size(idx), -1);
    return c;
}

// Pushes values along i: out[i(a)] = value(a). False on a conflict.
bool transport(const PresheafMap& i, const std::function<int(int, int)>& value, Components& out)
{
    const Presheaf& a = i.source();
    for (int idx = 0; idx < a.level_count(); ++idx)
        for (int c = 0; c < a.size(idx); ++c) {
            const int b = i(idx, c);
            const int v = value(idx, c);
            if (out[idx][b] >= 0 && out[idx][b] != v)
                return false;
            out[idx][b] = v;
        }
    return true;
}

} // namespace

LiftResult solve_lift(const LiftingProblem& p)
{
    const std::string def = "lift in a commutative square";
    const Presheaf& A = p.i.source();
    for (int idx = 0; idx < A.level_count(); ++idx)
        for (int c = 0; c < A.size(idx); ++c)
            if (p.f(idx, p.top(idx, c)) != p.bottom(idx, p.i(idx, c)))
                throw Error("solve_lift: the square does not commute");
    Components fixed = blank(p.i.target());
    if (!transport(p.i, [&](int idx, int c) { return p.top(idx, c); }, fixed))
        return {CheckReport::failure(def, {{"reason", "top is not constant on the fibres of i"}}), std::nullopt};
    HomConstraints k;
    k.fixed = &fixed;
    k.source_to_base = &p.bottom;
    k.target_to_base = &p.f;
    auto lift = HomEngine(p.f.source_ptr()).first(p.i.target(), k);
    if (!lift)
        return {CheckReport::failure(def, {{"reason", "no diagonal"},
                                           {"top", map_witness(A, p.top.target(), p.top.components())},
                                           {"bottom", map_witness(p.i.target(), p.bottom.target(),
                                                                  p.bottom.components())}}),
                std::nullopt};
    PresheafMap diag(p.i.target_ptr(), p.f.source_ptr(), std::move(*lift));
    auto e = hom_exactness(p.i.target(), p.f.source(), p.i.target().bound());
    nlohmann::json w = {{"diagonal", map_witness(diag.source(), diag.target(), diag.components())}};
    if (e.exact()) {
        auto r = CheckReport::success(def, {e.describe()});
        r.witness = w;
        return {r, diag};
    }
    return {CheckReport::unknown(def, {"diagonal exists between truncations; " + e.describe()}, w), diag};
}

std::vector<Generator> generators(FibrationClass c, int cap, int d)
{
    using K = StandardObjectSpec::Kind;
    std::vector<Generator> out;
    const Bound b{d, 0};
    auto horn_gen = [&](int n, int i) {
        out.push_back({"Horn(" + std::to_string(n) + "," + std::to_string(i) + ")",
                       canonical_inclusion({K::Horn, n, i}, {K::Simplex, n}, b), n});
    };
    switch (c) {
    case FibrationClass::TrivialKan:
        for (int n = 0; n <= cap; ++n)
            out.push_back({"Boundary(" + std::to_string(n) + ")",
                           canonical_inclusion({K::Boundary, n}, {K::Simplex, n}, b), n});
        break;
    case FibrationClass::Kan:
    case FibrationClass::Inner:
    case FibrationClass::Left:
    case FibrationClass::Right:
        for (int n = 1; n <= cap; ++n)
            for (int i = 0; i <= n; ++i) {
                const bool keep = c == FibrationClass::Kan || (c == FibrationClass::Inner && 0 < i && i < n)
                    || (c == FibrationClass::Left && i < n) || (c == FibrationClass::Right && 0 < i);
                if (keep)
                    horn_gen(n, i);
            }
        break;
    case FibrationClass::MarkedAnodyneShadow: {
        auto marked_incl = [&](Presheaf a, Presheaf bb, std::string name, int n) {
            auto pa = share(std::move(a));
            auto pb = share(std::move(bb));
            std::vector<int> id(n + 1);
            std::iota(id.begin(), id.end(), 0);
            out.push_back({std::move(name), sequence_map(pa, pb, id), n});
        };
        for (int n = 2; n <= cap; ++n)
            for (int i = 1; i < n; ++i)
                marked_incl(flat(horn(n, i, d)), flat(simplex(n, d)),
                            "FlatHorn(" + std::to_string(n) + "," + std::to_string(i) + ")", n);
        for (int n = 2; n <= cap; ++n) {
            const std::string last = std::to_string(n - 1) + std::to_string(n);
            marked_incl(with_markings(horn(n, n, d), {{last}}), with_markings(simplex(n, d), {{last}}),
                        "MarkedRightHorn(" + std::to_string(n) + ")", n);
        }
        if (cap >= 2)
            marked_incl(with_markings(simplex(2, d), {{"01", "12"}}), sharp(simplex(2, d)), "SharpTriangle", 2);
        break;
    }
    }
    return out;
}

CheckReport has_rlp(const PresheafMap& f, FibrationClass c, int cap)
{
    const std::string def = "right lifting property against " + std::string(to_string(c)) + " generators";
    const Presheaf& X = f.source();
    const Presheaf& Y = f.target();
    if (X.bisimplicial())
        throw Error("has_rlp expects simplicial presheaves");
    if (X.bound() != Y.bound())
        throw Error("has_rlp: source and target must share a bound");
    if ((c == FibrationClass::MarkedAnodyneShadow) != X.marked_shape())
        throw Error("has_rlp: marked generators need marked presheaves and conversely");
    const int d = X.dim();
    std::vector<std::string> notes;
    int eff = cap;
    if (eff > d) {
        eff = d;
        notes.push_back("cap lowered to the bound " + std::to_string(d));
    }
    bool exact = false;
    if (X.cosk()[0] && Y.cosk()[0]) {
        const int cc = std::max(*X.cosk()[0], *Y.cosk()[0]);
        exact = eff >= (c == FibrationClass::TrivialKan ? cc : cc + 1);
        notes.push_back("coskeletal degree " + std::to_string(cc) + ", cap " + std::to_string(eff)
                        + (exact ? ": exact" : ": cap below what coskeletality needs"));
    }
    else
        notes.push_back("no coskeletality certificate: generators checked only through the cap");

    const HomEngine ex(f.source_ptr());
    const HomEngine ey(f.target_ptr());
    long squares = 0;
    for (const auto& g : generators(c, eff, d)) {
        const Presheaf& A = g.inclusion.source();
        const Presheaf& B = g.inclusion.target();
        std::optional<nlohmann::json> witness;
        ex.search(A, {}, [&](const Components& top) {
            Components fixed_bottom = blank(B);
            if (!transport(g.inclusion, [&](int idx, int cell) { return f(idx, top[idx][cell]); }, fixed_bottom))
                return true;
            Components fixed_lift = blank(B);
            if (!transport(g.inclusion, [&](int idx, int cell) { return top[idx][cell]; }, fixed_lift)) {
                witness = nlohmann::json{{"generator", g.name}, {"top", map_witness(A, X, top)}};
                return false;
            }
            HomConstraints kb;
            kb.fixed = &fixed_bottom;
            ey.search(B, kb, [&](const Components& bottom) {
                ++squares;
                PresheafMap bmap(g.inclusion.target_ptr(), f.target_ptr(), bottom);
                HomConstraints kl;
                kl.fixed = &fixed_lift;
                kl.source_to_base = &bmap;
                kl.target_to_base = &f;
                if (!ex.first(B, kl)) {
                    witness = nlohmann::json{{"generator", g.name},
                                             {"top", map_witness(A, X, top)},
                                             {"bottom", map_witness(B, Y, bottom)}};
                    return false;
                }
                return true;
            });
            return !witness;
        });
        if (witness)
            return CheckReport::failure(def, *witness, notes);
    }
    notes.push_back(std::to_string(squares) + " squares checked");
    if (exact)
        return CheckReport::success(def, notes);
    return CheckReport::unknown(def, notes);
}

CheckReport is_quasicategory(const PresheafPtr& s, int cap)
{
    auto r = has_rlp(to_terminal(s), FibrationClass::Inner, cap);
    r.definition = "quasi-category: inner horn fillers";
    return r;
}

std::vector<int> homotopy_classes(const Presheaf& s)
{
    if (s.dim() < 1)
        return {};
    const int ne = s.size(1);
    std::vector<int> parent(ne);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    if (s.dim() >= 2)
        for (int c = 0; c < s.size(2); ++c) {
            const int d0 = s.face(2, 0, 0, c), d1 = s.face(2, 0, 1, c), d2 = s.face(2, 0, 2, c);
            const int y = s.face(1, 0, 0, d2);
            if (d0 != s.degeneracy(0, 0, 0, y))
                continue;
            int a = find(d1), b = find(d2);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int> cls(ne);
    for (int e = 0; e < ne; ++e)
        cls[e] = find(e);
    return cls;
}

EdgeSet hoequiv_edges(const PresheafPtr& sp)
{
    const Presheaf& s = *sp;
    if (s.marked_shape() || s.bisimplicial())
        throw Error("hoequiv_edges expects a simplicial set");
    EdgeSet out;
    if (s.dim() < 2)
        throw Error("hoequiv_edges needs the bound to reach 2");
    auto q = is_quasicategory(sp, std::min(3, s.dim()));
    if (q.fails())
        throw Error("hoequiv_edges: not a quasi-category: " + q.witness.dump());
    out.exact = q.holds() && s.cosk()[0] && *s.cosk()[0] <= 2;
    out.notes.push_back(std::string("quasi-category check ") + std::string(to_string(q.verdict)));
    const auto cls = homotopy_classes(s);
    const int ne = s.size(1);
    std::vector<char> left(ne, 0), right(ne, 0); // class has a left / right inverse
    for (int c = 0; c < s.size(2); ++c) {
        const int d0 = s.face(2, 0, 0, c), d1 = s.face(2, 0, 1, c), d2 = s.face(2, 0, 2, c);
        auto is_identity_class = [&](int e) {
            const int v = s.face(1, 0, 0, e);
            return s.face(1, 0, 1, e) == v && cls[e] == cls[s.degeneracy(0, 0, 0, v)];
        };
        if (is_identity_class(d1)) {
            left[cls[d2]] = 1;  // d0 ∘ d2 ~ id: d2 has a left inverse
            right[cls[d0]] = 1; // and d0 has a right inverse
        }
    }
    for (int e = 0; e < ne; ++e)
        if (left[cls[e]] && right[cls[e]])
            out.edges.push_back(e);
    return out;
}

} // namespace simpcalc
