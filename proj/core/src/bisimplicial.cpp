#include "simpcalc/bisimplicial.hpp"

#include <map>
#include <numeric>
#include <set>

#include "simpcalc/hom.hpp"
#include "simpcalc/mapping.hpp"
#include "simpcalc/standard.hpp"

namespace simpcalc {

namespace {

// Whether every degeneracy s_0 in direction dir is a bijection between
// consecutive levels; reports the first level where it is not.
std::optional<std::array<int, 2>> first_nonconstant(const Presheaf& x, int dir)
{
    const Bound& b = x.bound();
    for (int k = 0; k <= b[0]; ++k)
        for (int l = 0; l <= b[1]; ++l) {
            const int lower_k = dir == 0 ? k - 1 : k, lower_l = dir == 1 ? l - 1 : l;
            if (lower_k < 0 || lower_l < 0)
                continue;
            const int lo = x.level_index(lower_k, lower_l), hi = x.level_index(k, l);
            if (x.size(lo) != x.size(hi))
                return std::array<int, 2>{k, l};
            std::vector<char> seen(x.size(hi), 0);
            for (int c = 0; c < x.size(lo); ++c) {
                const int d = x.degeneracy(lo, dir, 0, c);
                if (seen[d])
                    return std::array<int, 2>{k, l};
                seen[d] = 1;
            }
        }
    return std::nullopt;
}

std::vector<int> digits(const std::string& name)
{
    std::vector<int> out;
    for (char ch : name) {
        if (ch == '|')
            break;
        out.push_back(ch - '0');
    }
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<int> components_of(const Presheaf& s)
{
    UnionFind uf(s.size(0));
    if (s.dim() >= 1)
        for (int e = 0; e < s.size(1); ++e)
            uf.unite(s.face(1, 0, 0, e), s.face(1, 0, 1, e));
    std::vector<int> out(s.size(0));
    for (int v = 0; v < s.size(0); ++v)
        out[v] = uf.find(v);
    return out;
}

bool all_degenerate_above_zero(const Presheaf& s)
{
    for (int n = 1; n <= s.dim(); ++n)
        if (s.nondegenerate_count(n) > 0)
            return false;
    return true;
}

// Discrete through its bound and, with a certificate at or below the bound,
// discrete everywhere.
bool exactly_discrete(const Presheaf& s)
{
    return all_degenerate_above_zero(s) && (s.dim() == 0 ? false : s.cosk()[0] && *s.cosk()[0] <= s.dim());
}

std::string level_name(std::array<int, 2> kl)
{
    return "(" + std::to_string(kl[0]) + "," + std::to_string(kl[1]) + ")";
}

// Components of maps into the base pt⊠S: a cell (b, κ) of B ⊠ Δ[j] goes to
// σ·κ, moved up the constant first direction.
Components cylinder_to_base(const Presheaf& bk, const Presheaf& base, int sigma_level, int sigma, int j)
{
    const Presheaf k = simplex(j, bk.bound()[1]);
    Components out(bk.level_count());
    for (int idx = 0; idx < bk.level_count(); ++idx) {
        const auto [p, q] = bk.coords(idx);
        const int nk = k.size(q);
        std::vector<int> image(nk);
        for (int c = 0; c < nk; ++c) {
            int cell = act(base, sigma_level, 1, sigma, digits(k.name(q, c)));
            for (int r = 0; r < p; ++r)
                cell = base.degeneracy(base.level_index(r, q), 0, 0, cell);
            image[c] = cell;
        }
        out[idx].resize(bk.size(idx));
        for (int c = 0; c < bk.size(idx); ++c)
            out[idx][c] = image[c % nk];
    }
    return out;
}

struct RelativeSpace {
    HomObject hom;
    PresheafPtr object;
};

// Map_{/S}(a, T)_m = maps a × pt⊠Δ[m] → T over the base.
RelativeSpace relative_space(const PresheafPtr& a, const PresheafMap& a_to_base, const PresheafMap& p)
{
    const Presheaf& T = p.source();
    std::vector<std::unique_ptr<PresheafMap>> owned;
    auto constraints = [&](int, const PresheafPtr& cyl) {
        const int nl = a->level_count();
        Components comps(nl);
        for (int idx = 0; idx < nl; ++idx) {
            const int na = a->size(idx);
            const int nf = na == 0 ? 1 : cyl->size(idx) / na;
            comps[idx].resize(cyl->size(idx));
            for (int c = 0; c < cyl->size(idx); ++c)
                comps[idx][c] = a_to_base(idx, c / nf);
        }
        owned.push_back(std::make_unique<PresheafMap>(cyl, p.target_ptr(), std::move(comps)));
        HomConstraints hc;
        hc.source_to_base = owned.back().get();
        hc.target_to_base = &p;
        return hc;
    };
    RelativeSpace out;
    out.hom = hom_object(a, p.source_ptr(), Shape::Simplex, Bound{T.bound()[1], 0},
                         space_family(Shape::BiSimplex, T.bound()), constraints);
    out.object = share(out.hom.object);
    return out;
}

std::vector<int> flatten(const Components& c)
{
    std::vector<int> out;
    for (const auto& level : c) {
        out.push_back(-1);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

// Precomposition Map(B, T) → Map(A, T) along i: A → B.
PresheafMap restriction(const RelativeSpace& from_b, const RelativeSpace& from_a, const PresheafMap& i)
{
    const int levels = from_a.object->level_count();
    Components comps(levels);
    for (int m = 0; m < levels; ++m) {
        std::unordered_map<std::vector<int>, int, VecHash> where;
        const auto& a_elems = from_a.hom.elements[m];
        for (int e = 0; e < static_cast<int>(a_elems.size()); ++e)
            where.emplace(flatten(a_elems[e]), e);
        const auto& cyl_a = *from_a.hom.cylinders[m];
        const auto& cyl_b = *from_b.hom.cylinders[m];
        for (const auto& f : from_b.hom.elements[m]) {
            Components g(cyl_a.level_count());
            for (int idx = 0; idx < cyl_a.level_count(); ++idx) {
                const int na = i.source().size(idx);
                const int nb = i.target().size(idx);
                const int nf = na == 0 ? (nb == 0 ? 1 : cyl_b.size(idx) / nb) : cyl_a.size(idx) / na;
                g[idx].resize(cyl_a.size(idx));
                for (int c = 0; c < cyl_a.size(idx); ++c)
                    g[idx][c] = f[idx][i(idx, c / nf) * nf + c % nf];
            }
            comps[m].push_back(where.at(flatten(g)));
        }
    }
    return PresheafMap(from_b.object, from_a.object, std::move(comps));
}

struct CylinderGenerator {
    std::string condition;
    std::string name;
    PresheafPtr source; // A
    PresheafPtr target; // B
    std::vector<int> vertex_map;
};

std::vector<CylinderGenerator> cylinder_generators(int n_bound)
{
    std::vector<CylinderGenerator> out;
    for (int n = 2; n <= n_bound; ++n) {
        std::vector<int> id(n + 1);
        std::iota(id.begin(), id.end(), 0);
        out.push_back({"segal", "Seg(" + std::to_string(n) + ")", share(spine(n, n_bound)), share(simplex(n, n_bound)),
                       id});
    }
    out.push_back({"completeness", "Comp", share(simplex(0, n_bound)), share(groupoid_nerve(1, n_bound)), {0}});
    return out;
}

CheckReport relative_conditions(const PresheafMap& p, const CsoOptions& options, const std::string& def)
{
    const Presheaf& T = p.source();
    const Presheaf& base = p.target();
    const int N = T.bound()[0], M = T.bound()[1];
    const Presheaf s = column(base, 0);

    std::vector<std::string> notes = {"Reedy fibrancy of the total object is not checked separately",
                                      "cylinders: simplices of the base whose Δ[j] has at most " +
                                          std::to_string(options.max_cylinder_cells) + " nondegenerate cells"};
    if (N < 2)
        notes.push_back("no Segal maps below the first bound 2");
    bool unsure = false;
    std::set<std::string> regimes;

    for (const auto& g : cylinder_generators(N)) {
        for (int j = 0; j <= std::min(M, s.dim()); ++j) {
            if ((1 << (j + 1)) - 1 > options.max_cylinder_cells)
                break;
            const auto k = simplex(j, M);
            auto ak = share(box_product(*g.source, k));
            auto bk = share(box_product(*g.target, k));
            auto inc = sequence_map(ak, bk, g.vertex_map, 0);
            for (int sigma = 0; sigma < s.size(j); ++sigma) {
                if (s.is_degenerate(j, sigma))
                    continue;
                const int sigma_level = base.level_index(0, j);
                PresheafMap b_base(bk, p.target_ptr(), cylinder_to_base(*bk, base, sigma_level, sigma, j));
                PresheafMap a_base = compose(b_base, inc);
                auto map_b = relative_space(bk, b_base, p);
                auto map_a = relative_space(ak, a_base, p);
                const bool exact = map_b.hom.exactness.exact() && map_a.hom.exactness.exact();
                auto eq = space_equivalence(restriction(map_b, map_a, inc), options.cap);
                if (eq.fails()) {
                    nlohmann::json w = {{"condition", g.condition},
                                        {"generator", g.name},
                                        {"cylinder", s.name(j, sigma)},
                                        {"detail", eq.witness}};
                    auto r = CheckReport::failure(def, w, notes);
                    r.notes.push_back("mapping spaces through level " + std::to_string(M));
                    return r;
                }
                if (!exact || eq.inconclusive()) {
                    if (!unsure) {
                        notes.push_back(g.name + " over " + s.name(j, sigma) + ": " +
                                        (exact ? (eq.notes.empty() ? std::string("inconclusive") : eq.notes.back())
                                               : "mapping spaces truncated"));
                    }
                    unsure = true;
                }
                for (const auto& n : eq.notes)
                    if (n.rfind("regime: ", 0) == 0)
                        regimes.insert(n);
            }
        }
    }
    for (const auto& r : regimes)
        notes.push_back(r);
    return unsure ? CheckReport::unknown(def, notes) : CheckReport::success(def, notes);
}

} // namespace

DiscreteRegimeFlag discreteness_scan(const Presheaf& x)
{
    if (!x.bisimplicial())
        throw Error("discreteness_scan expects a bisimplicial object");
    if (auto bad = first_nonconstant(x, 1))
        return {false, "level " + level_name(*bad) + " is not constant in the second direction"};
    return {true, "discrete"};
}

bool constant_in_first_direction(const Presheaf& x)
{
    if (!x.bisimplicial())
        throw Error("constant_in_first_direction expects a bisimplicial object");
    return !first_nonconstant(x, 0).has_value();
}

PresheafMap column_map(const PresheafMap& p, int k)
{
    const Presheaf& Y = p.source();
    const Presheaf& X = p.target();
    if (!Y.bisimplicial() || k < 0 || k > Y.bound()[0])
        throw Error("column_map: no column " + std::to_string(k));
    auto cy = share(column(Y, k));
    auto cx = share(column(X, k));
    Components comps(cy->level_count());
    for (int l = 0; l < cy->level_count(); ++l)
        comps[l] = p.components()[Y.level_index(k, l)];
    return PresheafMap(cy, cx, std::move(comps));
}

CheckReport right_fib_rows(const PresheafMap& p, int cap)
{
    const std::string def = "every Y_{k,•} → S is a right fibration";
    if (!constant_in_first_direction(p.target()))
        throw Error("right_fib_rows: the base is not constant in the first direction");
    CheckReport out = CheckReport::success(def);
    for (int k = 0; k <= p.source().bound()[0]; ++k) {
        auto r = has_rlp(column_map(p, k), FibrationClass::Right, cap);
        if (r.fails())
            return CheckReport::failure(def, {{"column", k}, {"detail", r.witness}}, r.notes);
        if (r.inconclusive())
            for (const auto& n : r.notes)
                out.notes.push_back("column " + std::to_string(k) + ": " + n);
        absorb(out, r);
    }
    out.definition = def;
    return out;
}

CheckReport hopullback_discrete(const PresheafMap& p, int n)
{
    const std::string def = "R_n → X_n ×_{X_0} R_0 along the last vertex is an equivalence";
    const Presheaf& R = p.source();
    const Presheaf& X = p.target();
    if (n < 0 || n > R.bound()[0])
        throw Error("hopullback: n outside the bound");
    for (const auto* obj : {&R, &X}) {
        auto flag = discreteness_scan(*obj);
        if (!flag.verified)
            return CheckReport::unknown(def, {"outside the discrete regime: " + flag.regime});
    }
    std::vector<std::string> notes = {"regime: discrete", "discreteness verified through the stored bound"};
    auto last = [n](const Presheaf& x, int c) {
        for (int j = n; j >= 1; --j)
            c = x.face(x.level_index(j, 0), 0, 0, c);
        return c;
    };
    const int rn = R.level_index(n, 0), xn = X.level_index(n, 0);
    std::map<std::pair<int, int>, int> hit;
    for (int r = 0; r < R.size(rn); ++r) {
        const std::pair<int, int> key{p(rn, r), last(R, r)};
        auto [it, fresh] = hit.emplace(key, r);
        if (!fresh)
            return CheckReport::failure(
                def, {{"reason", "two cells with the same image"}, {"cells", {R.name(rn, it->second), R.name(rn, r)}}},
                notes);
    }
    for (int x = 0; x < X.size(xn); ++x)
        for (int r0 = 0; r0 < R.size(0); ++r0)
            if (p(0, r0) == last(X, x) && !hit.count({x, r0}))
                return CheckReport::failure(
                    def, {{"reason", "pair not in the image"}, {"x", X.name(xn, x)}, {"r0", R.name(0, r0)}}, notes);
    return CheckReport::success(def, notes);
}

CheckReport space_equivalence(const PresheafMap& f, int cap)
{
    const std::string def = "Kan equivalence of spaces";
    const Presheaf& X = f.source();
    const Presheaf& Y = f.target();
    if (X.shape() != Shape::Simplex || Y.shape() != Shape::Simplex)
        throw Error("space_equivalence expects simplicial sets");

    // π0 only needs levels 0 and 1, so a mismatch is final at any bound.
    const auto cx = components_of(X), cy = components_of(Y);
    std::map<int, int> image_of; // component of X -> component of Y
    std::map<int, int> witness_of;
    for (int v = 0; v < X.size(0); ++v) {
        const int c = cx[v], d = cy[f(0, v)];
        witness_of.emplace(c, v);
        image_of.emplace(c, d);
    }
    std::map<int, int> preimage;
    for (const auto& [c, d] : image_of) {
        auto [it, fresh] = preimage.emplace(d, c);
        if (!fresh)
            return CheckReport::failure(def, {{"invariant", "pi0"},
                                              {"reason", "two components have the same image"},
                                              {"cells", {X.name(0, witness_of[it->second]), X.name(0, witness_of[c])}}});
    }
    for (int w = 0; w < Y.size(0); ++w)
        if (!preimage.count(cy[w]))
            return CheckReport::failure(
                def, {{"invariant", "pi0"}, {"reason", "component not in the image"}, {"cell", Y.name(0, w)}});

    if (all_degenerate_above_zero(X) && all_degenerate_above_zero(Y)) {
        if (exactly_discrete(X) && exactly_discrete(Y))
            return CheckReport::success(def, {"regime: discrete"});
        return CheckReport::unknown(def, {"discrete only through the stored bound"});
    }

    auto certified = [](const Presheaf& s) { return s.cosk()[0] && *s.cosk()[0] <= 2 && s.dim() >= 3; };
    if (!certified(X) || !certified(Y))
        return CheckReport::unknown(def, {"outside the discrete and 1-type regimes"});
    for (const auto& ptr : {f.source_ptr(), f.target_ptr()}) {
        auto kan = has_rlp(to_terminal(ptr), FibrationClass::Kan, std::max(cap, 3));
        if (!kan.holds())
            return CheckReport::unknown(def, {"not a verified Kan complex: " + std::string(to_string(kan.verdict))});
    }

    // Fundamental groupoids: edge classes v → w must biject onto fv → fw.
    const auto hx = homotopy_classes(X), hy = homotopy_classes(Y);
    std::map<std::pair<int, int>, std::set<int>> ex, ey;
    for (int e = 0; e < X.size(1); ++e)
        ex[{X.face(1, 0, 1, e), X.face(1, 0, 0, e)}].insert(hx[e]);
    for (int e = 0; e < Y.size(1); ++e)
        ey[{Y.face(1, 0, 1, e), Y.face(1, 0, 0, e)}].insert(hy[e]);
    std::map<int, int> class_image;
    for (int e = 0; e < X.size(1); ++e)
        class_image[hx[e]] = hy[f(1, e)];
    for (const auto& [vw, classes] : ex) {
        std::set<int> img;
        for (int c : classes)
            img.insert(class_image.at(c));
        const std::pair<int, int> fvw{f(0, vw.first), f(0, vw.second)};
        if (img.size() != classes.size() || img != ey[fvw])
            return CheckReport::failure(def, {{"invariant", "pi1"},
                                              {"reason", img.size() != classes.size() ? "classes identified"
                                                                                      : "classes missed"},
                                              {"from", X.name(0, vw.first)},
                                              {"to", X.name(0, vw.second)}});
    }
    return CheckReport::success(def, {"regime: 1-type"});
}

CheckReport segal_completeness_check(const PresheafPtr& w, const CsoOptions& options)
{
    if (!w->bisimplicial() || w->marked_shape())
        throw Error("segal_completeness_check expects a bisimplicial set");
    const std::string def = "complete Segal space: Segal and completeness maps induce equivalences";
    return relative_conditions(to_terminal(w), options, def);
}

CheckReport is_cartesian_fibration_bisimplicial(const PresheafMap& p, const CsoOptions& options)
{
    const std::string def = "complete Segal object in right fibrations over S";
    if (!p.source().bisimplicial() || p.source().marked_shape() || p.source().shape() != p.target().shape())
        throw Error("is_cartesian_fibration_bisimplicial expects a map of bisimplicial sets");
    auto rows = right_fib_rows(p, options.cap);
    if (rows.fails()) {
        rows.definition = def;
        rows.witness["condition"] = "rows";
        return rows;
    }
    auto rel = relative_conditions(p, options, def);
    if (rel.fails())
        return rel;
    CheckReport out = CheckReport::success(def);
    absorb(out, rows);
    absorb(out, rel);
    out.definition = def;
    out.notes = rel.notes;
    for (const auto& n : rows.notes)
        out.notes.push_back("rows: " + n);
    return out;
}

Presheaf inject_segal_violation(const PresheafPtr& t, int n)
{
    const Presheaf& T = *t;
    const int N = T.bound()[0], M = T.bound()[1];
    if (!T.bisimplicial() || T.marked_shape() || n < 2 || n > N)
        throw Error("inject_segal_violation: need a bisimplicial set and 2 <= n <= bound");
    const int top = T.level_index(n, 0);
    if (T.size(top) == 0)
        throw Error("inject_segal_violation: no (n,0) cell");
    int cell = 0;
    for (int c = 0; c < T.size(top); ++c)
        if (!T.is_degenerate(top, c)) {
            cell = c;
            break;
        }

    auto f = share(box_product(simplex(n, N), point(M)));
    auto g = share(box_product(spine(n, N), point(M)));
    std::vector<int> id(n + 1);
    std::iota(id.begin(), id.end(), 0);
    auto inc = sequence_map(g, f, id, 0);

    // The map F(n) → T classifying the chosen cell.
    Components yon(f->level_count());
    for (int idx = 0; idx < f->level_count(); ++idx) {
        const auto [p, q] = f->coords(idx);
        for (int c = 0; c < f->size(idx); ++c) {
            int x = act(T, top, 0, cell, digits(f->name(idx, c)));
            for (int r = 0; r < q; ++r)
                x = T.degeneracy(T.level_index(p, r), 1, 0, x);
            yon[idx].push_back(x);
        }
    }
    auto classify = compose(PresheafMap(f, t, std::move(yon)), inc);

    Diagram d;
    const int ti = d.add_object(t, "T");
    const int fi = d.add_object(f, "new");
    const int gi = d.add_object(g, "spine");
    d.add_arrow(gi, ti, classify);
    d.add_arrow(gi, fi, inc);
    auto out = colimit(d).object;
    out.set_cosk(0, std::nullopt);
    out.set_cosk(1, std::nullopt);
    return out;
}

} // namespace simpcalc
