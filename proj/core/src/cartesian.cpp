#include "simpcalc/cartesian.hpp"

#include <map>

#include "simpcalc/keyed.hpp"
#include "simpcalc/lifting.hpp"
#include "simpcalc/marked.hpp"

namespace simpcalc {

Presheaf join(const Presheaf& a, const Presheaf& b)
{
    if (a.shape() != Shape::Simplex || b.shape() != Shape::Simplex)
        throw Error("join expects simplicial sets");
    const int bound = std::min(a.dim(), b.dim());
    // Key {i, σ, j, τ}: σ ∈ a_i, τ ∈ b_j with i + j + 1 = n; i = -1 or j = -1
    // marks an empty side.
    KeyedSpec spec;
    spec.bound = {bound, 0};
    spec.cells.resize(bound + 1);
    for (int n = 0; n <= bound; ++n)
        for (int i = -1; i <= n; ++i) {
            const int j = n - 1 - i;
            const int na = i < 0 ? 1 : a.size(i);
            const int nb = j < 0 ? 1 : b.size(j);
            for (int s = 0; s < na; ++s)
                for (int t = 0; t < nb; ++t)
                    spec.cells[n].push_back({i, i < 0 ? -1 : s, j, j < 0 ? -1 : t});
        }
    spec.name = [&](int, const CellKey& key) {
        const std::string left = key[0] < 0 ? "" : a.name(key[0], key[1]);
        const std::string right = key[2] < 0 ? "" : b.name(key[2], key[3]);
        return left + "*" + right;
    };
    spec.face = [&](int, int, int k, const CellKey& key) -> CellKey {
        const int i = key[0], j = key[2];
        if (k <= i)
            return i == 0 ? CellKey{-1, -1, j, key[3]} : CellKey{i - 1, a.face(i, 0, k, key[1]), j, key[3]};
        const int kk = k - i - 1;
        return j == 0 ? CellKey{i, key[1], -1, -1} : CellKey{i, key[1], j - 1, b.face(j, 0, kk, key[3])};
    };
    spec.degeneracy = [&](int, int, int k, const CellKey& key) -> CellKey {
        const int i = key[0], j = key[2];
        if (k <= i)
            return {i + 1, a.degeneracy(i, 0, k, key[1]), j, key[3]};
        return {i, key[1], j + 1, b.degeneracy(j, 0, k - i - 1, key[3])};
    };
    if (a.skel()[0] && b.skel()[0])
        spec.skel = {*a.skel()[0] + *b.skel()[0] + 1, std::nullopt};
    return build_keyed(spec);
}

SliceObject slice(const PresheafPtr& t, int k, int cell)
{
    const Presheaf& T = *t;
    if (T.shape() != Shape::Simplex)
        throw Error("slice expects a simplicial set");
    if (k != 0 && k != 1)
        throw Error("slice is implemented over a vertex or an edge only");
    if (cell < 0 || cell >= T.size(k))
        throw Error("slice: base cell out of range");
    const int bound = T.dim() - k - 1;
    if (bound < 0)
        throw Error("slice: bound too small");
    SliceObject s;
    s.total = t;
    s.k = k;
    s.base_cell = cell;
    s.cell_of.resize(bound + 1);
    s.index_of.resize(bound + 1);
    KeyedSpec spec;
    spec.bound = {bound, 0};
    spec.cells.resize(bound + 1);
    for (int n = 0; n <= bound; ++n) {
        const int N = n + k + 1;
        s.index_of[n].assign(T.size(N), -1);
        for (int c = 0; c < T.size(N); ++c) {
            int last = c;
            for (int lv = N; lv > k; --lv)
                last = T.face(lv, 0, 0, last);
            if (last != cell)
                continue;
            s.index_of[n][c] = static_cast<int>(s.cell_of[n].size());
            s.cell_of[n].push_back(c);
            spec.cells[n].push_back({c});
        }
    }
    spec.name = [&](int n, const CellKey& key) { return T.name(n + k + 1, key[0]); };
    spec.face = [&](int n, int, int i, const CellKey& key) { return CellKey{T.face(n + k + 1, 0, i, key[0])}; };
    spec.degeneracy = [&](int n, int, int i, const CellKey& key) {
        return CellKey{T.degeneracy(n + k + 1, 0, i, key[0])};
    };
    // A c-coskeletal T has c-coskeletal slices: a boundary ∂Δ[n] ⋆ Δ[k] → T
    // with n > c first fills Δ[n] and then the whole simplex uniquely.
    spec.cosk = {T.cosk()[0], std::nullopt};
    s.object = share(build_keyed(spec));
    return s;
}

PresheafMap slice_restriction(const SliceObject& e, const SliceObject& y)
{
    if (e.k != 1 || y.k != 0 || e.total != y.total)
        throw Error("slice_restriction expects T_{/f} and T_{/y} of the same T");
    const Presheaf& T = *e.total;
    if (T.face(1, 0, 0, e.base_cell) != y.base_cell)
        throw Error("slice_restriction: the vertex is not the target of the edge");
    const int bound = e.object->dim();
    auto yt = y.object->dim() == bound ? y.object : share(truncate(*y.object, {bound, 0}));
    Components comps(bound + 1);
    for (int n = 0; n <= bound; ++n)
        for (int c : e.cell_of[n])
            comps[n].push_back(y.index_of[n][T.face(n + 2, 0, n + 1, c)]);
    return {e.object, yt, std::move(comps)};
}

PresheafMap slice_map(const PresheafMap& p, const SliceObject& ts, const SliceObject& ss)
{
    if (ts.k != ss.k || ts.total.get() != p.source_ptr().get() || ss.total.get() != p.target_ptr().get())
        throw Error("slice_map: slices do not match the map");
    if (p(ts.k, ts.base_cell) != ss.base_cell)
        throw Error("slice_map: base cells do not correspond");
    const int bound = std::min(ts.object->dim(), ss.object->dim());
    auto src = ts.object->dim() == bound ? ts.object : share(truncate(*ts.object, {bound, 0}));
    auto tgt = ss.object->dim() == bound ? ss.object : share(truncate(*ss.object, {bound, 0}));
    Components comps(bound + 1);
    for (int n = 0; n <= bound; ++n)
        for (int c : ts.cell_of[n])
            comps[n].push_back(ss.index_of[n][p(n + ts.k + 1, c)]);
    return {src, tgt, std::move(comps)};
}

namespace {

// Shares slices over vertices between edge checks.
class EdgeChecker {
public:
    EdgeChecker(const PresheafMap& p, int cap) : p_(p), cap_(cap)
    {
        if (p.source().shape() != Shape::Simplex || p.target().shape() != Shape::Simplex)
            throw Error("Cartesian edges are defined for maps of simplicial sets");
        if (p.source().bound() != p.target().bound())
            throw Error("Cartesian edges: source and target must share a bound");
        if (p.source().dim() < 2)
            throw Error("Cartesian edges: the bound must reach 2");
    }

    CheckReport check(int edge)
    {
        const Presheaf& T = p_.source();
        const std::string def = "p-Cartesian edge: slice comparison is a trivial fibration";
        if (edge < 0 || edge >= T.size(1))
            throw Error("is_p_cartesian: edge out of range");
        const int y = T.face(1, 0, 0, edge);
        const int pf = p_(1, edge);
        const int py = p_(0, y);
        auto tf = slice(p_.source_ptr(), 1, edge);
        auto sf = slice(p_.target_ptr(), 1, pf);
        const auto& ty = vertex_slice(true, y);
        const auto& sy = vertex_slice(false, py);
        const int bound = tf.object->dim();
        const Bound b{bound, 0};
        auto u = truncate(slice_restriction(sf, sy), b);
        auto v = truncate(slice_map(p_, ty, sy), b);
        auto pb = limit_level0(u, v);
        std::vector<std::map<std::pair<int, int>, int>> where(bound + 1);
        for (int n = 0; n <= bound; ++n)
            for (int c = 0; c < static_cast<int>(pb.pairs[n].size()); ++c)
                where[n][pb.pairs[n][c]] = c;
        auto pf_map = slice_map(p_, tf, sf);
        auto res = slice_restriction(tf, ty);
        Components comps(bound + 1);
        for (int n = 0; n <= bound; ++n)
            for (int c = 0; c < tf.object->size(n); ++c)
                comps[n].push_back(where[n].at({pf_map(n, c), res(n, c)}));
        PresheafMap comparison(tf.object, share(std::move(pb.object)), std::move(comps));
        auto r = has_rlp(comparison, FibrationClass::TrivialKan, cap_);
        r.definition = def;
        if (r.fails())
            r.witness["edge"] = T.name(1, edge);
        return r;
    }

    const PresheafMap& map() const { return p_; }

private:
    const SliceObject& vertex_slice(bool total, int v)
    {
        auto& cache = total ? t_slices_ : s_slices_;
        auto it = cache.find(v);
        if (it == cache.end())
            it = cache.emplace(v, slice(total ? p_.source_ptr() : p_.target_ptr(), 0, v)).first;
        return it->second;
    }

    const PresheafMap& p_;
    int cap_;
    std::map<int, SliceObject> t_slices_;
    std::map<int, SliceObject> s_slices_;
};

CheckReport inner_check(const PresheafMap& p)
{
    return has_rlp(p, FibrationClass::Inner, default_lift_cap);
}

} // namespace

CheckReport is_p_cartesian(const PresheafMap& p, int edge, int cap)
{
    EdgeChecker ec(p, cap);
    auto inner = inner_check(p);
    if (inner.fails())
        throw Error("is_p_cartesian: not an inner fibration: " + inner.witness.dump());
    auto r = ec.check(edge);
    if (inner.inconclusive() && r.holds()) {
        r.verdict = Verdict::Inconclusive;
        r.notes.push_back("inner-fibration check inconclusive");
    }
    return r;
}

namespace {

struct FibrationScan {
    CheckReport report;
    std::vector<Verdict> edge_verdicts;
};

FibrationScan scan(const PresheafMap& p, int cap)
{
    const std::string def = "Cartesian fibration: inner fibration with p-Cartesian lifts";
    FibrationScan out;
    auto inner = inner_check(p);
    if (inner.fails()) {
        out.report = CheckReport::failure(def, {{"stage", "inner"}, {"detail", inner.witness}}, inner.notes);
        return out;
    }
    EdgeChecker ec(p, cap);
    const Presheaf& T = p.source();
    const Presheaf& S = p.target();
    out.edge_verdicts.resize(T.size(1));
    std::vector<std::string> notes = {"inner fibration: " + std::string(to_string(inner.verdict))};
    bool unsure = inner.inconclusive();
    for (int e = 0; e < T.size(1); ++e) {
        auto r = ec.check(e);
        out.edge_verdicts[e] = r.verdict;
        if (r.inconclusive() && !unsure) {
            unsure = true;
            for (const auto& n : r.notes)
                notes.push_back("edge " + T.name(1, e) + ": " + n);
        }
    }
    for (int e = 0; e < S.size(1); ++e) {
        const int target = S.face(1, 0, 0, e);
        for (int y = 0; y < T.size(0); ++y) {
            if (p(0, y) != target)
                continue;
            bool found = false;
            bool maybe = false;
            for (int f = 0; f < T.size(1) && !found; ++f) {
                if (p(1, f) != e || T.face(1, 0, 0, f) != y)
                    continue;
                found = out.edge_verdicts[f] == Verdict::Holds;
                maybe = maybe || out.edge_verdicts[f] == Verdict::Inconclusive;
            }
            if (found)
                continue;
            if (maybe) {
                unsure = true;
                continue;
            }
            out.report = CheckReport::failure(def,
                                              {{"stage", "lift"},
                                               {"edge", S.name(1, e)},
                                               {"vertex", T.name(0, y)},
                                               {"reason", "no p-Cartesian edge over it ending at the vertex"}},
                                              notes);
            return out;
        }
    }
    out.report = unsure ? CheckReport::unknown(def, notes) : CheckReport::success(def, notes);
    return out;
}

} // namespace

CheckReport is_cartesian_fibration(const PresheafMap& p, int cap)
{
    return scan(p, cap).report;
}

NaturalMarking natural_marking(const PresheafMap& p, int cap)
{
    auto s = scan(p, cap);
    if (s.report.fails())
        throw Error("natural_marking: not a Cartesian fibration: " + s.report.witness.dump());
    NaturalMarking out;
    const Presheaf& T = p.source();
    std::vector<std::string> names;
    for (int e = 0; e < T.size(1); ++e)
        if (s.edge_verdicts[e] == Verdict::Holds) {
            out.cartesian.push_back(e);
            names.push_back(T.name(1, e));
        }
    out.marked = share(with_markings(T, {names}));
    out.to_base = PresheafMap(out.marked, share(sharp(p.target())), p.components());
    out.report = s.report;
    return out;
}

} // namespace simpcalc
