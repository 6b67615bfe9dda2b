#include "simpcalc/presheaf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace simpcalc {

std::string_view to_string(Shape shape)
{
    switch (shape) {
    case Shape::Simplex: return "Simplex";
    case Shape::BiSimplex: return "BiSimplex";
    case Shape::MarkedSimplex: return "MarkedSimplex";
    case Shape::MarkedBiSimplex: return "MarkedBiSimplex";
    }
    return "?";
}

Shape shape_from_string(std::string_view text)
{
    if (text == "Simplex") return Shape::Simplex;
    if (text == "BiSimplex") return Shape::BiSimplex;
    if (text == "MarkedSimplex") return Shape::MarkedSimplex;
    if (text == "MarkedBiSimplex") return Shape::MarkedBiSimplex;
    throw Error("unknown shape '" + std::string(text) + "'");
}

Shape unmarked(Shape s) noexcept
{
    return is_bisimplicial_shape(s) ? Shape::BiSimplex : Shape::Simplex;
}

Shape with_marking(Shape s) noexcept
{
    return is_bisimplicial_shape(s) ? Shape::MarkedBiSimplex : Shape::MarkedSimplex;
}

Presheaf::Presheaf(Shape shape, Bound bound) : shape_(shape), bound_(bound)
{
    if (!bisimplicial())
        bound_[1] = 0;
    if (bound_[0] < 0 || bound_[1] < 0)
        throw Error("negative dimension bound");
    levels_.resize(static_cast<std::size_t>((bound_[0] + 1) * (bound_[1] + 1)));
    for (int i = 0; i < level_count(); ++i)
        resize_level(i, 0);
}

int Presheaf::level_index(int k, int l) const
{
    if (!has_level(k, l))
        throw Error("level (" + std::to_string(k) + "," + std::to_string(l) + ") outside the bound");
    return k * (bound_[1] + 1) + l;
}

long Presheaf::total_cells() const
{
    long n = 0;
    for (const auto& lv : levels_)
        n += lv.size();
    return n;
}

int Presheaf::face_level(int index, int dir) const noexcept
{
    auto c = coords(index);
    if (c[dir] == 0)
        return -1;
    --c[dir];
    return c[0] * (bound_[1] + 1) + c[1];
}

int Presheaf::degeneracy_level(int index, int dir) const noexcept
{
    auto c = coords(index);
    if (c[dir] + 1 > bound_[dir])
        return -1;
    ++c[dir];
    return c[0] * (bound_[1] + 1) + c[1];
}

int Presheaf::find(int index, std::string_view name) const
{
    const auto& lv = levels_.at(index);
    auto it = lv.by_name.find(std::string(name));
    return it == lv.by_name.end() ? -1 : it->second;
}

int Presheaf::nondegenerate_count(int index) const
{
    int n = 0;
    for (int c = 0; c < size(index); ++c)
        n += is_degenerate(index, c) ? 0 : 1;
    return n;
}

void Presheaf::resize_level(int index, int n)
{
    auto& lv = levels_.at(index);
    const auto c = coords(index);
    lv.names.assign(n, std::string{});
    for (int dir = 0; dir < 2; ++dir) {
        lv.faces[dir].clear();
        lv.degeneracies[dir].clear();
        if (dir >= directions())
            continue;
        if (c[dir] > 0)
            lv.faces[dir].assign(c[dir] + 1, std::vector<int>(n, -1));
        if (degeneracy_level(index, dir) >= 0)
            lv.degeneracies[dir].assign(c[dir] + 1, std::vector<int>(n, -1));
    }
    lv.marked.assign(n, 0);
    lv.degenerate_source.clear();
    lv.by_name.clear();
}

void Presheaf::finalize()
{
    for (int idx = 0; idx < level_count(); ++idx) {
        auto& lv = levels_[idx];
        const int n = lv.size();
        lv.by_name.clear();
        for (int c = 0; c < n; ++c) {
            if (lv.names[c].empty())
                lv.names[c] = "c" + std::to_string(idx) + "_" + std::to_string(c);
            if (!lv.by_name.emplace(lv.names[c], c).second)
                throw Error("duplicate cell name '" + lv.names[c] + "'");
        }
        for (int dir = 0; dir < directions(); ++dir) {
            const int fl = face_level(idx, dir);
            for (const auto& f : lv.faces[dir])
                for (int v : f)
                    if (fl < 0 || v < 0 || v >= size(fl))
                        throw Error("face map undefined or out of range");
            const int dl = degeneracy_level(idx, dir);
            for (const auto& s : lv.degeneracies[dir])
                for (int v : s)
                    if (dl < 0 || v < 0 || v >= size(dl))
                        throw Error("degeneracy map undefined or out of range");
        }
    }
    for (auto& lv : levels_)
        lv.degenerate_source.assign(lv.size(), DegenerateSource{});
    for (int idx = 0; idx < level_count(); ++idx) {
        for (int dir = 0; dir < directions(); ++dir) {
            const int up = degeneracy_level(idx, dir);
            if (up < 0)
                continue;
            const auto& lv = levels_[idx];
            for (int i = 0; i < static_cast<int>(lv.degeneracies[dir].size()); ++i)
                for (int c = 0; c < lv.size(); ++c) {
                    auto& src = levels_[up].degenerate_source[lv.degeneracies[dir][i][c]];
                    if (src.dir < 0)
                        src = DegenerateSource{dir, i, c};
                }
        }
    }
    if (auto err = check_identities())
        throw Error("simplicial identity violated: " + *err);
    if (auto err = check_markings())
        throw Error("marking invalid: " + *err);
}

namespace {

std::string describe(const Presheaf& x, int idx, int cell, std::string_view what)
{
    auto c = x.coords(idx);
    std::ostringstream os;
    os << what << " at level (" << c[0] << "," << c[1] << ") cell " << cell;
    return os.str();
}

} // namespace

std::optional<std::string> Presheaf::check_identities() const
{
    auto F = [&](int idx, int dir, int i, int c) { return levels_[idx].faces[dir][i][c]; };
    auto S = [&](int idx, int dir, int i, int c) { return levels_[idx].degeneracies[dir][i][c]; };
    for (int idx = 0; idx < level_count(); ++idx) {
        const auto co = coords(idx);
        for (int c = 0; c < size(idx); ++c) {
            for (int d = 0; d < directions(); ++d) {
                const int n = co[d];
                const int fl = face_level(idx, d);
                if (n >= 2) {
                    for (int j = 0; j <= n; ++j)
                        for (int i = 0; i < j; ++i)
                            if (F(fl, d, i, F(idx, d, j, c)) != F(fl, d, j - 1, F(idx, d, i, c)))
                                return describe(*this, idx, c, "d_i d_j != d_{j-1} d_i");
                }
                const int up = degeneracy_level(idx, d);
                if (up >= 0) {
                    for (int j = 0; j <= n; ++j) {
                        const int y = S(idx, d, j, c);
                        for (int i = 0; i <= n + 1; ++i) {
                            int expect;
                            if (i < j)
                                expect = S(fl, d, j - 1, F(idx, d, i, c));
                            else if (i == j || i == j + 1)
                                expect = c;
                            else
                                expect = S(fl, d, j, F(idx, d, i - 1, c));
                            if (F(up, d, i, y) != expect)
                                return describe(*this, idx, c, "face of degeneracy");
                        }
                    }
                    const int up2 = degeneracy_level(up, d);
                    if (up2 >= 0) {
                        for (int j = 0; j <= n; ++j)
                            for (int i = 0; i <= j; ++i)
                                if (S(up, d, i, S(idx, d, j, c)) != S(up, d, j + 1, S(idx, d, i, c)))
                                    return describe(*this, idx, c, "s_i s_j != s_{j+1} s_i");
                    }
                }
            }
            if (!bisimplicial())
                continue;
            const int lh = face_level(idx, 0), lv = face_level(idx, 1);
            if (lh >= 0 && lv >= 0) {
                for (int i = 0; i <= co[0]; ++i)
                    for (int j = 0; j <= co[1]; ++j)
                        if (F(lh, 1, j, F(idx, 0, i, c)) != F(lv, 0, i, F(idx, 1, j, c)))
                            return describe(*this, idx, c, "horizontal and vertical faces do not commute");
            }
            for (int d = 0; d < 2; ++d) {
                const int e = 1 - d;
                const int up = degeneracy_level(idx, d);
                const int fe = face_level(idx, e);
                if (up < 0 || fe < 0)
                    continue;
                for (int j = 0; j <= co[d]; ++j)
                    for (int i = 0; i <= co[e]; ++i)
                        if (F(up, e, i, S(idx, d, j, c)) != S(fe, d, j, F(idx, e, i, c)))
                            return describe(*this, idx, c, "mixed face/degeneracy do not commute");
            }
            const int uh = degeneracy_level(idx, 0), uv = degeneracy_level(idx, 1);
            if (uh >= 0 && uv >= 0) {
                const int uhv = degeneracy_level(uh, 1);
                if (uhv >= 0)
                    for (int i = 0; i <= co[0]; ++i)
                        for (int j = 0; j <= co[1]; ++j)
                            if (S(uh, 1, j, S(idx, 0, i, c)) != S(uv, 0, i, S(idx, 1, j, c)))
                                return describe(*this, idx, c, "degeneracies do not commute");
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> Presheaf::check_markings() const
{
    if (!marked_shape() || bound_[0] < 1)
        return std::nullopt;
    for (int l = 0; l <= bound_[1]; ++l) {
        const int v = level_index(0, l), e = level_index(1, l);
        for (int c = 0; c < size(v); ++c)
            if (!levels_[e].marked[levels_[v].degeneracies[0][0][c]])
                return describe(*this, e, levels_[v].degeneracies[0][0][c], "degenerate edge not marked");
        if (!bisimplicial())
            continue;
        for (int c = 0; c < size(e); ++c) {
            if (!levels_[e].marked[c])
                continue;
            if (l > 0)
                for (const auto& f : levels_[e].faces[1])
                    if (!levels_[face_level(e, 1)].marked[f[c]])
                        return describe(*this, e, c, "vertical face of a marking not marked");
            if (degeneracy_level(e, 1) >= 0)
                for (const auto& s : levels_[e].degeneracies[1])
                    if (!levels_[degeneracy_level(e, 1)].marked[s[c]])
                        return describe(*this, e, c, "vertical degeneracy of a marking not marked");
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

PresheafMap::PresheafMap(PresheafPtr source, PresheafPtr target, Components components) :
    source_(std::move(source)), target_(std::move(target)), components_(std::move(components))
{
}

std::optional<std::string> PresheafMap::check() const
{
    const Presheaf& x = *source_;
    const Presheaf& y = *target_;
    if (x.shape() != y.shape())
        return "shape mismatch";
    if (x.bound() != y.bound())
        return "bound mismatch";
    if (static_cast<int>(components_.size()) != x.level_count())
        return "component count mismatch";
    for (int idx = 0; idx < x.level_count(); ++idx) {
        if (static_cast<int>(components_[idx].size()) != x.size(idx))
            return describe(x, idx, 0, "component size mismatch");
        for (int c = 0; c < x.size(idx); ++c) {
            const int fc = components_[idx][c];
            if (fc < 0 || fc >= y.size(idx))
                return describe(x, idx, c, "image out of range");
            for (int d = 0; d < x.directions(); ++d) {
                const int fl = x.face_level(idx, d);
                if (fl >= 0)
                    for (int i = 0; i <= x.extent(idx, d); ++i)
                        if (components_[fl][x.face(idx, d, i, c)] != y.face(idx, d, i, fc))
                            return describe(x, idx, c, "does not commute with a face");
                const int ul = x.degeneracy_level(idx, d);
                if (ul >= 0)
                    for (int i = 0; i <= x.extent(idx, d); ++i)
                        if (components_[ul][x.degeneracy(idx, d, i, c)] != y.degeneracy(idx, d, i, fc))
                            return describe(x, idx, c, "does not commute with a degeneracy");
            }
            if (x.is_marked(idx, c) && !y.is_marked(idx, fc))
                return describe(x, idx, c, "marking not preserved");
        }
    }
    return std::nullopt;
}

void PresheafMap::validate() const
{
    if (auto err = check())
        throw Error("invalid presheaf map: " + *err);
}

bool PresheafMap::levelwise_injective() const
{
    for (int idx = 0; idx < source_->level_count(); ++idx) {
        std::vector<char> seen(target_->size(idx), 0);
        for (int v : components_[idx]) {
            if (seen[v])
                return false;
            seen[v] = 1;
        }
    }
    return true;
}

bool PresheafMap::levelwise_bijective() const
{
    for (int idx = 0; idx < source_->level_count(); ++idx)
        if (source_->size(idx) != target_->size(idx))
            return false;
    return levelwise_injective();
}

PresheafMap compose(const PresheafMap& second, const PresheafMap& first)
{
    Components out(first.components().size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out[idx].reserve(first.components()[idx].size());
        for (int v : first.components()[idx])
            out[idx].push_back(second.components()[idx][v]);
    }
    return {first.source_ptr(), second.target_ptr(), std::move(out)};
}

PresheafMap identity_map(const PresheafPtr& x)
{
    Components out(x->level_count());
    for (int idx = 0; idx < x->level_count(); ++idx) {
        out[idx].resize(x->size(idx));
        std::iota(out[idx].begin(), out[idx].end(), 0);
    }
    return {x, x, std::move(out)};
}

bool same_components(const PresheafMap& a, const PresheafMap& b)
{
    return a.components() == b.components();
}

// ---------------------------------------------------------------------------

Presheaf terminal(Shape shape, Bound bound)
{
    Presheaf p(shape, bound);
    for (int idx = 0; idx < p.level_count(); ++idx) {
        p.resize_level(idx, 1);
        p.level(idx).names[0] = "*";
        for (int d = 0; d < p.directions(); ++d) {
            for (auto& f : p.level(idx).faces[d])
                f[0] = 0;
            for (auto& s : p.level(idx).degeneracies[d])
                s[0] = 0;
        }
        p.set_marked(idx, 0, true);
    }
    p.set_cosk(0, 0);
    p.set_skel(0, 0);
    if (p.bisimplicial()) {
        p.set_cosk(1, 0);
        p.set_skel(1, 0);
    }
    p.finalize();
    return p;
}

Presheaf empty_presheaf(Shape shape, Bound bound)
{
    Presheaf p(shape, bound);
    p.set_skel(0, 0);
    p.set_cosk(0, 0);
    if (p.bisimplicial()) {
        p.set_skel(1, 0);
    }
    p.finalize();
    return p;
}

PresheafMap to_terminal(const PresheafPtr& x)
{
    auto t = share(terminal(x->shape(), x->bound()));
    Components out(x->level_count());
    for (int idx = 0; idx < x->level_count(); ++idx)
        out[idx].assign(x->size(idx), 0);
    return {x, t, std::move(out)};
}

Presheaf truncate(const Presheaf& x, Bound bound)
{
    if (!x.bisimplicial())
        bound[1] = 0;
    bound[0] = std::min(bound[0], x.bound()[0]);
    bound[1] = std::min(bound[1], x.bound()[1]);
    Presheaf p(x.shape(), bound);
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto c = p.coords(idx);
        const int src = x.level_index(c[0], c[1]);
        const auto& from = x.level(src);
        p.resize_level(idx, from.size());
        auto& to = p.level(idx);
        to.names = from.names;
        to.marked = from.marked;
        for (int d = 0; d < p.directions(); ++d) {
            to.faces[d] = from.faces[d];
            if (!to.degeneracies[d].empty())
                to.degeneracies[d] = from.degeneracies[d];
        }
    }
    for (int d = 0; d < 2; ++d) {
        p.set_cosk(d, x.cosk()[d]);
        p.set_skel(d, x.skel()[d]);
    }
    p.finalize();
    return p;
}

PresheafMap truncate(const PresheafMap& f, Bound bound)
{
    auto cut = [&](const PresheafPtr& x) {
        Bound b = bound;
        if (!x->bisimplicial())
            b[1] = 0;
        b = {std::min(b[0], x->bound()[0]), std::min(b[1], x->bound()[1])};
        return b == x->bound() ? x : share(truncate(*x, b));
    };
    auto s = cut(f.source_ptr());
    auto t = cut(f.target_ptr());
    if (s->bound() != t->bound())
        throw Error("truncate: the ends of the map end up with different bounds");
    Components comps(s->level_count());
    for (int idx = 0; idx < s->level_count(); ++idx) {
        const auto c = s->coords(idx);
        comps[idx] = f.components()[f.source().level_index(c[0], c[1])];
    }
    return {s, t, std::move(comps)};
}

Bound common_bound(const Presheaf& a, const Presheaf& b)
{
    return {std::min(a.bound()[0], b.bound()[0]), std::min(a.bound()[1], b.bound()[1])};
}

Presheaf relabel(const Presheaf& x)
{
    Presheaf p = x;
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto c = p.coords(idx);
        for (int i = 0; i < p.size(idx); ++i)
            p.level(idx).names[i] = p.bisimplicial()
                ? "c" + std::to_string(c[0]) + "." + std::to_string(c[1]) + "_" + std::to_string(i)
                : "c" + std::to_string(c[0]) + "_" + std::to_string(i);
    }
    p.finalize();
    return p;
}

namespace {

std::optional<int> max_opt(std::optional<int> a, std::optional<int> b)
{
    if (!a || !b)
        return std::nullopt;
    return std::max(*a, *b);
}

std::optional<int> sum_opt(std::optional<int> a, std::optional<int> b)
{
    if (!a || !b)
        return std::nullopt;
    return *a + *b;
}

} // namespace

Presheaf product(const Presheaf& a, const Presheaf& b)
{
    if (a.shape() != b.shape())
        throw Error("product: shape mismatch");
    if (a.bound() != b.bound())
        throw Error("product: bound mismatch");
    Presheaf p(a.shape(), a.bound());
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const int na = a.size(idx), nb = b.size(idx);
        p.resize_level(idx, na * nb);
        auto& lv = p.level(idx);
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y) {
                const int c = x * nb + y;
                lv.names[c] = "(" + a.name(idx, x) + "," + b.name(idx, y) + ")";
                lv.marked[c] = (a.is_marked(idx, x) && b.is_marked(idx, y)) ? 1 : 0;
                for (int d = 0; d < p.directions(); ++d) {
                    const int fl = p.face_level(idx, d);
                    for (int i = 0; i < static_cast<int>(lv.faces[d].size()); ++i)
                        lv.faces[d][i][c] = a.face(idx, d, i, x) * b.size(fl) + b.face(idx, d, i, y);
                    const int ul = p.degeneracy_level(idx, d);
                    for (int i = 0; i < static_cast<int>(lv.degeneracies[d].size()); ++i)
                        lv.degeneracies[d][i][c] = a.degeneracy(idx, d, i, x) * b.size(ul) + b.degeneracy(idx, d, i, y);
                }
            }
    }
    for (int d = 0; d < 2; ++d) {
        p.set_cosk(d, max_opt(a.cosk()[d], b.cosk()[d]));
        p.set_skel(d, sum_opt(a.skel()[d], b.skel()[d]));
    }
    p.finalize();
    return p;
}

PresheafMap product_projection(const PresheafPtr& prod, const PresheafPtr& factor, int which)
{
    Components out(prod->level_count());
    for (int idx = 0; idx < prod->level_count(); ++idx) {
        const int nf = factor->size(idx);
        const int other = nf == 0 ? 0 : prod->size(idx) / nf;
        out[idx].resize(prod->size(idx));
        for (int c = 0; c < prod->size(idx); ++c)
            out[idx][c] = which == 0 ? c / other : c % nf;
    }
    return {prod, factor, std::move(out)};
}

PresheafMap product_map(const PresheafMap& f, const PresheafMap& g, const PresheafPtr& source,
                        const PresheafPtr& target)
{
    Components out(source->level_count());
    for (int idx = 0; idx < source->level_count(); ++idx) {
        const int nb = g.source().size(idx);
        const int nb2 = g.target().size(idx);
        out[idx].resize(source->size(idx));
        for (int c = 0; c < source->size(idx); ++c)
            out[idx][c] = f(idx, c / nb) * nb2 + g(idx, c % nb);
    }
    return {source, target, std::move(out)};
}

Presheaf box_product(const Presheaf& a, const Presheaf& b)
{
    if (a.bisimplicial() || b.bisimplicial())
        throw Error("box product takes simplicial factors");
    const Shape shape = a.marked_shape() ? Shape::MarkedBiSimplex : Shape::BiSimplex;
    Presheaf p(shape, {a.dim(), b.dim()});
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto co = p.coords(idx);
        const int ia = a.level_index(co[0]), ib = b.level_index(co[1]);
        const int na = a.size(ia), nb = b.size(ib);
        p.resize_level(idx, na * nb);
        auto& lv = p.level(idx);
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y) {
                const int c = x * nb + y;
                lv.names[c] = a.name(ia, x) + "|" + b.name(ib, y);
                lv.marked[c] = a.is_marked(ia, x) ? 1 : 0;
                for (int i = 0; i < static_cast<int>(lv.faces[0].size()); ++i)
                    lv.faces[0][i][c] = a.face(ia, 0, i, x) * nb + y;
                for (int i = 0; i < static_cast<int>(lv.degeneracies[0].size()); ++i)
                    lv.degeneracies[0][i][c] = a.degeneracy(ia, 0, i, x) * nb + y;
                const int fb = b.face_level(ib, 0), ub = b.degeneracy_level(ib, 0);
                for (int i = 0; i < static_cast<int>(lv.faces[1].size()); ++i)
                    lv.faces[1][i][c] = x * b.size(fb) + b.face(ib, 0, i, y);
                for (int i = 0; i < static_cast<int>(lv.degeneracies[1].size()); ++i)
                    lv.degeneracies[1][i][c] = x * b.size(ub) + b.degeneracy(ib, 0, i, y);
            }
    }
    // Rows are coproducts of copies of a, columns of copies of b; a coproduct
    // of c-coskeletal objects is only guaranteed max(c, 1)-coskeletal.
    auto at_least_one = [](std::optional<int> c) { return c ? std::optional<int>(std::max(*c, 1)) : c; };
    p.set_cosk(0, at_least_one(a.cosk()[0]));
    p.set_cosk(1, at_least_one(b.cosk()[0]));
    p.set_skel(0, a.skel()[0]);
    p.set_skel(1, b.skel()[0]);
    p.finalize();
    return p;
}

// ---------------------------------------------------------------------------

int Diagram::add_object(PresheafPtr p, std::string label)
{
    objects.push_back(std::move(p));
    labels.push_back(std::move(label));
    return static_cast<int>(objects.size()) - 1;
}

void Diagram::add_arrow(int source, int target, Components components)
{
    arrows.push_back({source, target, std::move(components)});
}

void Diagram::add_arrow(int source, int target, const PresheafMap& map)
{
    add_arrow(source, target, map.components());
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // The smaller index stays the root, so roots are least representatives.
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (a < b)
            parent[b] = a;
        else
            parent[a] = b;
    }
};

} // namespace

ColimitResult colimit(const Diagram& diagram)
{
    if (diagram.objects.empty())
        throw Error("colimit of an empty diagram needs a shape; add the empty presheaf");
    const Presheaf& first = *diagram.objects.front();
    for (const auto& o : diagram.objects)
        if (o->shape() != first.shape() || o->bound() != first.bound())
            throw Error("colimit: objects must share shape and bound");
    const int nobj = static_cast<int>(diagram.objects.size());
    const int nlev = first.level_count();

    ColimitResult result;
    result.coprojections.assign(nobj, Components(nlev));
    Presheaf out(first.shape(), first.bound());
    std::vector<std::vector<std::pair<int, int>>> reps(nlev); // class -> (object, cell)

    for (int idx = 0; idx < nlev; ++idx) {
        std::vector<int> offset(nobj + 1, 0);
        for (int o = 0; o < nobj; ++o)
            offset[o + 1] = offset[o] + diagram.objects[o]->size(idx);
        UnionFind uf(offset[nobj]);
        for (const auto& a : diagram.arrows) {
            const auto& comp = a.components[idx];
            for (int c = 0; c < static_cast<int>(comp.size()); ++c)
                uf.unite(offset[a.source] + c, offset[a.target] + comp[c]);
        }
        std::vector<int> class_of(offset[nobj], -1);
        for (int g = 0; g < offset[nobj]; ++g) {
            if (uf.find(g) == g) {
                class_of[g] = static_cast<int>(reps[idx].size());
                const int o = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), g) - offset.begin()) - 1;
                reps[idx].emplace_back(o, g - offset[o]);
            }
        }
        for (int o = 0; o < nobj; ++o) {
            auto& cp = result.coprojections[o][idx];
            cp.resize(diagram.objects[o]->size(idx));
            for (int c = 0; c < static_cast<int>(cp.size()); ++c)
                cp[c] = class_of[uf.find(offset[o] + c)];
        }
    }

    for (int idx = 0; idx < nlev; ++idx) {
        out.resize_level(idx, static_cast<int>(reps[idx].size()));
        auto& lv = out.level(idx);
        for (int cls = 0; cls < static_cast<int>(reps[idx].size()); ++cls) {
            const auto [o, c] = reps[idx][cls];
            const Presheaf& src = *diagram.objects[o];
            lv.names[cls] = (diagram.labels.size() > static_cast<std::size_t>(o) ? diagram.labels[o]
                                                                                 : std::to_string(o))
                + ":" + src.name(idx, c);
            for (int d = 0; d < out.directions(); ++d) {
                const int fl = out.face_level(idx, d);
                for (int i = 0; i < static_cast<int>(lv.faces[d].size()); ++i)
                    lv.faces[d][i][cls] = result.coprojections[o][fl][src.face(idx, d, i, c)];
                const int ul = out.degeneracy_level(idx, d);
                for (int i = 0; i < static_cast<int>(lv.degeneracies[d].size()); ++i)
                    lv.degeneracies[d][i][cls] = result.coprojections[o][ul][src.degeneracy(idx, d, i, c)];
            }
        }
        if (out.marked_shape())
            for (int o = 0; o < nobj; ++o)
                for (int c = 0; c < diagram.objects[o]->size(idx); ++c)
                    if (diagram.objects[o]->is_marked(idx, c))
                        lv.marked[result.coprojections[o][idx][c]] = 1;
    }
    for (int d = 0; d < 2; ++d) {
        std::optional<int> s = first.skel()[d];
        for (const auto& o : diagram.objects)
            s = max_opt(s, o->skel()[d]);
        out.set_skel(d, s);
    }
    out.finalize();
    result.object = std::move(out);
    return result;
}

PullbackResult limit_level0(const PresheafMap& f, const PresheafMap& g)
{
    const Presheaf& x = f.source();
    const Presheaf& y = g.source();
    const Presheaf& z = f.target();
    if (x.shape() != y.shape() || x.shape() != z.shape() || g.target().shape() != z.shape())
        throw Error("pullback: shape mismatch");
    if (x.bound() != y.bound() || x.bound() != z.bound())
        throw Error("pullback: bound mismatch");
    PullbackResult result;
    Presheaf p(x.shape(), x.bound());
    result.pairs.resize(p.level_count());
    std::vector<std::unordered_map<long, int>> index(p.level_count());
    for (int idx = 0; idx < p.level_count(); ++idx) {
        std::unordered_map<int, std::vector<int>> by_image;
        for (int c = 0; c < y.size(idx); ++c)
            by_image[g(idx, c)].push_back(c);
        for (int a = 0; a < x.size(idx); ++a) {
            auto it = by_image.find(f(idx, a));
            if (it == by_image.end())
                continue;
            for (int b : it->second) {
                index[idx][static_cast<long>(a) * y.size(idx) + b] = static_cast<int>(result.pairs[idx].size());
                result.pairs[idx].emplace_back(a, b);
            }
        }
    }
    for (int idx = 0; idx < p.level_count(); ++idx) {
        p.resize_level(idx, static_cast<int>(result.pairs[idx].size()));
        auto& lv = p.level(idx);
        for (int c = 0; c < static_cast<int>(result.pairs[idx].size()); ++c) {
            const auto [a, b] = result.pairs[idx][c];
            lv.names[c] = "(" + x.name(idx, a) + "," + y.name(idx, b) + ")";
            lv.marked[c] = (x.is_marked(idx, a) && y.is_marked(idx, b)) ? 1 : 0;
            for (int d = 0; d < p.directions(); ++d) {
                const int fl = p.face_level(idx, d);
                for (int i = 0; i < static_cast<int>(lv.faces[d].size()); ++i)
                    lv.faces[d][i][c] = index[fl].at(static_cast<long>(x.face(idx, d, i, a)) * y.size(fl)
                                                     + y.face(idx, d, i, b));
                const int ul = p.degeneracy_level(idx, d);
                for (int i = 0; i < static_cast<int>(lv.degeneracies[d].size()); ++i)
                    lv.degeneracies[d][i][c] = index[ul].at(static_cast<long>(x.degeneracy(idx, d, i, a)) * y.size(ul)
                                                            + y.degeneracy(idx, d, i, b));
            }
        }
    }
    for (int d = 0; d < 2; ++d)
        p.set_cosk(d, max_opt(max_opt(x.cosk()[d], y.cosk()[d]), z.cosk()[d]));
    p.finalize();
    result.object = std::move(p);
    return result;
}

int act(const Presheaf& x, int index, int dir, int cell, const std::vector<int>& seq)
{
    const int n = x.extent(index, dir);
    std::vector<char> hit(n + 1, 0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 0 || seq[i] > n || (i > 0 && seq[i] < seq[i - 1]))
            throw Error("act: operator is not a monotone map into [n]");
        hit[seq[i]] = 1;
    }
    int cur = cell, lev = index;
    for (int j = n; j >= 0; --j) {
        if (hit[j])
            continue;
        cur = x.face(lev, dir, j, cur);
        lev = x.face_level(lev, dir);
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i] != seq[i + 1])
            continue;
        const int up = x.degeneracy_level(lev, dir);
        if (up < 0)
            throw Error("act: operator leaves the truncation");
        cur = x.degeneracy(lev, dir, static_cast<int>(i), cur);
        lev = up;
    }
    return cur;
}

// ---------------------------------------------------------------------------

CheckReport is_separated(const RawMarkedPresheaf& raw)
{
    const Presheaf& u = raw.underlying;
    if (!u.marked_shape())
        throw Error("is_separated expects a marked shape");
    for (std::size_t l = 0; l < raw.plus_to_edge.size(); ++l) {
        const int e = u.level_index(1, static_cast<int>(l));
        std::unordered_map<int, int> seen;
        for (int m = 0; m < static_cast<int>(raw.plus_to_edge[l].size()); ++m) {
            const int edge = raw.plus_to_edge[l][m];
            auto [it, fresh] = seen.emplace(edge, m);
            if (!fresh) {
                auto plus_name = [&](int i) {
                    return raw.plus_names.size() > l && raw.plus_names[l].size() > static_cast<std::size_t>(i)
                        ? raw.plus_names[l][i]
                        : std::to_string(i);
                };
                nlohmann::json w = {{"column", l},
                                    {"plus_cells", {plus_name(it->second), plus_name(m)}},
                                    {"edge", u.name(e, edge)}};
                return CheckReport::failure("separated presheaf on marked simplex category", w);
            }
        }
    }
    return CheckReport::success("separated presheaf on marked simplex category");
}

CheckReport is_separated(const Presheaf& marked)
{
    auto r = is_separated(to_raw(marked));
    if (r.holds())
        if (auto err = marked.check_markings())
            return CheckReport::failure("marked simplicial object", {{"reason", *err}});
    return r;
}

RawMarkedPresheaf to_raw(const Presheaf& marked)
{
    RawMarkedPresheaf raw{marked, {}, {}};
    if (marked.dim() < 1)
        return raw;
    for (int l = 0; l <= marked.bound()[1]; ++l) {
        const int e = marked.level_index(1, l);
        raw.plus_to_edge.emplace_back();
        raw.plus_names.emplace_back();
        for (int c = 0; c < marked.size(e); ++c)
            if (marked.is_marked(e, c)) {
                raw.plus_to_edge.back().push_back(c);
                raw.plus_names.back().push_back("+" + marked.name(e, c));
            }
    }
    return raw;
}

Presheaf separate(const RawMarkedPresheaf& raw)
{
    Presheaf p = raw.underlying;
    for (int idx = 0; idx < p.level_count(); ++idx)
        std::fill(p.level(idx).marked.begin(), p.level(idx).marked.end(), 0);
    for (std::size_t l = 0; l < raw.plus_to_edge.size(); ++l)
        for (int e : raw.plus_to_edge[l])
            p.set_marked(p.level_index(1, static_cast<int>(l)), e, true);
    p.finalize();
    return p;
}

} // namespace simpcalc

namespace simpcalc {

namespace {

Presheaf slice_direction(const Presheaf& x, int fixed_dir, int fixed_value)
{
    if (!x.bisimplicial())
        throw Error("rows and columns need a bisimplicial presheaf");
    const int dir = 1 - fixed_dir;
    const Shape shape = (dir == 0 && x.marked_shape()) ? Shape::MarkedSimplex : Shape::Simplex;
    Presheaf p(shape, {x.bound()[dir], 0});
    auto at = [&](int k) {
        return dir == 0 ? x.level_index(k, fixed_value) : x.level_index(fixed_value, k);
    };
    for (int k = 0; k <= x.bound()[dir]; ++k) {
        const auto& from = x.level(at(k));
        p.resize_level(k, from.size());
        auto& to = p.level(k);
        to.names = from.names;
        to.marked = from.marked;
        to.faces[0] = from.faces[dir];
        to.degeneracies[0] = from.degeneracies[dir];
    }
    p.set_cosk(0, x.cosk()[dir]);
    p.set_skel(0, x.skel()[dir]);
    p.finalize();
    return p;
}

} // namespace

Presheaf row(const Presheaf& x, int l)
{
    return slice_direction(x, 1, l);
}

Presheaf column(const Presheaf& x, int k)
{
    return slice_direction(x, 0, k);
}

} // namespace simpcalc
