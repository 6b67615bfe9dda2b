#include "simpcalc/mapping.hpp"

#include <map>
#include <memory>

#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"

namespace simpcalc {

namespace {

std::vector<int> flatten(const Components& c)
{
    std::vector<int> out;
    for (const auto& lv : c) {
        out.insert(out.end(), lv.begin(), lv.end());
        out.push_back(-1);
    }
    return out;
}

Components precompose(const Components& f, const PresheafMap& g)
{
    Components out(g.components().size());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        out[idx].reserve(g.components()[idx].size());
        for (int v : g.components()[idx])
            out[idx].push_back(f[idx][v]);
    }
    return out;
}

std::vector<int> coface_vertices(int n, int i)
{
    std::vector<int> v(n);
    for (int j = 0; j < n; ++j)
        v[j] = j < i ? j : j + 1;
    return v;
}

std::vector<int> codegeneracy_vertices(int n, int i)
{
    std::vector<int> v(n + 2);
    for (int j = 0; j <= n + 1; ++j)
        v[j] = j <= i ? j : j - 1;
    return v;
}

// Caches built objects so that every coface map shares its ends.
struct FamilyCache {
    std::function<Presheaf(int, int)> make;
    std::map<std::pair<int, int>, PresheafPtr> built;
    PresheafPtr get(int k, int l)
    {
        auto& slot = built[{k, l}];
        if (!slot)
            slot = share(make(k, l));
        return slot;
    }
};

CoFamily family_from(std::function<Presheaf(int, int)> make, bool part_by_dir, int fixed_part)
{
    auto cache = std::make_shared<FamilyCache>();
    cache->make = std::move(make);
    CoFamily f;
    f.object = [cache](int k, int l) { return cache->get(k, l); };
    f.coface = [cache, part_by_dir, fixed_part](int k, int l, int dir, int i) {
        const int n = dir == 0 ? k : l;
        auto src = dir == 0 ? cache->get(k - 1, l) : cache->get(k, l - 1);
        return sequence_map(src, cache->get(k, l), coface_vertices(n, i), part_by_dir ? dir : fixed_part);
    };
    f.codegeneracy = [cache, part_by_dir, fixed_part](int k, int l, int dir, int i) {
        const int n = dir == 0 ? k : l;
        auto src = dir == 0 ? cache->get(k + 1, l) : cache->get(k, l + 1);
        return sequence_map(src, cache->get(k, l), codegeneracy_vertices(n, i), part_by_dir ? dir : fixed_part);
    };
    return f;
}

} // namespace

CoFamily space_family(Shape shape, Bound b)
{
    switch (shape) {
    case Shape::Simplex: return family_from([b](int n, int) { return simplex(n, b[0]); }, false, 0);
    case Shape::MarkedSimplex: return family_from([b](int n, int) { return sharp(simplex(n, b[0])); }, false, 0);
    case Shape::BiSimplex: {
        auto f = family_from([b](int n, int) { return box_product(point(b[0]), simplex(n, b[1])); }, false, 1);
        f.target_direction = {1, 1};
        return f;
    }
    case Shape::MarkedBiSimplex: {
        auto f = family_from([b](int n, int) { return sharp(box_product(point(b[0]), simplex(n, b[1]))); }, false, 1);
        f.target_direction = {1, 1};
        return f;
    }
    }
    throw Error("unknown shape");
}

CoFamily box_family(Bound b)
{
    return family_from([b](int k, int l) { return box_product(simplex(k, b[0]), simplex(l, b[1])); }, true, 0);
}

HomObject hom_object(const PresheafPtr& x, const PresheafPtr& y, Shape out_shape, Bound out_bound,
                     const CoFamily& family,
                     const std::function<HomConstraints(int, const PresheafPtr&)>& make_constraints)
{
    if (x->shape() != y->shape())
        throw Error("hom_object: shape mismatch");
    const Bound b = common_bound(*x, *y);
    HomObject h;
    h.x = x->bound() == b ? x : share(truncate(*x, b));
    h.y = y->bound() == b ? y : share(truncate(*y, b));
    Presheaf out(out_shape, out_bound);
    const HomEngine engine(h.y);
    h.elements.resize(out.level_count());
    h.cylinders.resize(out.level_count());
    std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index(out.level_count());
    bool bounded = false;
    for (int idx = 0; idx < out.level_count(); ++idx) {
        const auto c = out.coords(idx);
        auto cyl = share(product(*h.x, *family.object(c[0], c[1])));
        h.cylinders[idx] = cyl;
        auto e = hom_exactness(*cyl, *y, b);
        if (!e.exact() && !bounded) {
            h.exactness = e;
            bounded = true;
        }
        else if (!bounded && e.kind == Exactness::Kind::ByCoskeletality)
            h.exactness = e;
        const HomConstraints k = make_constraints ? make_constraints(idx, cyl) : HomConstraints{};
        h.elements[idx] = engine.all(*cyl, k);
        for (std::size_t i = 0; i < h.elements[idx].size(); ++i)
            index[idx].emplace(flatten(h.elements[idx][i]), static_cast<int>(i));
    }
    auto look = [&](int idx, const Components& f) {
        auto it = index[idx].find(flatten(f));
        if (it == index[idx].end())
            throw Error("hom_object: precomposite is not an element; constraints are not stable");
        return it->second;
    };
    for (int idx = 0; idx < out.level_count(); ++idx) {
        const auto c = out.coords(idx);
        const int n = static_cast<int>(h.elements[idx].size());
        out.resize_level(idx, n);
        for (int i = 0; i < n; ++i)
            out.level(idx).names[i] = "h" + std::to_string(i);
        for (int d = 0; d < out.directions(); ++d) {
            const int fl = out.face_level(idx, d);
            for (int i = 0; fl >= 0 && i <= c[d]; ++i) {
                auto g = product_map(identity_map(h.x), family.coface(c[0], c[1], d, i), h.cylinders[fl],
                                     h.cylinders[idx]);
                for (int e = 0; e < n; ++e)
                    out.set_face(idx, d, i, e, look(fl, precompose(h.elements[idx][e], g)));
            }
            const int ul = out.degeneracy_level(idx, d);
            for (int i = 0; ul >= 0 && i <= c[d]; ++i) {
                auto g = product_map(identity_map(h.x), family.codegeneracy(c[0], c[1], d, i), h.cylinders[ul],
                                     h.cylinders[idx]);
                for (int e = 0; e < n; ++e)
                    out.set_degeneracy(idx, d, i, e, look(ul, precompose(h.elements[idx][e], g)));
            }
        }
    }
    // Maps into a c-coskeletal target form a c-coskeletal object.
    for (int d = 0; d < out.directions(); ++d)
        out.set_cosk(d, y->cosk()[family.target_direction[d]]);
    out.finalize();
    h.object = std::move(out);
    return h;
}

HomObject mapping_space(const PresheafPtr& x, const PresheafPtr& y, int n_max)
{
    const Bound b = common_bound(*x, *y);
    return hom_object(x, y, Shape::Simplex, {n_max, 0}, space_family(x->shape(), b));
}

HomObject exponential(const PresheafPtr& x, const PresheafPtr& y, Bound out_bound)
{
    if (x->shape() != Shape::BiSimplex)
        throw Error("exponential expects bisimplicial presheaves");
    const Bound b = common_bound(*x, *y);
    return hom_object(x, y, Shape::BiSimplex, out_bound, box_family(b));
}

namespace {

int find_element(const HomObject& h, int level, const Components& f)
{
    const auto& els = h.elements[level];
    for (std::size_t i = 0; i < els.size(); ++i)
        if (els[i] == f)
            return static_cast<int>(i);
    throw Error("map is not an element of the hom object");
}

std::string iota_digits(int n)
{
    std::string s;
    for (int i = 0; i <= n; ++i)
        s.push_back(static_cast<char>('0' + i));
    return s;
}

} // namespace

PresheafMap evaluation(const HomObject& exp)
{
    auto e = share(exp.object);
    const Bound b = e->bound();
    if (b[0] > exp.x->bound()[0] || b[1] > exp.x->bound()[1])
        throw Error("evaluation: exponential computed beyond the bound of X");
    auto xt = share(truncate(*exp.x, b));
    auto yt = share(truncate(*exp.y, b));
    auto prod = share(product(*e, *xt));
    Components comps(prod->level_count());
    for (int idx = 0; idx < prod->level_count(); ++idx) {
        const auto c = prod->coords(idx);
        const auto& cyl = *exp.cylinders[idx];
        const int ci = cyl.level_index(c[0], c[1]);
        const int nx = exp.x->size(ci);
        const int csize = nx == 0 ? 0 : cyl.size(ci) / nx;
        // Locate the top cell of Δ[k]⊠Δ[l] by name.
        const std::string suffix = "," + iota_digits(c[0]) + "|" + iota_digits(c[1]) + ")";
        int top = -1;
        for (int t = 0; t < csize; ++t) {
            const auto& nm = cyl.name(ci, t);
            if (nm.size() >= suffix.size() && nm.compare(nm.size() - suffix.size(), suffix.size(), suffix) == 0)
                top = t;
        }
        if (top < 0 && nx > 0)
            throw Error("evaluation: unexpected cylinder layout");
        comps[idx].resize(prod->size(idx));
        for (int phi = 0; phi < e->size(idx); ++phi)
            for (int a = 0; a < nx; ++a)
                comps[idx][phi * nx + a] = exp.elements[idx][phi][ci][a * csize + top];
    }
    return {prod, yt, std::move(comps)};
}

MatchingResult matching_object(const PresheafPtr& x, int n)
{
    if (x->shape() != Shape::BiSimplex)
        throw Error("matching_object expects a bisimplicial presheaf");
    const Bound b = x->bound();
    if (n < 0 || n > b[0])
        throw Error("matching_object: n exceeds the bound");
    auto dF = share(box_product(boundary(n, b[0]), point(b[1])));
    auto F = share(box_product(simplex(n, b[0]), point(b[1])));
    auto incl = sequence_map(dF, F, coface_vertices(n + 1, n + 1));
    MatchingResult r;
    r.matching = mapping_space(dF, x, b[1]);
    r.column = column(*x, n);
    r.map.resize(b[1] + 1);
    const HomEngine engine(x);
    for (int m = 0; m <= b[1]; ++m) {
        auto col = share(box_product(point(b[0]), simplex(m, b[1])));
        auto full = share(product(*F, *col));
        auto g = product_map(incl, identity_map(col), r.matching.cylinders[m], full);
        const int lev = full->level_index(n, m);
        const int top = full->find(lev, "(" + iota_digits(n) + "|" + std::string(m + 1, '0') + ","
                                            + std::string(n + 1, '0') + "|" + iota_digits(m) + ")");
        if (top < 0)
            throw Error("matching_object: top cell not found");
        Components fixed(full->level_count());
        for (int idx = 0; idx < full->level_count(); ++idx)
            fixed[idx].assign(full->size(idx), -1);
        for (int c = 0; c < x->size(lev); ++c) {
            fixed[lev][top] = c;
            HomConstraints k;
            k.fixed = &fixed;
            auto phi = engine.first(*full, k);
            if (!phi)
                throw Error("matching_object: no map classifying a cell");
            r.map[m].push_back(find_element(r.matching, m, precompose(*phi, g)));
        }
    }
    return r;
}

RelativeMatchingResult relative_matching(const PresheafMap& p, int n)
{
    auto y = p.source_ptr();
    auto x = p.target_ptr();
    auto my = matching_object(y, n);
    auto mx = matching_object(x, n);
    auto MY = share(my.matching.object);
    auto MX = share(mx.matching.object);
    Components mp(MY->level_count());
    for (int m = 0; m < MY->level_count(); ++m)
        for (const auto& f : my.matching.elements[m]) {
            Components post(f.size());
            for (std::size_t lv = 0; lv < f.size(); ++lv)
                for (int v : f[lv])
                    post[lv].push_back(p(static_cast<int>(lv), v));
            mp[m].push_back(find_element(mx.matching, m, post));
        }
    auto colx = share(mx.column);
    auto coly = share(my.column);
    PresheafMap a(MY, MX, mp);
    PresheafMap bmap(colx, MX, mx.map);
    auto pb = limit_level0(a, bmap);
    RelativeMatchingResult r;
    r.map.resize(coly->level_count());
    bool inj = true;
    for (int m = 0; m < coly->level_count(); ++m) {
        std::vector<char> seen(pb.object.size(m), 0);
        for (int c = 0; c < coly->size(m); ++c) {
            const std::pair<int, int> want{my.map[m][c], p(y->level_index(n, m), c)};
            int hit = -1;
            for (std::size_t q = 0; q < pb.pairs[m].size(); ++q)
                if (pb.pairs[m][q] == want)
                    hit = static_cast<int>(q);
            if (hit < 0)
                throw Error("relative_matching: square does not commute");
            inj = inj && !seen[hit];
            seen[hit] = 1;
            r.map[m].push_back(hit);
        }
        if (coly->size(m) != pb.object.size(m))
            inj = false;
    }
    r.bijective = inj;
    r.fiber_product = std::move(pb.object);
    return r;
}

} // namespace simpcalc
