#include "simpcalc/hom.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace simpcalc {

namespace {

std::vector<int> face_key(const Presheaf& x, int idx, int cell, const std::function<int(int, int)>& image)
{
    std::vector<int> key;
    for (int d = 0; d < x.directions(); ++d) {
        const int fl = x.face_level(idx, d);
        if (fl < 0)
            continue;
        for (int i = 0; i <= x.extent(idx, d); ++i)
            key.push_back(image(fl, x.face(idx, d, i, cell)));
    }
    return key;
}

} // namespace

HomEngine::HomEngine(PresheafPtr target) : target_(std::move(target))
{
    const Presheaf& y = *target_;
    by_faces_.resize(y.level_count());
    all_cells_.resize(y.level_count());
    for (int idx = 0; idx < y.level_count(); ++idx) {
        all_cells_[idx].resize(y.size(idx));
        std::iota(all_cells_[idx].begin(), all_cells_[idx].end(), 0);
        for (int c = 0; c < y.size(idx); ++c)
            by_faces_[idx][face_key(y, idx, c, [](int, int v) { return v; })].push_back(c);
    }
}

std::size_t HomEngine::search(const Presheaf& source, const HomConstraints& k,
                              const std::function<bool(const Components&)>& visit) const
{
    const Presheaf& y = *target_;
    if (source.shape() != y.shape())
        throw Error("hom: shape mismatch");
    if (source.bound() != y.bound())
        throw Error("hom: source and target must share a bound; truncate first");

    // Each cell is placed as soon as all of its faces are, so a partial
    // assignment is tested against higher cells early.
    std::vector<int> offset(source.level_count() + 1, 0);
    for (int idx = 0; idx < source.level_count(); ++idx)
        offset[idx + 1] = offset[idx] + source.size(idx);
    std::vector<int> pending(offset.back(), 0);
    std::vector<std::vector<int>> dependents(offset.back());
    for (int idx = 0; idx < source.level_count(); ++idx)
        for (int d = 0; d < source.directions(); ++d) {
            const int fl = source.face_level(idx, d);
            for (int i = 0; fl >= 0 && i <= source.extent(idx, d); ++i)
                for (int c = 0; c < source.size(idx); ++c) {
                    dependents[offset[fl] + source.face(idx, d, i, c)].push_back(offset[idx] + c);
                    ++pending[offset[idx] + c];
                }
        }
    std::vector<std::pair<int, int>> order;
    order.reserve(offset.back());
    std::function<void(int, int)> place = [&](int idx, int c) {
        order.emplace_back(idx, c);
        for (int dep : dependents[offset[idx] + c])
            if (--pending[dep] == 0) {
                const int lv = static_cast<int>(std::upper_bound(offset.begin(), offset.end(), dep) - offset.begin()) - 1;
                place(lv, dep - offset[lv]);
            }
    };
    for (int idx = 0; idx < source.level_count(); ++idx)
        for (int c = 0; c < source.size(idx); ++c)
            if (pending[offset[idx] + c] == 0 && source.face_level(idx, 0) < 0
                && (source.directions() < 2 || source.face_level(idx, 1) < 0))
                place(idx, c);
    if (static_cast<int>(order.size()) != offset.back())
        throw Error("hom: face structure does not reach every cell");

    Components comps(source.level_count());
    std::vector<std::vector<char>> used(source.level_count());
    for (int idx = 0; idx < source.level_count(); ++idx) {
        comps[idx].assign(source.size(idx), -1);
        if (k.injective)
            used[idx].assign(y.size(idx), 0);
    }

    auto admissible = [&](int idx, int c, int t) {
        if (k.fixed && (*k.fixed)[idx][c] >= 0 && (*k.fixed)[idx][c] != t)
            return false;
        if (source.is_marked(idx, c) && !y.is_marked(idx, t))
            return false;
        if (k.source_to_base && (*k.target_to_base)(idx, t) != (*k.source_to_base)(idx, c))
            return false;
        if (k.injective && used[idx][t])
            return false;
        return true;
    };

    struct Frame {
        std::vector<int> cands;
        std::size_t next = 0;
        bool ready = false;
    };
    const int n = static_cast<int>(order.size());
    std::vector<Frame> frames(n);
    static const std::vector<int> none;

    auto prepare = [&](int p) {
        auto& f = frames[p];
        f.cands.clear();
        f.next = 0;
        f.ready = true;
        const auto [idx, c] = order[p];
        const auto& src = source.degenerate_source(idx, c);
        if (src.dir >= 0) {
            const int low = source.face_level(idx, src.dir);
            const int t = y.degeneracy(low, src.dir, src.index, comps[low][src.cell]);
            if (admissible(idx, c, t))
                f.cands.push_back(t);
            return;
        }
        const std::vector<int>* bucket = &all_cells_[idx];
        if (source.face_level(idx, 0) >= 0 || (source.directions() > 1 && source.face_level(idx, 1) >= 0)) {
            auto key = face_key(source, idx, c, [&](int lv, int v) { return comps[lv][v]; });
            auto it = by_faces_[idx].find(key);
            bucket = it == by_faces_[idx].end() ? &none : &it->second;
        }
        if (k.fixed && (*k.fixed)[idx][c] >= 0) {
            const int t = (*k.fixed)[idx][c];
            if (std::binary_search(bucket->begin(), bucket->end(), t) && admissible(idx, c, t))
                f.cands.push_back(t);
            return;
        }
        for (int t : *bucket)
            if (admissible(idx, c, t))
                f.cands.push_back(t);
    };

    std::size_t found = 0;
    int p = 0;
    while (p >= 0) {
        if (p == n) {
            ++found;
            if (!visit(comps) || (k.limit && found >= k.limit))
                break;
            --p;
            continue;
        }
        auto& f = frames[p];
        const auto [idx, c] = order[p];
        if (!f.ready)
            prepare(p);
        else if (comps[idx][c] >= 0) {
            if (k.injective)
                used[idx][comps[idx][c]] = 0;
            comps[idx][c] = -1;
        }
        if (f.next >= f.cands.size()) {
            f.ready = false;
            --p;
            continue;
        }
        const int t = f.cands[f.next++];
        comps[idx][c] = t;
        if (k.injective)
            used[idx][t] = 1;
        ++p;
    }
    return found;
}

std::vector<Components> HomEngine::all(const Presheaf& source, const HomConstraints& constraints) const
{
    std::vector<Components> out;
    search(source, constraints, [&](const Components& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

std::size_t HomEngine::count(const Presheaf& source, const HomConstraints& constraints) const
{
    return search(source, constraints, [](const Components&) { return true; });
}

std::optional<Components> HomEngine::first(const Presheaf& source, const HomConstraints& constraints) const
{
    std::optional<Components> out;
    search(source, constraints, [&](const Components& c) {
        out = c;
        return false;
    });
    return out;
}

// ---------------------------------------------------------------------------

std::string Exactness::describe() const
{
    switch (kind) {
    case Kind::Exact: return "exact";
    case Kind::ByCoskeletality: return "exact-by-coskeletality " + std::to_string(value);
    case Kind::Bounded: return "bounded-at " + std::to_string(value);
    }
    return "?";
}

Exactness hom_exactness(const Presheaf& x, const Presheaf& y, Bound d)
{
    Exactness e;
    int cosk_used = -1;
    for (int dir = 0; dir < x.directions(); ++dir) {
        if (x.skel()[dir] && *x.skel()[dir] <= d[dir])
            continue;
        if (y.cosk()[dir] && *y.cosk()[dir] <= d[dir]) {
            cosk_used = std::max(cosk_used, *y.cosk()[dir]);
            continue;
        }
        e.kind = Exactness::Kind::Bounded;
        e.value = d[dir];
        return e;
    }
    if (cosk_used >= 0) {
        e.kind = Exactness::Kind::ByCoskeletality;
        e.value = cosk_used;
    }
    return e;
}

HomSet enumerate_hom(const PresheafPtr& x, const PresheafPtr& y, const HomConstraints& constraints)
{
    if (x->shape() != y->shape())
        throw Error("enumerate_hom: shape mismatch");
    const Bound d = common_bound(*x, *y);
    HomSet h;
    h.source = x->bound() == d ? x : share(truncate(*x, d));
    h.target = y->bound() == d ? y : share(truncate(*y, d));
    h.exactness = hom_exactness(*x, *y, d);
    HomEngine engine(h.target);
    engine.search(*h.source, constraints, [&](const Components& c) {
        h.elements.emplace_back(h.source, h.target, c);
        return true;
    });
    return h;
}

std::size_t count_hom(const Presheaf& x, const Presheaf& y)
{
    if (x.shape() != y.shape())
        throw Error("count_hom: shape mismatch");
    const Bound d = common_bound(x, y);
    auto src = x.bound() == d ? x : truncate(x, d);
    auto tgt = share(y.bound() == d ? y : truncate(y, d));
    return HomEngine(tgt).count(src);
}

std::optional<PresheafMap> find_isomorphism(const PresheafPtr& x, const PresheafPtr& y)
{
    if (x->shape() != y->shape() || x->bound() != y->bound())
        return std::nullopt;
    for (int idx = 0; idx < x->level_count(); ++idx) {
        if (x->size(idx) != y->size(idx))
            return std::nullopt;
        long mx = 0, my = 0;
        for (int c = 0; c < x->size(idx); ++c) {
            mx += x->is_marked(idx, c);
            my += y->is_marked(idx, c);
        }
        if (mx != my)
            return std::nullopt;
    }
    HomConstraints k;
    k.injective = true;
    auto comps = HomEngine(y).first(*x, k);
    if (!comps)
        return std::nullopt;
    return PresheafMap(x, y, std::move(*comps));
}

bool isomorphic(const PresheafPtr& x, const PresheafPtr& y)
{
    return find_isomorphism(x, y).has_value();
}

std::optional<PresheafMap> map_from_vertices(const PresheafPtr& source, const PresheafPtr& target,
                                             const std::vector<int>& vertex_images)
{
    if (static_cast<int>(vertex_images.size()) != source->size(0))
        throw Error("map_from_vertices: wrong number of vertex images");
    Components fixed(source->level_count());
    for (int idx = 0; idx < source->level_count(); ++idx)
        fixed[idx].assign(source->size(idx), -1);
    fixed[0] = vertex_images;
    HomConstraints k;
    k.fixed = &fixed;
    auto comps = HomEngine(target).first(*source, k);
    if (!comps)
        return std::nullopt;
    return PresheafMap(source, target, std::move(*comps));
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> boundary_tuples(const Presheaf& x, int index, int dir)
{
    const int k = x.extent(index, dir);
    const int fl = x.face_level(index, dir);
    std::vector<std::vector<int>> out;
    if (fl < 0)
        return out;
    const int n = x.size(fl);
    std::vector<int> tuple(k + 1, -1);
    std::function<void(int)> extend = [&](int j) {
        if (j > k) {
            out.push_back(tuple);
            return;
        }
        for (int c = 0; c < n; ++c) {
            bool ok = true;
            // d_i x_j = d_{j-1} x_i for i < j
            if (k >= 2)
                for (int i = 0; i < j && ok; ++i)
                    ok = x.face(fl, dir, i, c) == x.face(fl, dir, j - 1, tuple[i]);
            if (!ok)
                continue;
            tuple[j] = c;
            extend(j + 1);
        }
        tuple[j] = -1;
    };
    extend(0);
    return out;
}

CheckReport is_coskeletal(const Presheaf& x, int c)
{
    return is_coskeletal(x, CoskCertificate{c, c});
}

CheckReport is_coskeletal(const Presheaf& x, CoskCertificate c)
{
    const std::string def = "coskeletal: cells above degree c biject with compatible boundaries";
    for (int dir = 0; dir < x.directions(); ++dir) {
        if (!c[dir])
            continue;
        for (int idx = 0; idx < x.level_count(); ++idx) {
            const int k = x.extent(idx, dir);
            if (k <= *c[dir])
                continue;
            auto tuples = boundary_tuples(x, idx, dir);
            std::unordered_map<std::vector<int>, int, VecHash> hit;
            for (int cell = 0; cell < x.size(idx); ++cell) {
                std::vector<int> b(k + 1);
                for (int i = 0; i <= k; ++i)
                    b[i] = x.face(idx, dir, i, cell);
                auto [it, fresh] = hit.emplace(std::move(b), cell);
                if (!fresh)
                    return CheckReport::failure(def, {{"direction", dir},
                                                      {"level", x.coords(idx)},
                                                      {"reason", "two cells share a boundary"},
                                                      {"cells", {x.name(idx, it->second), x.name(idx, cell)}}});
            }
            for (const auto& t : tuples)
                if (!hit.count(t)) {
                    std::vector<std::string> names;
                    const int fl = x.face_level(idx, dir);
                    for (int v : t)
                        names.push_back(x.name(fl, v));
                    return CheckReport::failure(def, {{"direction", dir},
                                                      {"level", x.coords(idx)},
                                                      {"reason", "compatible boundary without filler"},
                                                      {"boundary", names}});
                }
        }
    }
    return CheckReport::success(def, {"checked through the stored bound"});
}

} // namespace simpcalc
