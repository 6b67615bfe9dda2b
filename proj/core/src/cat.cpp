#include "simpcalc/cat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "simpcalc/keyed.hpp"

namespace simpcalc {

namespace {

void check_name(const std::string& name)
{
    if (name.empty() || name.find(',') != std::string::npos)
        throw Error("category names must be nonempty and free of ','");
}

} // namespace

int FiniteCategory::compose(int g, int f) const
{
    return composition.at(static_cast<std::size_t>(g) * morphisms.size() + f);
}

std::vector<int> FiniteCategory::hom(int a, int b) const
{
    std::vector<int> out;
    for (int m = 0; m < morphism_count(); ++m)
        if (morphisms[m].source == a && morphisms[m].target == b)
            out.push_back(m);
    return out;
}

std::optional<int> FiniteCategory::inverse(int m) const
{
    const int a = source(m), b = target(m);
    for (int g : hom(b, a))
        if (compose(g, m) == identity(a) && compose(m, g) == identity(b))
            return g;
    return std::nullopt;
}

bool FiniteCategory::is_groupoid() const
{
    for (int m = 0; m < morphism_count(); ++m)
        if (!is_iso(m))
            return false;
    return true;
}

std::vector<int> FiniteCategory::isomorphisms() const
{
    std::vector<int> out;
    for (int m = 0; m < morphism_count(); ++m)
        if (is_iso(m))
            out.push_back(m);
    return out;
}

int FiniteCategory::find_object(const std::string& name) const
{
    auto it = std::find(objects.begin(), objects.end(), name);
    return it == objects.end() ? -1 : static_cast<int>(it - objects.begin());
}

int FiniteCategory::find_morphism(const std::string& name) const
{
    for (int m = 0; m < morphism_count(); ++m)
        if (morphisms[m].name == name)
            return m;
    return -1;
}

std::optional<std::string> FiniteCategory::validate() const
{
    const int n = object_count();
    const int M = morphism_count();
    if (static_cast<int>(identities.size()) != n)
        return "one identity per object is required";
    if (composition.size() != static_cast<std::size_t>(M) * M)
        return "composition table has the wrong size";
    std::set<std::string> names(objects.begin(), objects.end());
    if (static_cast<int>(names.size()) != n)
        return "object names repeat";
    names.clear();
    for (const auto& m : morphisms) {
        if (m.source < 0 || m.source >= n || m.target < 0 || m.target >= n)
            return "morphism '" + m.name + "' has an out-of-range end";
        if (!names.insert(m.name).second)
            return "morphism name '" + m.name + "' repeats";
    }
    for (int a = 0; a < n; ++a) {
        const int id = identities[a];
        if (id < 0 || id >= M || source(id) != a || target(id) != a)
            return "identity of '" + objects[a] + "' is mistyped";
    }
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            const int h = compose(g, f);
            if (target(f) != source(g)) {
                if (h != -1)
                    return "composite of non-composable " + morphisms[g].name + "," + morphisms[f].name;
                continue;
            }
            if (h < 0 || h >= M)
                return "composite " + morphisms[g].name + "∘" + morphisms[f].name + " missing";
            if (source(h) != source(f) || target(h) != target(g))
                return "composite " + morphisms[g].name + "∘" + morphisms[f].name + " is mistyped";
        }
    for (int f = 0; f < M; ++f)
        if (compose(f, identity(source(f))) != f || compose(identity(target(f)), f) != f)
            return "unit law fails at " + morphisms[f].name;
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (target(f) != source(g))
                continue;
            const int gf = compose(g, f);
            for (int h = 0; h < M; ++h)
                if (target(g) == source(h) && compose(h, gf) != compose(compose(h, g), f))
                    return "associativity fails at " + morphisms[h].name + "," + morphisms[g].name + ","
                        + morphisms[f].name;
        }
    return std::nullopt;
}

int CategoryBuilder::object(const std::string& name, std::string identity_name)
{
    check_name(name);
    if (identity_name.empty())
        identity_name = "id_" + name;
    const int a = static_cast<int>(c_.objects.size());
    c_.objects.push_back(name);
    c_.identities.push_back(arrow(identity_name, a, a));
    return a;
}

int CategoryBuilder::arrow(const std::string& name, int source, int target)
{
    check_name(name);
    c_.morphisms.push_back({name, source, target});
    return static_cast<int>(c_.morphisms.size()) - 1;
}

void CategoryBuilder::compose(int g, int f, int result)
{
    comps_.push_back({g, f, result});
}

FiniteCategory CategoryBuilder::finish() const
{
    FiniteCategory c = c_;
    const int M = c.morphism_count();
    c.composition.assign(static_cast<std::size_t>(M) * M, -1);
    auto& table = c.composition;
    for (int f = 0; f < M; ++f) {
        table[static_cast<std::size_t>(f) * M + c.identity(c.source(f))] = f;
        table[static_cast<std::size_t>(c.identity(c.target(f))) * M + f] = f;
    }
    for (const auto& [g, f, h] : comps_) {
        auto& slot = table.at(static_cast<std::size_t>(g) * M + f);
        if (slot >= 0 && slot != h)
            throw Error("conflicting composite for " + c.morphisms.at(g).name + "∘" + c.morphisms.at(f).name);
        slot = h;
    }
    if (auto err = c.validate())
        throw Error("invalid category: " + *err);
    return c;
}

FiniteCategory poset_category(int n)
{
    CategoryBuilder b;
    for (int i = 0; i <= n; ++i)
        b.object(std::to_string(i));
    std::map<std::pair<int, int>, int> arrow;
    for (int i = 0; i <= n; ++i)
        arrow[{i, i}] = b.partial().identity(i);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            arrow[{i, j}] = b.arrow(std::to_string(i) + "<" + std::to_string(j), i, j);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                b.compose(arrow[{j, k}], arrow[{i, j}], arrow[{i, k}]);
    return b.finish();
}

FiniteCategory chaotic_groupoid(int l)
{
    CategoryBuilder b;
    for (int i = 0; i <= l; ++i)
        b.object(std::to_string(i));
    std::map<std::pair<int, int>, int> arrow;
    for (int i = 0; i <= l; ++i)
        arrow[{i, i}] = b.partial().identity(i);
    for (int i = 0; i <= l; ++i)
        for (int j = 0; j <= l; ++j)
            if (i != j)
                arrow[{i, j}] = b.arrow(std::to_string(i) + ">" + std::to_string(j), i, j);
    for (int i = 0; i <= l; ++i)
        for (int j = 0; j <= l; ++j)
            for (int k = 0; k <= l; ++k)
                if (i != j && j != k)
                    b.compose(arrow[{j, k}], arrow[{i, j}], arrow[{i, k}]);
    return b.finish();
}

FiniteCategory discrete_category(int n)
{
    CategoryBuilder b;
    for (int i = 0; i < n; ++i)
        b.object(std::to_string(i));
    return b.finish();
}

FiniteCategory cyclic_group(int k)
{
    if (k < 1)
        throw Error("cyclic_group needs k >= 1");
    CategoryBuilder b;
    b.object("*", "g0");
    std::vector<int> g{0};
    for (int i = 1; i < k; ++i)
        g.push_back(b.arrow("g" + std::to_string(i), 0, 0));
    for (int i = 1; i < k; ++i)
        for (int j = 1; j < k; ++j)
            b.compose(g[i], g[j], g[(i + j) % k]);
    return b.finish();
}

FiniteCategory idempotent_category()
{
    CategoryBuilder b;
    b.object("*");
    const int e = b.arrow("e", 0, 0);
    b.compose(e, e, e);
    return b.finish();
}

FiniteCategory parallel_pair()
{
    CategoryBuilder b;
    const int a = b.object("a");
    const int c = b.object("b");
    b.arrow("u", a, c);
    b.arrow("v", a, c);
    return b.finish();
}

FiniteCategory product_category(const FiniteCategory& a, const FiniteCategory& b)
{
    FiniteCategory c;
    const int nb = b.object_count();
    const int mb = b.morphism_count();
    for (const auto& x : a.objects)
        for (const auto& y : b.objects)
            c.objects.push_back(x + "." + y);
    for (const auto& f : a.morphisms)
        for (const auto& g : b.morphisms)
            c.morphisms.push_back({f.name + "." + g.name, f.source * nb + g.source, f.target * nb + g.target});
    for (int x = 0; x < a.object_count(); ++x)
        for (int y = 0; y < nb; ++y)
            c.identities.push_back(a.identity(x) * mb + b.identity(y));
    const int M = c.morphism_count();
    c.composition.assign(static_cast<std::size_t>(M) * M, -1);
    for (int g = 0; g < M; ++g)
        for (int f = 0; f < M; ++f) {
            const int ga = g / mb, gb = g % mb, fa = f / mb, fb = f % mb;
            const int ha = a.compose(ga, fa), hb = b.compose(gb, fb);
            if (ha >= 0 && hb >= 0)
                c.composition[static_cast<std::size_t>(g) * M + f] = ha * mb + hb;
        }
    if (auto err = c.validate())
        throw Error("product category: " + *err);
    return c;
}

std::optional<std::string> CatFunctor::validate() const
{
    if (!source || !target)
        return "functor without source or target";
    const auto& s = *source;
    const auto& t = *target;
    if (static_cast<int>(on_objects.size()) != s.object_count()
        || static_cast<int>(on_morphisms.size()) != s.morphism_count())
        return "functor tables have the wrong size";
    for (int x : on_objects)
        if (x < 0 || x >= t.object_count())
            return "object image out of range";
    for (int m = 0; m < s.morphism_count(); ++m) {
        const int fm = on_morphisms[m];
        if (fm < 0 || fm >= t.morphism_count())
            return "morphism image out of range";
        const int a = on_objects[s.source(m)], b = on_objects[s.target(m)];
        if (t.source(fm) != (contravariant ? b : a) || t.target(fm) != (contravariant ? a : b))
            return "image of " + s.morphisms[m].name + " is mistyped";
    }
    for (int x = 0; x < s.object_count(); ++x)
        if (on_morphisms[s.identity(x)] != t.identity(on_objects[x]))
            return "identity of " + s.objects[x] + " not preserved";
    for (int g = 0; g < s.morphism_count(); ++g)
        for (int f = 0; f < s.morphism_count(); ++f) {
            const int h = s.compose(g, f);
            if (h < 0)
                continue;
            const int want = contravariant ? t.compose(on_morphisms[f], on_morphisms[g])
                                           : t.compose(on_morphisms[g], on_morphisms[f]);
            if (on_morphisms[h] != want)
                return "composite " + s.morphisms[g].name + "∘" + s.morphisms[f].name + " not preserved";
        }
    return std::nullopt;
}

CatFunctor identity_functor(const CategoryPtr& c)
{
    CatFunctor f{c, c, {}, {}, false};
    f.on_objects.resize(c->object_count());
    f.on_morphisms.resize(c->morphism_count());
    for (int x = 0; x < c->object_count(); ++x)
        f.on_objects[x] = x;
    for (int m = 0; m < c->morphism_count(); ++m)
        f.on_morphisms[m] = m;
    return f;
}

CatFunctor compose(const CatFunctor& second, const CatFunctor& first)
{
    if (first.target.get() != second.source.get() && first.target->objects != second.source->objects)
        throw Error("compose: functors are not composable");
    CatFunctor out{first.source, second.target, {}, {}, first.contravariant != second.contravariant};
    for (int x : first.on_objects)
        out.on_objects.push_back(second.on_objects.at(x));
    for (int m : first.on_morphisms)
        out.on_morphisms.push_back(second.on_morphisms.at(m));
    return out;
}

bool same_functor(const CatFunctor& a, const CatFunctor& b)
{
    return a.on_objects == b.on_objects && a.on_morphisms == b.on_morphisms && a.contravariant == b.contravariant;
}

std::vector<CatFunctor> all_functors(const CategoryPtr& source, const CategoryPtr& target)
{
    const auto& s = *source;
    const auto& t = *target;
    std::vector<CatFunctor> out;
    CatFunctor f{source, target, std::vector<int>(s.object_count(), 0), std::vector<int>(s.morphism_count(), -1),
                 false};
    // Composable pairs (g, f) indexed by the largest morphism involved, so a
    // pair is checked as soon as its last member is assigned.
    std::vector<std::vector<std::array<int, 3>>> checks(s.morphism_count());
    for (int g = 0; g < s.morphism_count(); ++g)
        for (int h = 0; h < s.morphism_count(); ++h) {
            const int gh = s.compose(g, h);
            if (gh >= 0)
                checks[std::max({g, h, gh})].push_back({g, h, gh});
        }
    std::function<void(int)> morphisms = [&](int m) {
        if (m == s.morphism_count()) {
            out.push_back(f);
            return;
        }
        std::vector<int> options;
        if (s.is_identity(m))
            options = {t.identity(f.on_objects[s.source(m)])};
        else
            options = t.hom(f.on_objects[s.source(m)], f.on_objects[s.target(m)]);
        for (int v : options) {
            f.on_morphisms[m] = v;
            bool ok = true;
            for (const auto& [g, h, gh] : checks[m])
                if (f.on_morphisms[gh] != t.compose(f.on_morphisms[g], f.on_morphisms[h])) {
                    ok = false;
                    break;
                }
            if (ok)
                morphisms(m + 1);
        }
        f.on_morphisms[m] = -1;
    };
    std::function<void(int)> objects = [&](int x) {
        if (x == s.object_count()) {
            morphisms(0);
            return;
        }
        for (int y = 0; y < t.object_count(); ++y) {
            f.on_objects[x] = y;
            objects(x + 1);
        }
    };
    if (s.object_count() == 0 || t.object_count() > 0)
        objects(0);
    return out;
}

std::optional<std::string> CatDiagram::validate() const
{
    if (!base)
        return "diagram without a base";
    if (auto err = base->validate())
        return "base: " + *err;
    const auto& c = *base;
    if (static_cast<int>(fibers.size()) != c.object_count())
        return "one fiber per base object is required";
    if (static_cast<int>(transition.size()) != c.morphism_count())
        return "one transition functor per base morphism is required";
    for (int x = 0; x < c.object_count(); ++x)
        if (auto err = fibers[x]->validate())
            return "fiber " + c.objects[x] + ": " + *err;
    for (int f = 0; f < c.morphism_count(); ++f) {
        const auto& t = transition[f];
        if (t.contravariant)
            return "transition functors are covariant";
        if (t.source != fibers[c.target(f)] || t.target != fibers[c.source(f)])
            return "transition of " + c.morphisms[f].name + " has the wrong ends";
        if (auto err = t.validate())
            return "transition of " + c.morphisms[f].name + ": " + *err;
    }
    for (int x = 0; x < c.object_count(); ++x)
        if (!same_functor(transition[c.identity(x)], identity_functor(fibers[x])))
            return "F(id_" + c.objects[x] + ") is not the identity";
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f) {
            const int gf = c.compose(g, f);
            if (gf >= 0 && !same_functor(transition[gf], compose(transition[f], transition[g])))
                return "F(" + c.morphisms[g].name + "∘" + c.morphisms[f].name + ") is not F(f)F(g)";
        }
    return std::nullopt;
}

GrothendieckResult grothendieck(const CatDiagram& d)
{
    if (auto err = d.validate())
        throw Error("grothendieck: " + *err);
    const auto& c = *d.base;
    GrothendieckResult r;
    FiniteCategory tot;
    std::map<std::array<int, 2>, int> obj_index;
    for (int x = 0; x < c.object_count(); ++x)
        for (int e = 0; e < d.fibers[x]->object_count(); ++e) {
            obj_index[{x, e}] = static_cast<int>(tot.objects.size());
            tot.objects.push_back(c.objects[x] + "/" + d.fibers[x]->objects[e]);
            r.object_of.push_back({x, e});
        }
    // A morphism is keyed by (f, y, φ): its source object is the source of φ.
    std::map<std::array<int, 3>, int> mor_index;
    std::vector<std::array<int, 3>> keys;
    for (int f = 0; f < c.morphism_count(); ++f) {
        const int cs = c.source(f), ct = c.target(f);
        const auto& fc = *d.fibers[cs];
        const auto& tf = d.transition[f];
        for (int y = 0; y < d.fibers[ct]->object_count(); ++y)
            for (int x = 0; x < fc.object_count(); ++x)
                for (int phi : fc.hom(x, tf.on_objects[y])) {
                    mor_index[{f, y, phi}] = static_cast<int>(tot.morphisms.size());
                    keys.push_back({f, y, phi});
                    tot.morphisms.push_back({c.morphisms[f].name + "/" + fc.morphisms[phi].name + ">"
                                                 + d.fibers[ct]->objects[y],
                                             obj_index.at({cs, x}), obj_index.at({ct, y})});
                    r.morphism_of.push_back({f, phi});
                }
    }
    for (int o = 0; o < static_cast<int>(tot.objects.size()); ++o) {
        const auto [x, e] = r.object_of[o];
        tot.identities.push_back(mor_index.at({c.identity(x), e, d.fibers[x]->identity(e)}));
    }
    const int M = tot.morphism_count();
    tot.composition.assign(static_cast<std::size_t>(M) * M, -1);
    for (int a = 0; a < M; ++a)
        for (int b = 0; b < M; ++b) {
            if (tot.morphisms[a].target != tot.morphisms[b].source)
                continue;
            // b ∘ a with a = (f, φ) and b = (g, ψ)
            const auto [f, y, phi] = keys[a];
            const auto [g, z, psi] = keys[b];
            const int gf = c.compose(g, f);
            const auto& fc = *d.fibers[c.source(f)];
            const int moved = d.transition[f].on_morphisms[psi];
            tot.composition[static_cast<std::size_t>(b) * M + a] = mor_index.at({gf, z, fc.compose(moved, phi)});
        }
    if (auto err = tot.validate())
        throw Error("grothendieck: total category invalid: " + *err);
    r.total = std::make_shared<const FiniteCategory>(std::move(tot));
    r.projection = CatFunctor{r.total, d.base, {}, {}, false};
    for (const auto& [x, e] : r.object_of)
        r.projection.on_objects.push_back(x);
    for (const auto& [f, phi] : r.morphism_of)
        r.projection.on_morphisms.push_back(f);
    return r;
}

std::vector<int> classical_cartesian_edges(const CatDiagram& d, const GrothendieckResult& g)
{
    std::vector<int> out;
    for (int m = 0; m < static_cast<int>(g.morphism_of.size()); ++m) {
        const auto [f, phi] = g.morphism_of[m];
        if (d.fibers[d.base->source(f)]->is_iso(phi))
            out.push_back(m);
    }
    return out;
}

namespace {

// Level k: composable chains of k morphisms; level 0 holds objects as {x}.
std::vector<std::vector<CellKey>> chains(const FiniteCategory& c, int bound)
{
    std::vector<std::vector<CellKey>> out(bound + 1);
    for (int x = 0; x < c.object_count(); ++x)
        out[0].push_back({x});
    if (bound >= 1)
        for (int m = 0; m < c.morphism_count(); ++m)
            out[1].push_back({m});
    for (int k = 2; k <= bound; ++k)
        for (const auto& ch : out[k - 1])
            for (int m = 0; m < c.morphism_count(); ++m)
                if (c.source(m) == c.target(ch.back())) {
                    auto next = ch;
                    next.push_back(m);
                    out[k].push_back(std::move(next));
                }
    return out;
}

CellKey chain_face(const FiniteCategory& c, int k, int i, const CellKey& ch)
{
    if (k == 1)
        return {i == 0 ? c.target(ch[0]) : c.source(ch[0])};
    CellKey out = ch;
    if (i == 0)
        out.erase(out.begin());
    else if (i == k)
        out.pop_back();
    else {
        out[i - 1] = c.compose(ch[i], ch[i - 1]);
        out.erase(out.begin() + i);
    }
    return out;
}

CellKey chain_degeneracy(const FiniteCategory& c, int k, int i, const CellKey& ch)
{
    if (k == 0)
        return {c.identity(ch[0])};
    const int x = i == 0 ? c.source(ch[0]) : c.target(ch[i - 1]);
    CellKey out = ch;
    out.insert(out.begin() + i, c.identity(x));
    return out;
}

} // namespace

std::optional<int> longest_chain(const FiniteCategory& c)
{
    const int n = c.object_count();
    std::vector<std::vector<int>> next(n);
    for (int m = 0; m < c.morphism_count(); ++m)
        if (!c.is_identity(m))
            next[c.source(m)].push_back(c.target(m));
    // Longest path by memoised DFS; a back edge means chains are unbounded.
    std::vector<int> state(n, 0), best(n, 0);
    bool cyclic = false;
    std::function<void(int)> visit = [&](int v) {
        state[v] = 1;
        for (int w : next[v]) {
            if (state[w] == 1)
                cyclic = true;
            else if (state[w] == 0)
                visit(w);
            best[v] = std::max(best[v], best[w] + 1);
        }
        state[v] = 2;
    };
    for (int v = 0; v < n; ++v)
        if (state[v] == 0)
            visit(v);
    if (cyclic)
        return std::nullopt;
    return n == 0 ? 0 : *std::max_element(best.begin(), best.end());
}

Presheaf nerve(const FiniteCategory& c, int bound)
{
    if (auto err = c.validate())
        throw Error("nerve: " + *err);
    KeyedSpec spec;
    spec.shape = Shape::Simplex;
    spec.bound = {bound, 0};
    spec.cells = chains(c, bound);
    spec.name = [&](int k, const CellKey& ch) {
        if (k == 0)
            return c.objects[ch[0]];
        std::string s;
        for (std::size_t i = 0; i < ch.size(); ++i)
            s += (i ? "," : "") + c.morphisms[ch[i]].name;
        return s;
    };
    spec.face = [&](int k, int, int i, const CellKey& ch) { return chain_face(c, k, i, ch); };
    spec.degeneracy = [&](int k, int, int i, const CellKey& ch) { return chain_degeneracy(c, k, i, ch); };
    spec.cosk = {2, std::nullopt};
    spec.skel = {longest_chain(c), std::nullopt};
    return build_keyed(spec);
}

PresheafMap nerve_map(const CatFunctor& f, const PresheafPtr& source, const PresheafPtr& target)
{
    if (f.contravariant)
        throw Error("nerve_map needs a covariant functor");
    if (auto err = f.validate())
        throw Error("nerve_map: " + *err);
    const int bound = source->dim();
    if (target->dim() != bound)
        throw Error("nerve_map: nerves must share a bound");
    const auto sc = chains(*f.source, bound);
    const auto tc = chains(*f.target, bound);
    Components comps(bound + 1);
    for (int k = 0; k <= bound; ++k) {
        if (static_cast<int>(sc[k].size()) != source->size(k) || static_cast<int>(tc[k].size()) != target->size(k))
            throw Error("nerve_map: presheaves are not the nerves of the functor's ends");
        std::map<CellKey, int> index;
        for (std::size_t i = 0; i < tc[k].size(); ++i)
            index[tc[k][i]] = static_cast<int>(i);
        for (const auto& ch : sc[k]) {
            CellKey img;
            for (int m : ch)
                img.push_back(k == 0 ? f.on_objects[m] : f.on_morphisms[m]);
            comps[k].push_back(index.at(img));
        }
    }
    return {source, target, std::move(comps)};
}

namespace {

// A functor [n]×I[m] → C as a key: the object grid, then the horizontal
// arrows a(i,j) : (i-1,j) → (i,j), then the vertical isos v(i,j) : (i,j-1) → (i,j).
struct GridLayout {
    int n, m;
    [[nodiscard]] int obj(int i, int j) const { return i * (m + 1) + j; }
    [[nodiscard]] int hor(int i, int j) const { return (n + 1) * (m + 1) + (i - 1) * (m + 1) + j; }
    [[nodiscard]] int ver(int i, int j) const { return (n + 1) * (m + 1) + n * (m + 1) + i * m + (j - 1); }
    [[nodiscard]] int size() const { return (n + 1) * (m + 1) + n * (m + 1) + (n + 1) * m; }
};

// Composite of arrows along a run, or the identity of `at` when empty.
int run_composite(const FiniteCategory& c, const std::vector<int>& arrows, int at)
{
    int r = c.identity(at);
    for (int a : arrows)
        r = c.compose(a, r);
    return r;
}

// Reindexes along a monotone θ : [p] → [n] (dir 0) or [p] → [m] (dir 1).
CellKey grid_reindex(const FiniteCategory& c, const GridLayout& g, int dir, const std::vector<int>& theta,
                     const CellKey& key)
{
    const int p = static_cast<int>(theta.size()) - 1;
    const GridLayout h = dir == 0 ? GridLayout{p, g.m} : GridLayout{g.n, p};
    CellKey out(h.size());
    for (int i = 0; i <= h.n; ++i)
        for (int j = 0; j <= h.m; ++j) {
            const int si = dir == 0 ? theta[i] : i;
            const int sj = dir == 1 ? theta[j] : j;
            out[h.obj(i, j)] = key[g.obj(si, sj)];
        }
    for (int i = 1; i <= h.n; ++i)
        for (int j = 0; j <= h.m; ++j) {
            if (dir == 0) {
                std::vector<int> run;
                for (int q = theta[i - 1] + 1; q <= theta[i]; ++q)
                    run.push_back(key[g.hor(q, j)]);
                out[h.hor(i, j)] = run_composite(c, run, key[g.obj(theta[i - 1], j)]);
            }
            else
                out[h.hor(i, j)] = key[g.hor(i, theta[j])];
        }
    for (int i = 0; i <= h.n; ++i)
        for (int j = 1; j <= h.m; ++j) {
            if (dir == 1) {
                std::vector<int> run;
                for (int q = theta[j - 1] + 1; q <= theta[j]; ++q)
                    run.push_back(key[g.ver(i, q)]);
                out[h.ver(i, j)] = run_composite(c, run, key[g.obj(i, theta[j - 1])]);
            }
            else
                out[h.ver(i, j)] = key[g.ver(theta[i], j)];
        }
    return out;
}

std::vector<int> coface(int n, int i)
{
    std::vector<int> t;
    for (int q = 0; q <= n; ++q)
        if (q != i)
            t.push_back(q);
    return t;
}

std::vector<int> codegeneracy(int n, int i)
{
    std::vector<int> t;
    for (int q = 0; q <= n + 1; ++q)
        t.push_back(q <= i ? q : q - 1);
    return t;
}

} // namespace

Presheaf classification_diagram(const FiniteCategory& c, Bound bound)
{
    if (auto err = c.validate())
        throw Error("classification_diagram: " + *err);
    const auto rows = chains(c, bound[0]);
    std::vector<std::vector<int>> isos_from(c.object_count());
    for (int m : c.isomorphisms())
        isos_from[c.source(m)].push_back(m);

    KeyedSpec spec;
    spec.shape = Shape::BiSimplex;
    spec.bound = bound;
    spec.cells.resize(static_cast<std::size_t>(bound[0] + 1) * (bound[1] + 1));
    for (int n = 0; n <= bound[0]; ++n)
        for (int m = 0; m <= bound[1]; ++m) {
            const GridLayout g{n, m};
            auto& out = spec.cells[n * (bound[1] + 1) + m];
            for (const auto& row : rows[n]) {
                CellKey key(g.size(), -1);
                // Row 0 objects and arrows.
                if (n == 0)
                    key[g.obj(0, 0)] = row[0];
                else {
                    key[g.obj(0, 0)] = c.source(row[0]);
                    for (int i = 1; i <= n; ++i) {
                        key[g.hor(i, 0)] = row[i - 1];
                        key[g.obj(i, 0)] = c.target(row[i - 1]);
                    }
                }
                // Choose the vertical isos column by column, row by row; the
                // horizontal arrows of row j are then forced by naturality.
                std::function<void(int, int)> fill = [&](int j, int i) {
                    if (j > m) {
                        out.push_back(key);
                        return;
                    }
                    if (i > n) {
                        fill(j + 1, 0);
                        return;
                    }
                    for (int v : isos_from[key[g.obj(i, j - 1)]]) {
                        key[g.ver(i, j)] = v;
                        key[g.obj(i, j)] = c.target(v);
                        if (i > 0) {
                            const int vin = *c.inverse(key[g.ver(i - 1, j)]);
                            key[g.hor(i, j)] = c.compose(v, c.compose(key[g.hor(i, j - 1)], vin));
                        }
                        fill(j, i + 1);
                    }
                };
                fill(1, 0);
            }
        }
    spec.name = [&, bound](int idx, const CellKey& key) {
        const GridLayout g{idx / (bound[1] + 1), idx % (bound[1] + 1)};
        std::string s;
        for (int j = 0; j <= g.m; ++j) {
            if (j)
                s += ";";
            if (g.n == 0)
                s += c.objects[key[g.obj(0, j)]];
            for (int i = 1; i <= g.n; ++i)
                s += (i > 1 ? "," : "") + c.morphisms[key[g.hor(i, j)]].name;
        }
        if (g.m > 0) {
            s += "|";
            for (int i = 0; i <= g.n; ++i) {
                if (i)
                    s += ";";
                for (int j = 1; j <= g.m; ++j)
                    s += (j > 1 ? "," : "") + c.morphisms[key[g.ver(i, j)]].name;
            }
        }
        return s;
    };
    auto op = [&, bound](bool face) {
        return [&, bound, face](int idx, int dir, int i, const CellKey& key) {
            const GridLayout g{idx / (bound[1] + 1), idx % (bound[1] + 1)};
            const int len = dir == 0 ? g.n : g.m;
            return grid_reindex(c, g, dir, face ? coface(len, i) : codegeneracy(len, i), key);
        };
    };
    spec.face = op(true);
    spec.degeneracy = op(false);
    spec.cosk = {2, 2};
    return build_keyed(spec);
}

nlohmann::json to_json(const FiniteCategory& c)
{
    nlohmann::json homs = nlohmann::json::object();
    for (int a = 0; a < c.object_count(); ++a)
        for (int b = 0; b < c.object_count(); ++b) {
            auto h = c.hom(a, b);
            if (h.empty())
                continue;
            auto& list = homs[c.objects[a] + "," + c.objects[b]] = nlohmann::json::array();
            for (int m : h)
                list.push_back(c.morphisms[m].name);
        }
    nlohmann::json comp = nlohmann::json::object();
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f)
            if (!c.is_identity(g) && !c.is_identity(f) && c.compose(g, f) >= 0)
                comp[c.morphisms[g].name + "," + c.morphisms[f].name] = c.morphisms[c.compose(g, f)].name;
    nlohmann::json ids = nlohmann::json::object();
    for (int a = 0; a < c.object_count(); ++a)
        ids[c.objects[a]] = c.morphisms[c.identity(a)].name;
    return {{"objects", c.objects}, {"homs", homs}, {"comp", comp}, {"ids", ids}};
}

namespace {

std::pair<std::string, std::string> split_pair(const std::string& key)
{
    const auto pos = key.find(',');
    if (pos == std::string::npos || key.find(',', pos + 1) != std::string::npos)
        throw Error("expected a key of the form 'a,b', got '" + key + "'");
    return {key.substr(0, pos), key.substr(pos + 1)};
}

} // namespace

FiniteCategory category_from_json(const nlohmann::json& j)
{
    CategoryBuilder b;
    std::map<std::string, int> obj;
    const auto ids = j.value("ids", nlohmann::json::object());
    for (const auto& name : j.at("objects")) {
        const auto s = name.get<std::string>();
        if (obj.count(s))
            throw Error("object '" + s + "' repeats");
        obj[s] = b.object(s, ids.contains(s) ? ids.at(s).get<std::string>() : std::string{});
    }
    std::map<std::string, int> mor;
    for (int m = 0; m < b.partial().morphism_count(); ++m)
        mor[b.partial().morphisms[m].name] = m;
    const auto homs = j.value("homs", nlohmann::json::object());
    for (const auto& [key, list] : homs.items()) {
        const auto [a, c] = split_pair(key);
        if (!obj.count(a) || !obj.count(c))
            throw Error("hom key '" + key + "' names an unknown object");
        for (const auto& name : list) {
            const auto s = name.get<std::string>();
            if (auto it = mor.find(s); it != mor.end()) {
                const auto& m = b.partial().morphisms[it->second];
                if (m.source != obj[a] || m.target != obj[c])
                    throw Error("morphism '" + s + "' listed twice");
                continue;
            }
            mor[s] = b.arrow(s, obj[a], obj[c]);
        }
    }
    auto lookup = [&](const std::string& s) {
        auto it = mor.find(s);
        if (it == mor.end())
            throw Error("unknown morphism '" + s + "'");
        return it->second;
    };
    const auto comp = j.value("comp", nlohmann::json::object());
    for (const auto& [key, value] : comp.items()) {
        const auto [g, f] = split_pair(key);
        b.compose(lookup(g), lookup(f), lookup(value.get<std::string>()));
    }
    return b.finish();
}

nlohmann::json to_json(const CatFunctor& f)
{
    nlohmann::json objects = nlohmann::json::object();
    for (int x = 0; x < f.source->object_count(); ++x)
        objects[f.source->objects[x]] = f.target->objects[f.on_objects[x]];
    nlohmann::json morphisms = nlohmann::json::object();
    for (int m = 0; m < f.source->morphism_count(); ++m)
        if (!f.source->is_identity(m))
            morphisms[f.source->morphisms[m].name] = f.target->morphisms[f.on_morphisms[m]].name;
    nlohmann::json j = {{"objects", objects}, {"morphisms", morphisms}};
    if (f.contravariant)
        j["contravariant"] = true;
    return j;
}

CatFunctor functor_from_json(const nlohmann::json& j, const CategoryPtr& source, const CategoryPtr& target)
{
    CatFunctor f{source, target, std::vector<int>(source->object_count(), -1),
                 std::vector<int>(source->morphism_count(), -1), j.value("contravariant", false)};
    auto need = [](int v, const std::string& what) {
        if (v < 0)
            throw Error("functor: unknown " + what);
        return v;
    };
    for (const auto& [x, y] : j.at("objects").items())
        f.on_objects.at(need(source->find_object(x), "object '" + x + "'"))
            = need(target->find_object(y.get<std::string>()), "object '" + y.get<std::string>() + "'");
    for (int x = 0; x < source->object_count(); ++x) {
        if (f.on_objects[x] < 0)
            throw Error("functor: object '" + source->objects[x] + "' has no image");
        f.on_morphisms[source->identity(x)] = target->identity(f.on_objects[x]);
    }
    const auto morphisms = j.value("morphisms", nlohmann::json::object());
    for (const auto& [a, b] : morphisms.items())
        f.on_morphisms.at(need(source->find_morphism(a), "morphism '" + a + "'"))
            = need(target->find_morphism(b.get<std::string>()), "morphism '" + b.get<std::string>() + "'");
    for (int m = 0; m < source->morphism_count(); ++m)
        if (f.on_morphisms[m] < 0)
            throw Error("functor: morphism '" + source->morphisms[m].name + "' has no image");
    if (auto err = f.validate())
        throw Error("functor: " + *err);
    return f;
}

nlohmann::json to_json(const CatDiagram& d)
{
    nlohmann::json fibers = nlohmann::json::object();
    for (int x = 0; x < d.base->object_count(); ++x)
        fibers[d.base->objects[x]] = to_json(*d.fibers[x]);
    nlohmann::json maps = nlohmann::json::object();
    for (int f = 0; f < d.base->morphism_count(); ++f)
        if (!d.base->is_identity(f))
            maps[d.base->morphisms[f].name] = to_json(d.transition[f]);
    return {{"base", to_json(*d.base)}, {"fibers", fibers}, {"maps", maps}};
}

CatDiagram diagram_from_json(const nlohmann::json& j)
{
    CatDiagram d;
    d.base = std::make_shared<const FiniteCategory>(category_from_json(j.at("base")));
    const auto& c = *d.base;
    for (const auto& name : c.objects)
        d.fibers.push_back(std::make_shared<const FiniteCategory>(category_from_json(j.at("fibers").at(name))));
    const auto maps = j.value("maps", nlohmann::json::object());
    for (int f = 0; f < c.morphism_count(); ++f) {
        const auto& src = d.fibers[c.target(f)];
        const auto& tgt = d.fibers[c.source(f)];
        if (c.is_identity(f) && !maps.contains(c.morphisms[f].name))
            d.transition.push_back(identity_functor(src));
        else
            d.transition.push_back(functor_from_json(maps.at(c.morphisms[f].name), src, tgt));
    }
    if (auto err = d.validate())
        throw Error("diagram: " + *err);
    return d;
}

} // namespace simpcalc
