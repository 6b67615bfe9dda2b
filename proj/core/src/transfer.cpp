#include "simpcalc/transfer.hpp"

#include <unordered_map>

#include "simpcalc/hom.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"

namespace simpcalc {

namespace {

constexpr std::pair<TransferTag, std::string_view> tag_names[] = {
    {TransferTag::P1Star, "p1*"},         {TransferTag::I1Star, "i1*"},
    {TransferTag::TLower, "t!"},          {TransferTag::TUpper, "t^!"},
    {TransferTag::PPlusStar, "p+*"},      {TransferTag::IPlusStar, "i+*"},
    {TransferTag::TauPlusLower, "t+!"},   {TransferTag::TauPlusUpper, "t+^!"},
    {TransferTag::FlatStarProlong, "flat"}, {TransferTag::ForgetProlong, "forget"}};

constexpr std::pair<AdjunctionPair, std::string_view> pair_names[] = {
    {AdjunctionPair::P1I1, "p1*-i1*"},       {AdjunctionPair::TLowerUpper, "t!-t^!"},
    {AdjunctionPair::PPlusIPlus, "p+*-i+*"}, {AdjunctionPair::TauPlus, "t+!-t+^!"},
    {AdjunctionPair::FlatForget, "flat-forget"}, {AdjunctionPair::ForgetSharp, "forget-sharp"}};

std::vector<int> coface_vertices(int n, int i)
{
    std::vector<int> v(n);
    for (int a = 0; a < n; ++a)
        v[a] = a < i ? a : a + 1;
    return v;
}

std::vector<int> codegeneracy_vertices(int n, int i)
{
    std::vector<int> v(n + 2);
    for (int a = 0; a < n + 2; ++a)
        v[a] = a <= i ? a : a - 1;
    return v;
}

std::vector<int> flatten(const Components& c)
{
    std::vector<int> out;
    for (const auto& lv : c) {
        out.push_back(-1);
        out.insert(out.end(), lv.begin(), lv.end());
    }
    return out;
}

Components identity_components(const Presheaf& p)
{
    Components c(p.level_count());
    for (int idx = 0; idx < p.level_count(); ++idx) {
        c[idx].resize(p.size(idx));
        for (int i = 0; i < p.size(idx); ++i)
            c[idx][i] = i;
    }
    return c;
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(what);
}

} // namespace

std::string_view to_string(TransferTag tag)
{
    for (const auto& [t, name] : tag_names)
        if (t == tag)
            return name;
    return "?";
}

TransferTag transfer_tag_from_string(std::string_view text)
{
    for (const auto& [t, name] : tag_names)
        if (name == text)
            return t;
    throw Error("unknown transfer functor '" + std::string(text) + "'");
}

std::string_view to_string(AdjunctionPair pair)
{
    for (const auto& [p, name] : pair_names)
        if (p == pair)
            return name;
    return "?";
}

AdjunctionPair adjunction_from_string(std::string_view text)
{
    for (const auto& [p, name] : pair_names)
        if (name == text)
            return p;
    throw Error("unknown adjunction '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

TransferModels::TransferModels(bool marked, int bound) : marked_(marked), bound_(bound) {}

PresheafPtr TransferModels::factor(int which, int n)
{
    auto& slot = factors_[which][n];
    if (!slot) {
        if (which == 0)
            slot = share(marked_ ? flat(simplex(n, bound_)) : simplex(n, bound_));
        else
            slot = share(marked_ ? sharp(simplex(n, bound_)) : groupoid_nerve(n, bound_));
    }
    return slot;
}

PresheafPtr TransferModels::object(int n, int m)
{
    auto& slot = objects_[{n, m}];
    if (!slot)
        slot = share(product(*factor(0, n), *factor(1, m)));
    return slot;
}

PresheafPtr TransferModels::plus(int m)
{
    require(marked_, "τ(1⁺) exists only for the marked models");
    auto& slot = plus_[m];
    if (!slot)
        slot = share(product(sharp(simplex(1, bound_)), *factor(1, m)));
    return slot;
}

const PresheafMap& TransferModels::operator_map(int n, int m, int dir, int i, bool degeneracy)
{
    const std::array<int, 5> key{n, m, dir, i, degeneracy ? 1 : 0};
    if (auto it = maps_.find(key); it != maps_.end())
        return it->second;
    const int here = dir == 0 ? n : m;
    const int there = degeneracy ? here + 1 : here - 1;
    const auto vertices = degeneracy ? codegeneracy_vertices(here, i) : coface_vertices(here, i);
    const int sn = dir == 0 ? there : n;
    const int sm = dir == 0 ? m : there;
    PresheafMap f = dir == 0 ? sequence_map(factor(0, there), factor(0, n), vertices) : identity_map(factor(0, n));
    PresheafMap g = dir == 1 ? sequence_map(factor(1, there), factor(1, m), vertices) : identity_map(factor(1, m));
    return maps_.emplace(key, product_map(f, g, object(sn, sm), object(n, m))).first->second;
}

const PresheafMap& TransferModels::coface(int n, int m, int dir, int i)
{
    return operator_map(n, m, dir, i, false);
}

const PresheafMap& TransferModels::codegeneracy(int n, int m, int dir, int i)
{
    return operator_map(n, m, dir, i, true);
}

CoFamily TransferModels::family()
{
    CoFamily f;
    f.object = [this](int n, int m) { return object(n, m); };
    f.coface = [this](int n, int m, int dir, int i) { return coface(n, m, dir, i); };
    f.codegeneracy = [this](int n, int m, int dir, int i) { return codegeneracy(n, m, dir, i); };
    // Both directions vary maps into the same simplicial object. Columns
    // m ↦ Hom(J[m], Z) stay c-coskeletal: for m > c the faces of J[m] already
    // cover its c-skeleton.
    f.target_direction = {0, 0};
    return f;
}

// ---------------------------------------------------------------------------

Presheaf p1_star(const Presheaf& s, int m_bound)
{
    require(!s.bisimplicial(), "p1*: expected a simplicial object");
    return box_product(s, point(m_bound));
}

Presheaf i1_star(const Presheaf& x)
{
    require(x.bisimplicial(), "i1*: expected a bisimplicial object");
    return row(x, 0);
}

LowerExtension t_lower(const PresheafPtr& x, int bound)
{
    require(x->bisimplicial(), "t_!: expected a bisimplicial object");
    require(bound >= 0, "t_!: negative bound");
    LowerExtension out;
    const bool marked = x->marked_shape();
    out.models = std::make_shared<TransferModels>(marked, bound);
    auto& models = *out.models;

    Diagram dg;
    if (x->total_cells() == 0)
        dg.add_object(share(empty_presheaf(marked ? Shape::MarkedSimplex : Shape::Simplex, {bound, 0})), "empty");
    out.copy_of.resize(x->level_count());
    for (int idx = 0; idx < x->level_count(); ++idx) {
        const auto [n, m] = x->coords(idx);
        for (int c = 0; c < x->size(idx); ++c)
            out.copy_of[idx].push_back(dg.add_object(
                models.object(n, m), x->name(idx, c) + "@" + std::to_string(n) + "," + std::to_string(m)));
    }
    for (int idx = 0; idx < x->level_count(); ++idx) {
        const auto [n, m] = x->coords(idx);
        for (int d = 0; d < 2; ++d) {
            const int fl = x->face_level(idx, d);
            const int ul = x->degeneracy_level(idx, d);
            for (int i = 0; i <= x->extent(idx, d); ++i) {
                for (int c = 0; fl >= 0 && c < x->size(idx); ++c)
                    dg.add_arrow(out.copy_of[fl][x->face(idx, d, i, c)], out.copy_of[idx][c],
                                 models.coface(n, m, d, i).components());
                for (int c = 0; ul >= 0 && c < x->size(idx); ++c)
                    dg.add_arrow(out.copy_of[ul][x->degeneracy(idx, d, i, c)], out.copy_of[idx][c],
                                 models.codegeneracy(n, m, d, i).components());
            }
        }
    }
    // A marked edge x ∈ X_{1⁺,m} contributes τ(1⁺) × Δ[m]♯ glued along its
    // underlying copy; the two share their cells.
    if (marked && x->dim() >= 1)
        for (int m = 0; m <= x->bound()[1]; ++m) {
            const int e = x->level_index(1, m);
            for (int c = 0; c < x->size(e); ++c) {
                if (!x->is_marked(e, c))
                    continue;
                auto plus = models.plus(m);
                const int o = dg.add_object(plus, x->name(e, c) + "@1+," + std::to_string(m));
                dg.add_arrow(out.copy_of[e][c], o, identity_components(*plus));
            }
        }

    auto result = colimit(dg);
    out.object = share(std::move(result.object));
    out.coprojections = std::move(result.coprojections);

    // Cells of Δ[n] × J[m] in degree k < max(n, m) lie in a proper face, so
    // cells of X above level k add no new k-cells and no new identifications.
    for (int d = 0; d < 2; ++d) {
        const auto s = x->skel()[d];
        if (x->bound()[d] < bound && (!s || *s > x->bound()[d])) {
            out.exact = false;
            out.notes.push_back("input may have nondegenerate cells above its bound in direction "
                                + std::to_string(d) + "; computed from the truncation");
        }
    }
    if (out.exact)
        out.notes.push_back("exact through " + std::to_string(bound));
    return out;
}

HomObject t_upper(const PresheafPtr& s, Bound out_bound)
{
    require(!s->bisimplicial(), "t^!: expected a simplicial object");
    require(s->cosk()[0].has_value(), "t^!: the input needs a coskeletality certificate");
    const bool marked = s->marked_shape();
    const int k = s->dim();
    TransferModels models(marked, k);
    auto pt = share(marked ? flat(point(k)) : point(k));
    HomObject h = hom_object(pt, s, Shape::BiSimplex, out_bound, models.family());
    if (!marked)
        return h;

    // (τ(1⁺) × Δ[m]♯ → S) is a map Δ[1] × Δ[m] → S sending every edge to a
    // marked edge, so the marked level embeds in level (1, m).
    std::vector<std::vector<std::string>> names(out_bound[1] + 1);
    if (out_bound[0] >= 1 && k >= 1)
        for (int m = 0; m <= out_bound[1]; ++m) {
            const int idx = h.object.level_index(1, m);
            for (int e = 0; e < h.object.size(idx); ++e) {
                const auto& comps = h.elements[idx][e];
                bool all = true;
                for (int c : comps[1])
                    all = all && h.y->is_marked(1, c);
                if (all)
                    names[m].push_back(h.object.name(idx, e));
            }
        }
    const auto cosk = h.object.cosk();
    h.object = with_markings(h.object, names);
    for (int d = 0; d < 2; ++d)
        h.object.set_cosk(d, cosk[d]);
    return h;
}

TransferResult apply_transfer(TransferTag tag, const PresheafPtr& x, std::optional<Bound> bound)
{
    TransferResult r;
    const Shape shape = x->shape();
    auto expect = [&](Shape want) {
        if (shape != want)
            throw Error(std::string(to_string(tag)) + ": expected " + std::string(to_string(want)) + ", got "
                        + std::string(to_string(shape)));
    };
    switch (tag) {
    case TransferTag::P1Star:
    case TransferTag::PPlusStar:
        expect(tag == TransferTag::P1Star ? Shape::Simplex : Shape::MarkedSimplex);
        r.object = p1_star(*x, bound ? (*bound)[1] : x->dim());
        break;
    case TransferTag::I1Star:
    case TransferTag::IPlusStar:
        expect(tag == TransferTag::I1Star ? Shape::BiSimplex : Shape::MarkedBiSimplex);
        r.object = i1_star(*x);
        break;
    case TransferTag::TLower:
    case TransferTag::TauPlusLower: {
        expect(tag == TransferTag::TLower ? Shape::BiSimplex : Shape::MarkedBiSimplex);
        auto lower = t_lower(x, bound ? (*bound)[0] : x->dim());
        r.object = *lower.object;
        r.exact = lower.exact;
        r.notes = lower.notes;
        break;
    }
    case TransferTag::TUpper:
    case TransferTag::TauPlusUpper: {
        expect(tag == TransferTag::TUpper ? Shape::Simplex : Shape::MarkedSimplex);
        auto upper = t_upper(x, bound.value_or(Bound{x->dim(), x->dim()}));
        r.object = std::move(upper.object);
        r.exact = upper.exactness.exact();
        r.notes.push_back(upper.exactness.describe());
        break;
    }
    case TransferTag::FlatStarProlong:
        require(!x->marked_shape(), "flat: expected an unmarked object");
        r.object = flat(*x);
        break;
    case TransferTag::ForgetProlong:
        require(x->marked_shape(), "forget: expected a marked object");
        r.object = forget(*x);
        break;
    }
    return r;
}

// ---------------------------------------------------------------------------

namespace {

using Transpose = std::function<Components(const Components&)>;

struct IllDefined : Error {
    using Error::Error;
};

// Checks that fwd and back are mutually inverse maps between the two hom
// sets.
CheckReport compare_homs(const std::string& def, const HomSet& left, const HomSet& right, const Transpose& fwd,
                         const Transpose& back, AdjunctionCheck& out)
{
    out.left_size = left.size();
    out.right_size = right.size();
    std::vector<std::string> notes{"|Hom(L x, y)| = " + std::to_string(left.size()),
                                   "|Hom(x, R y)| = " + std::to_string(right.size())};
    std::unordered_map<std::vector<int>, int, VecHash> left_index, right_index;
    for (std::size_t i = 0; i < left.size(); ++i)
        left_index.emplace(flatten(left.elements[i].components()), static_cast<int>(i));
    for (std::size_t i = 0; i < right.size(); ++i)
        right_index.emplace(flatten(right.elements[i].components()), static_cast<int>(i));

    auto run = [&](const HomSet& from, const Transpose& there, const Transpose& home,
                   const std::unordered_map<std::vector<int>, int, VecHash>& index,
                   const char* side) -> std::optional<nlohmann::json> {
        for (std::size_t i = 0; i < from.size(); ++i) {
            const auto& f = from.elements[i].components();
            Components t;
            try {
                t = there(f);
            }
            catch (const IllDefined& e) {
                return nlohmann::json{{"side", side}, {"element", i}, {"reason", e.what()}};
            }
            if (!index.count(flatten(t)))
                return nlohmann::json{{"side", side}, {"element", i}, {"reason", "transpose is not a map"}};
            Components back_again;
            try {
                back_again = home(t);
            }
            catch (const IllDefined& e) {
                return nlohmann::json{{"side", side}, {"element", i}, {"reason", e.what()}};
            }
            if (back_again != f)
                return nlohmann::json{{"side", side}, {"element", i}, {"reason", "round trip differs"}};
        }
        return std::nullopt;
    };
    if (auto w = run(left, fwd, back, right_index, "left"))
        return CheckReport::failure(def, *w, notes);
    if (auto w = run(right, back, fwd, left_index, "right"))
        return CheckReport::failure(def, *w, notes);
    if (left.size() != right.size())
        return CheckReport::failure(def, {{"reason", "cardinalities differ"}}, notes);
    for (const auto* h : {&left, &right})
        notes.push_back(h->exactness.describe());
    if (!left.exactness.exact() || !right.exactness.exact())
        return CheckReport::unknown(def, notes);
    return CheckReport::success(def, notes);
}

AdjunctionCheck verify_constant(bool marked, const PresheafPtr& s, const PresheafPtr& x, const std::string& def)
{
    const Shape ss = marked ? Shape::MarkedSimplex : Shape::Simplex;
    const Shape xs = marked ? Shape::MarkedBiSimplex : Shape::BiSimplex;
    require(s->shape() == ss && x->shape() == xs, def + ": shape mismatch");
    const int k = std::min(s->dim(), x->bound()[0]);
    auto sk = s->dim() == k ? s : share(truncate(*s, {k, 0}));
    auto xk = x->bound()[0] == k ? x : share(truncate(*x, {k, x->bound()[1]}));
    const int mb = xk->bound()[1];
    auto left_obj = share(p1_star(*sk, mb));
    auto right_obj = share(i1_star(*xk));
    AdjunctionCheck out;
    const auto left = enumerate_hom(left_obj, xk);
    const auto right = enumerate_hom(sk, right_obj);
    // The (k, l) cells of p₁*S are listed in the order of S_k.
    const Transpose fwd = [&](const Components& phi) {
        Components psi(k + 1);
        for (int n = 0; n <= k; ++n)
            psi[n] = phi[xk->level_index(n, 0)];
        return psi;
    };
    const Transpose back = [&](const Components& psi) {
        Components phi(xk->level_count());
        for (int idx = 0; idx < xk->level_count(); ++idx) {
            const auto [n, l] = xk->coords(idx);
            for (int c : psi[n]) {
                for (int j = 0; j < l; ++j)
                    c = xk->degeneracy(xk->level_index(n, j), 1, 0, c);
                phi[idx].push_back(c);
            }
        }
        return phi;
    };
    out.report = compare_homs(def, left, right, fwd, back, out);
    return out;
}

AdjunctionCheck verify_identity_pair(bool flat_forget, const PresheafPtr& x, const PresheafPtr& y,
                                     const std::string& def)
{
    AdjunctionCheck out;
    HomSet left, right;
    if (flat_forget) {
        require(!x->marked_shape() && y->marked_shape() && with_marking(x->shape()) == y->shape(),
                def + ": shape mismatch");
        left = enumerate_hom(share(flat(*x)), y);
        right = enumerate_hom(x, share(forget(*y)));
    }
    else {
        require(x->marked_shape() && !y->marked_shape() && x->shape() == with_marking(y->shape()),
                def + ": shape mismatch");
        left = enumerate_hom(share(forget(*x)), y);
        right = enumerate_hom(x, share(sharp(*y)));
    }
    // flat, forget and sharp keep cells in place.
    const Transpose same = [](const Components& c) { return c; };
    out.report = compare_homs(def, left, right, same, same, out);
    return out;
}

AdjunctionCheck verify_t(bool marked, const PresheafPtr& x, const PresheafPtr& s, const std::string& def)
{
    const Shape xs = marked ? Shape::MarkedBiSimplex : Shape::BiSimplex;
    const Shape ss = marked ? Shape::MarkedSimplex : Shape::Simplex;
    require(x->shape() == xs && s->shape() == ss, def + ": shape mismatch");
    const int k = s->dim();
    const auto lower = t_lower(x, k);
    const auto upper = t_upper(s, x->bound());
    auto upper_obj = share(upper.object);
    AdjunctionCheck out;
    const auto left = enumerate_hom(lower.object, s);
    const auto right = enumerate_hom(x, upper_obj);

    std::vector<std::unordered_map<std::vector<int>, int, VecHash>> element_index(x->level_count());
    for (int idx = 0; idx < x->level_count(); ++idx) {
        // pt × t(n, m) lists its cells in the order of t(n, m).
        require(upper.cylinders[idx]->total_cells() == lower.models->object(x->coords(idx)[0], x->coords(idx)[1])->total_cells(),
                def + ": cylinder and model disagree");
        for (std::size_t e = 0; e < upper.elements[idx].size(); ++e)
            element_index[idx].emplace(flatten(upper.elements[idx][e]), static_cast<int>(e));
    }

    const Transpose fwd = [&](const Components& phi) {
        Components psi(x->level_count());
        for (int idx = 0; idx < x->level_count(); ++idx)
            for (int c = 0; c < x->size(idx); ++c) {
                const auto& iota = lower.insertion(idx, c);
                Components comp(iota.size());
                for (std::size_t lv = 0; lv < iota.size(); ++lv)
                    for (int z : iota[lv])
                        comp[lv].push_back(phi[lv][z]);
                auto it = element_index[idx].find(flatten(comp));
                if (it == element_index[idx].end())
                    throw IllDefined("φ∘ι_x is not a cell of t^!S at " + x->name(idx, c));
                psi[idx].push_back(it->second);
            }
        return psi;
    };
    const Transpose back = [&](const Components& psi) {
        const Presheaf& out_obj = *lower.object;
        Components phi(out_obj.level_count());
        for (int lv = 0; lv < out_obj.level_count(); ++lv)
            phi[lv].assign(out_obj.size(lv), -1);
        for (int idx = 0; idx < x->level_count(); ++idx)
            for (int c = 0; c < x->size(idx); ++c) {
                const auto& iota = lower.insertion(idx, c);
                const auto& elem = upper.elements[idx][psi[idx][c]];
                for (std::size_t lv = 0; lv < iota.size(); ++lv)
                    for (std::size_t q = 0; q < iota[lv].size(); ++q) {
                        int& slot = phi[lv][iota[lv][q]];
                        if (slot >= 0 && slot != elem[lv][q])
                            throw IllDefined("copies disagree at " + out_obj.name(static_cast<int>(lv), iota[lv][q]));
                        slot = elem[lv][q];
                    }
            }
        for (const auto& lv : phi)
            for (int v : lv)
                if (v < 0)
                    throw IllDefined("a cell of t_!X is not covered");
        return phi;
    };
    out.report = compare_homs(def, left, right, fwd, back, out);
    for (const auto& n : lower.notes)
        out.report.notes.push_back("t_!: " + n);
    if (!lower.exact && out.report.holds())
        out.report = CheckReport::unknown(def, out.report.notes);
    return out;
}

bool same_presheaf(const Presheaf& a, const Presheaf& b)
{
    if (a.shape() != b.shape() || a.bound() != b.bound())
        return false;
    for (int idx = 0; idx < a.level_count(); ++idx) {
        const auto& la = a.level(idx);
        const auto& lb = b.level(idx);
        if (la.names != lb.names || la.faces != lb.faces || la.degeneracies != lb.degeneracies)
            return false;
        if (a.marked_shape() && la.marked != lb.marked)
            return false;
    }
    return true;
}

} // namespace

AdjunctionCheck verify_adjunction(AdjunctionPair pair, const PresheafPtr& x, const PresheafPtr& y)
{
    const std::string def = "adjunction " + std::string(to_string(pair));
    switch (pair) {
    case AdjunctionPair::P1I1: return verify_constant(false, x, y, def);
    case AdjunctionPair::PPlusIPlus: return verify_constant(true, x, y, def);
    case AdjunctionPair::TLowerUpper: return verify_t(false, x, y, def);
    case AdjunctionPair::TauPlus: return verify_t(true, x, y, def);
    case AdjunctionPair::FlatForget: return verify_identity_pair(true, x, y, def);
    case AdjunctionPair::ForgetSharp: return verify_identity_pair(false, x, y, def);
    }
    throw Error("unhandled adjunction");
}

PresheafMap composite_unit(const PresheafPtr& s, int m_bound)
{
    require(!s->bisimplicial(), "composite_unit: expected a simplicial object");
    auto p = share(p1_star(*s, m_bound));
    const auto lower = t_lower(p, s->dim());
    Components comps(s->level_count());
    for (int n = 0; n <= s->dim(); ++n) {
        const int idx = p->level_index(n, 0);
        std::string top = "(";
        for (int v = 0; v <= n; ++v)
            top += std::to_string(v);
        top += "," + std::string(n + 1, '0') + ")";
        const int cell = lower.models->object(n, 0)->find(n, top);
        require(cell >= 0, "composite_unit: no top cell " + top);
        for (int c = 0; c < s->size(n); ++c)
            comps[n].push_back(lower.insertion(idx, c)[n][cell]);
    }
    return PresheafMap(s, lower.object, std::move(comps));
}

CheckReport composite_identity_suite(const std::vector<PresheafPtr>& corpus)
{
    const std::string def = "composite identities t_!p1* = id, (t+)_!(p+)* = id, p1*(S)flat = (p+)*(S flat)";
    if (corpus.empty())
        return CheckReport::success(def, {"empty corpus: holds vacuously"});
    int checked = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& s = corpus[i];
        if (s->bisimplicial())
            continue;
        std::vector<std::pair<std::string, PresheafPtr>> cases;
        if (s->marked_shape())
            cases.emplace_back("marked", s);
        else {
            cases.emplace_back("unmarked", s);
            cases.emplace_back("flat", share(flat(*s)));
            cases.emplace_back("sharp", share(sharp(*s)));
        }
        for (const auto& [what, obj] : cases) {
            const auto unit = composite_unit(obj);
            nlohmann::json w{{"object", i}, {"case", what}};
            if (auto err = unit.check()) {
                w["reason"] = *err;
                return CheckReport::failure(def, w);
            }
            if (!unit.levelwise_bijective()) {
                w["reason"] = "unit is not a levelwise bijection";
                return CheckReport::failure(def, w);
            }
            if (obj->marked_shape() && marked_count(*obj) != marked_count(unit.target())) {
                w["reason"] = "markings differ";
                return CheckReport::failure(def, w);
            }
        }
        if (!s->marked_shape()) {
            const auto a = flat(p1_star(*s, s->dim()));
            const auto b = p1_star(flat(*s), s->dim());
            if (!same_presheaf(a, b))
                return CheckReport::failure(def, {{"object", i}, {"case", "flat square"}});
        }
        ++checked;
    }
    return CheckReport::success(def, {std::to_string(checked) + " simplicial objects checked"});
}

} // namespace simpcalc
