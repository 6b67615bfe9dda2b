#include "simpcalc/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "simpcalc/hom.hpp"
#include "simpcalc/json_io.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"

namespace simpcalc {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

int weighted(std::mt19937_64& rng, const std::vector<int>& weights)
{
    return std::discrete_distribution<int>(weights.begin(), weights.end())(rng);
}

// A cell and the inclusion of its boundary.
struct CellModel {
    PresheafPtr cell;
    PresheafPtr boundary;
    PresheafMap inclusion;
};

std::vector<int> iota_vec(int n)
{
    std::vector<int> v(n + 1);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

CellModel simplicial_cell(int n, int bound)
{
    auto cell = share(simplex(n, bound));
    auto bd = share(boundary(n, bound));
    return {cell, bd, sequence_map(bd, cell, iota_vec(n))};
}

// ∂(Δ[a]⊠Δ[b]) = ∂Δ[a]⊠Δ[b] ∪ Δ[a]⊠∂Δ[b], glued along ∂Δ[a]⊠∂Δ[b].
CellModel bisimplicial_cell(int a, int b, Bound bound)
{
    auto da = share(simplex(a, bound[0]));
    auto db = share(simplex(b, bound[1]));
    auto ba = share(boundary(a, bound[0]));
    auto bb = share(boundary(b, bound[1]));
    auto cell = share(box_product(*da, *db));
    auto p1 = share(box_product(*ba, *db));
    auto p2 = share(box_product(*da, *bb));
    auto p12 = share(box_product(*ba, *bb));
    Diagram d;
    d.add_object(p1, "a");
    d.add_object(p2, "b");
    d.add_object(p12, "ab");
    d.add_arrow(2, 0, sequence_map(p12, p1, iota_vec(b), 1));
    d.add_arrow(2, 1, sequence_map(p12, p2, iota_vec(a), 0));
    auto col = colimit(d);
    auto bd = share(std::move(col.object));
    const std::array<PresheafMap, 2> pieces{sequence_map(p1, cell, iota_vec(a), 0),
                                            sequence_map(p2, cell, iota_vec(b), 1)};
    Components comps(bd->level_count());
    for (int idx = 0; idx < bd->level_count(); ++idx)
        comps[idx].assign(bd->size(idx), -1);
    for (int piece = 0; piece < 2; ++piece)
        for (int idx = 0; idx < bd->level_count(); ++idx)
            for (int c = 0; c < static_cast<int>(col.coprojections[piece][idx].size()); ++c)
                comps[idx][col.coprojections[piece][idx][c]] = pieces[piece](idx, c);
    return {cell, bd, PresheafMap(bd, cell, std::move(comps))};
}

Presheaf attach(const PresheafPtr& x, const CellModel& model, const Components& attaching)
{
    Diagram d;
    d.add_object(x, "x");
    d.add_object(model.cell, "n");
    d.add_object(model.boundary, "b");
    d.add_arrow(2, 0, attaching);
    d.add_arrow(2, 1, model.inclusion);
    return relabel(colimit(d).object);
}

} // namespace

Presheaf random_presheaf(std::mt19937_64& rng, Shape shape, Bound bound, int max_nondegenerate)
{
    if (shape != Shape::Simplex && shape != Shape::BiSimplex)
        throw Error("random_presheaf: plain shapes only");
    const bool bi = shape == Shape::BiSimplex;
    if (!bi)
        bound[1] = 0;
    std::map<std::pair<int, int>, CellModel> models;
    auto model = [&](int a, int b) -> const CellModel& {
        auto it = models.find({a, b});
        if (it == models.end())
            it = models.emplace(std::make_pair(a, b), bi ? bisimplicial_cell(a, b, bound) : simplicial_cell(a, bound[0]))
                     .first;
        return it->second;
    };

    auto x = share(empty_presheaf(shape, bound));
    const int cells = uniform(rng, 1, std::max(1, max_nondegenerate));
    for (int step = 0; step < cells; ++step) {
        int a = 0, b = 0;
        if (step > 0) {
            if (bi) {
                a = weighted(rng, {3, 3, 1}) % (std::min(bound[0], 2) + 1);
                b = weighted(rng, {3, 2, 1}) % (std::min(bound[1], 2) + 1);
            } else {
                a = weighted(rng, {3, 4, 3, 1}) % (std::min(bound[0], 3) + 1);
            }
        }
        const auto& m = model(a, b);
        std::vector<Components> maps;
        HomEngine(x).search(*m.boundary, {}, [&](const Components& c) {
            maps.push_back(c);
            return maps.size() < 64;
        });
        if (maps.empty())
            continue;
        const auto& chosen = maps[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(maps.size()) - 1))];
        x = share(attach(x, m, chosen));
    }
    return *x;
}

Presheaf random_marked(std::mt19937_64& rng, int bound, int max_nondegenerate)
{
    auto s = random_presheaf(rng, Shape::Simplex, {bound, 0}, max_nondegenerate);
    std::vector<std::string> names;
    if (s.dim() >= 1)
        for (int e = 0; e < s.size(1); ++e)
            if (!s.is_degenerate(1, e) && uniform(rng, 0, 1) == 1)
                names.push_back(s.name(1, e));
    return with_markings(flat(s), {names});
}

FiniteCategory random_category(std::mt19937_64& rng, int max_objects, int max_arrows, RejectionLog* log)
{
    static const char* const object_names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    max_objects = std::clamp(max_objects, 1, 8);
    for (;;) {
        if (log)
            ++log->attempts;
        CategoryBuilder builder;
        const int n = uniform(rng, 1, max_objects);
        for (int i = 0; i < n; ++i)
            builder.object(object_names[i]);
        const int k = uniform(rng, 0, std::max(0, max_arrows));
        std::vector<int> arrows;
        for (int i = 0; i < k; ++i)
            arrows.push_back(builder.arrow("f" + std::to_string(i), uniform(rng, 0, n - 1), uniform(rng, 0, n - 1)));
        bool ok = true;
        const auto& partial = builder.partial();
        for (int g : arrows) {
            for (int f : arrows) {
                if (partial.target(f) != partial.source(g))
                    continue;
                const auto choices = partial.hom(partial.source(f), partial.target(g));
                if (choices.empty()) {
                    ok = false;
                    break;
                }
                builder.compose(g, f, choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(choices.size()) - 1))]);
            }
            if (!ok)
                break;
        }
        if (ok) {
            try {
                return builder.finish();
            } catch (const Error&) {
            }
        }
        if (log)
            ++log->rejected;
    }
}

CatDiagram random_diagram(std::mt19937_64& rng, int base_objects, int fiber_objects, RejectionLog* log)
{
    for (;;) {
        if (log)
            ++log->attempts;
        CatDiagram d;
        d.base = std::make_shared<const FiniteCategory>(random_category(rng, base_objects, 3));
        for (int c = 0; c < d.base->object_count(); ++c)
            d.fibers.push_back(std::make_shared<const FiniteCategory>(random_category(rng, fiber_objects, 2)));
        for (int f = 0; f < d.base->morphism_count(); ++f) {
            const int s = d.base->source(f), t = d.base->target(f);
            if (d.base->is_identity(f)) {
                d.transition.push_back(identity_functor(d.fibers[s]));
                continue;
            }
            auto all = all_functors(d.fibers[t], d.fibers[s]);
            d.transition.push_back(all[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(all.size()) - 1))]);
        }
        if (!d.validate())
            return d;
        if (log)
            ++log->rejected;
    }
}

Corpus generate_corpus(const CorpusSpec& spec)
{
    Corpus out;
    // Each kind draws from its own stream, so turning one off leaves the
    // others unchanged.
    auto stream = [&](std::uint64_t kind) { return std::mt19937_64(spec.seed * 0x9E3779B97F4A7C15ull + kind); };
    if (spec.simplicial) {
        auto rng = stream(1);
        for (int i = 0; i < spec.object_count; ++i)
            out.simplicial.push_back(
                share(random_presheaf(rng, Shape::Simplex, {spec.simplicial_bound, 0}, spec.max_nondegenerate)));
    }
    if (spec.bisimplicial) {
        auto rng = stream(2);
        for (int i = 0; i < spec.object_count; ++i)
            out.bisimplicial.push_back(
                share(random_presheaf(rng, Shape::BiSimplex, spec.bisimplicial_bound, spec.max_nondegenerate)));
    }
    if (spec.marked) {
        auto rng = stream(3);
        for (int i = 0; i < spec.object_count; ++i)
            out.marked.push_back(share(random_marked(rng, spec.simplicial_bound, spec.max_nondegenerate)));
    }
    if (spec.categories) {
        auto rng = stream(4);
        for (int i = 0; i < spec.object_count; ++i)
            out.categories.push_back(std::make_shared<const FiniteCategory>(
                random_category(rng, spec.max_category_objects, spec.max_category_arrows, &out.category_log)));
    }
    if (spec.diagrams) {
        auto rng = stream(5);
        for (int i = 0; i < spec.object_count; ++i)
            out.diagrams.push_back(
                random_diagram(rng, spec.diagram_base_objects, spec.diagram_fiber_objects, &out.diagram_log));
    }
    return out;
}

nlohmann::json to_json(const CorpusSpec& spec)
{
    return {{"seed", spec.seed},
            {"object_count", spec.object_count},
            {"max_nondegenerate", spec.max_nondegenerate},
            {"simplicial_bound", spec.simplicial_bound},
            {"bisimplicial_bound", spec.bisimplicial_bound},
            {"max_category_objects", spec.max_category_objects},
            {"max_category_arrows", spec.max_category_arrows},
            {"diagram_base_objects", spec.diagram_base_objects},
            {"diagram_fiber_objects", spec.diagram_fiber_objects},
            {"shapes",
             {{"simplicial", spec.simplicial},
              {"bisimplicial", spec.bisimplicial},
              {"marked", spec.marked},
              {"categories", spec.categories},
              {"diagrams", spec.diagrams}}}};
}

CorpusSpec corpus_spec_from_json(const nlohmann::json& j)
{
    CorpusSpec s;
    s.seed = j.value("seed", s.seed);
    s.object_count = j.value("object_count", s.object_count);
    s.max_nondegenerate = j.value("max_nondegenerate", s.max_nondegenerate);
    s.simplicial_bound = j.value("simplicial_bound", s.simplicial_bound);
    s.bisimplicial_bound = j.value("bisimplicial_bound", s.bisimplicial_bound);
    s.max_category_objects = j.value("max_category_objects", s.max_category_objects);
    s.max_category_arrows = j.value("max_category_arrows", s.max_category_arrows);
    s.diagram_base_objects = j.value("diagram_base_objects", s.diagram_base_objects);
    s.diagram_fiber_objects = j.value("diagram_fiber_objects", s.diagram_fiber_objects);
    if (j.contains("shapes")) {
        const auto& sh = j.at("shapes");
        s.simplicial = sh.value("simplicial", s.simplicial);
        s.bisimplicial = sh.value("bisimplicial", s.bisimplicial);
        s.marked = sh.value("marked", s.marked);
        s.categories = sh.value("categories", s.categories);
        s.diagrams = sh.value("diagrams", s.diagrams);
    }
    return s;
}

void write_corpus(const Corpus& corpus, const CorpusSpec& spec, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto file = [&](const char* kind, std::size_t i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s_%03zu.json", kind, i);
        return dir / buf;
    };
    for (std::size_t i = 0; i < corpus.simplicial.size(); ++i)
        write_json_file(file("simplicial", i), to_json(*corpus.simplicial[i]));
    for (std::size_t i = 0; i < corpus.bisimplicial.size(); ++i)
        write_json_file(file("bisimplicial", i), to_json(*corpus.bisimplicial[i]));
    for (std::size_t i = 0; i < corpus.marked.size(); ++i)
        write_json_file(file("marked", i), to_json(*corpus.marked[i]));
    for (std::size_t i = 0; i < corpus.categories.size(); ++i)
        write_json_file(file("category", i), to_json(*corpus.categories[i]));
    for (std::size_t i = 0; i < corpus.diagrams.size(); ++i)
        write_json_file(file("diagram", i), to_json(corpus.diagrams[i]));
    nlohmann::json manifest = {{"spec", to_json(spec)},
                               {"category_rejection",
                                {{"attempts", corpus.category_log.attempts}, {"rejected", corpus.category_log.rejected}}},
                               {"diagram_rejection",
                                {{"attempts", corpus.diagram_log.attempts}, {"rejected", corpus.diagram_log.rejected}}}};
    write_json_file(dir / "manifest.json", manifest);
}

std::vector<PresheafPtr> read_presheaf_dir(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json" && entry.path().filename() != "manifest.json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<PresheafPtr> out;
    for (const auto& f : files) {
        auto j = read_json_file(f);
        if (j.is_object() && j.contains("shape"))
            out.push_back(share(presheaf_from_json(j)));
    }
    return out;
}

} // namespace simpcalc
