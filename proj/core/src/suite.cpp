#include "simpcalc/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "simpcalc/bisimplicial.hpp"
#include "simpcalc/cartesian.hpp"
#include "simpcalc/lifting.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"
#include "simpcalc/transfer.hpp"

namespace simpcalc {

namespace {

using json = nlohmann::json;

int env_int(const char* name, int fallback)
{
    const char* v = std::getenv(name);
    if (!v || !*v)
        return fallback;
    char* end = nullptr;
    const long x = std::strtol(v, &end, 10);
    return (end && *end == '\0' && x > 0) ? static_cast<int>(x) : fallback;
}

// Runs body(i) for i < n on a few threads; results land by index.
std::vector<json> parallel_cases(int n, const std::function<json(int)>& body)
{
    std::vector<json> out(static_cast<std::size_t>(std::max(n, 0)));
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const int workers = std::clamp(env_int("SIMPCALC_THREADS", hw), 1, std::max(n, 1));
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                out[i] = body(i);
            } catch (const std::exception& e) {
                out[i] = {{"verdict", "fails"}, {"witness", {{"error", e.what()}}}};
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    return out;
}

json case_of(const std::string& id, const CheckReport& r)
{
    json j = to_json(r);
    j["id"] = id;
    return j;
}

json verdict_case(const std::string& id, bool ok, const std::string& definition, json detail)
{
    json j = {{"id", id}, {"definition", definition}, {"verdict", ok ? "holds" : "fails"}};
    if (!ok)
        j["witness"] = std::move(detail);
    else if (!detail.is_null())
        j["detail"] = std::move(detail);
    return j;
}

std::string index_id(const char* kind, int i)
{
    return std::string(kind) + "_" + std::to_string(i);
}

struct SuiteBody {
    std::string definition;
    std::vector<json> cases;
    std::vector<std::string> warnings;
};

SuiteBody adjunctions(const Corpus& c)
{
    SuiteBody b{"t_! ⊣ t^!: Hom(t_!X, S) ≅ Hom(X, t^!S) with mutually inverse transposes", {}, {}};
    const int n = static_cast<int>(std::min(c.bisimplicial.size(), c.categories.size()));
    b.cases = parallel_cases(n, [&](int i) {
        auto s = share(nerve(*c.categories[i], 2));
        auto r = verify_adjunction(AdjunctionPair::TLowerUpper, c.bisimplicial[i], s);
        auto j = case_of(index_id("pair", i), r.report);
        j["left_size"] = r.left_size;
        j["right_size"] = r.right_size;
        return j;
    });
    return b;
}

SuiteBody composites(const Corpus& c)
{
    SuiteBody b{"t_!p₁* ≅ id and (t⁺)_!(p⁺)* ≅ id levelwise", {}, {}};
    std::vector<PresheafPtr> objects = c.simplicial;
    objects.insert(objects.end(), c.marked.begin(), c.marked.end());
    const int ns = static_cast<int>(c.simplicial.size());
    b.cases = parallel_cases(static_cast<int>(objects.size()), [&](int i) {
        const std::string id = i < ns ? index_id("simplicial", i) : index_id("marked", i - ns);
        return case_of(id, composite_identity_suite({objects[i]}));
    });
    return b;
}

SuiteBody cartesian_oracle(const Corpus& c, int cap)
{
    SuiteBody b{"p-Cartesian edges of N(∫F) → N(C) are the classical ones, and the projection is a Cartesian "
                "fibration",
                {},
                {}};
    b.cases = parallel_cases(static_cast<int>(c.diagrams.size()), [&](int i) {
        const auto& d = c.diagrams[i];
        auto g = grothendieck(d);
        auto total = share(nerve(*g.total, 4));
        auto base = share(nerve(*d.base, 4));
        auto p = nerve_map(g.projection, total, base);
        const auto classical = classical_cartesian_edges(d, g);
        std::vector<int> detected;
        bool unsure = false;
        for (int e = 0; e < total->size(1); ++e) {
            auto r = is_p_cartesian(p, e, cap);
            unsure = unsure || r.inconclusive();
            if (r.holds())
                detected.push_back(e);
        }
        auto fib = is_cartesian_fibration(p, cap);
        json j = {{"id", index_id("diagram", i)},
                  {"definition", b.definition},
                  {"edges", total->size(1)},
                  {"cartesian", detected.size()}};
        if (detected != classical || fib.fails()) {
            j["verdict"] = "fails";
            j["witness"] = {{"detected", detected}, {"classical", classical}, {"fibration", to_json(fib)}};
        } else {
            j["verdict"] = (unsure || fib.inconclusive()) ? "inconclusive-at-bound" : "holds";
        }
        return j;
    });
    return b;
}

SuiteBody right_fibration(const Corpus& c, int cap)
{
    SuiteBody b{"N(C) → Δ[0] is a right fibration iff C is a groupoid", {}, {}};
    b.cases = parallel_cases(static_cast<int>(c.categories.size()), [&](int i) {
        const auto& cat = *c.categories[i];
        auto r = has_rlp(to_terminal(share(nerve(cat, 3))), FibrationClass::Right, cap);
        const bool groupoid = cat.is_groupoid();
        json j = {{"id", index_id("category", i)},
                  {"definition", b.definition},
                  {"groupoid", groupoid},
                  {"rlp", to_string(r.verdict)}};
        if (r.inconclusive())
            j["verdict"] = "inconclusive-at-bound";
        else if (r.holds() == groupoid)
            j["verdict"] = "holds";
        else {
            j["verdict"] = "fails";
            j["witness"] = to_json(r);
        }
        return j;
    });
    return b;
}

SuiteBody equivalence_edges(const Corpus& c)
{
    SuiteBody b{"hoequiv_edges(N(C)) are the isomorphisms of C, and so are the natural marking over the point", {}, {}};
    b.cases = parallel_cases(static_cast<int>(c.categories.size()), [&](int i) {
        const auto& cat = *c.categories[i];
        auto t = share(nerve(cat, 4));
        auto eq = hoequiv_edges(t);
        auto nm = natural_marking(to_terminal(t));
        const auto isos = cat.isomorphisms();
        const bool ok = eq.edges == isos && nm.cartesian == eq.edges;
        return verdict_case(index_id("category", i), ok, b.definition,
                            ok ? json(nullptr)
                               : json{{"hoequiv", eq.edges}, {"isomorphisms", isos}, {"natural", nm.cartesian}});
    });
    return b;
}

SuiteBody standard_counts()
{
    SuiteBody b{"nondegenerate cell counts of J[1], Δ[1]×Δ[1] and Sp[n]", {}, {}};
    const int bound = 6;
    auto j1 = groupoid_nerve(1, bound);
    for (int n = 1; n <= bound; ++n)
        b.cases.push_back(verdict_case("J[1]_" + std::to_string(n), j1.nondegenerate_count(n) == 2, b.definition,
                                       {{"count", j1.nondegenerate_count(n)}, {"expected", 2}}));
    auto sq = product(simplex(1, 3), simplex(1, 3));
    b.cases.push_back(verdict_case("D1xD1", sq.nondegenerate_count(2) == 2, b.definition,
                                   {{"count", sq.nondegenerate_count(2)}, {"expected", 2}}));
    for (int n = 1; n <= 4; ++n) {
        auto sp = spine(n, 4);
        b.cases.push_back(verdict_case("Sp[" + std::to_string(n) + "]", sp.nondegenerate_count(1) == n, b.definition,
                                       {{"count", sp.nondegenerate_count(1)}, {"expected", n}}));
    }
    return b;
}

SuiteBody marked_yoneda(const Corpus& c)
{
    SuiteBody b{"|Hom(Δ[n]♭, (S,A))| = |S_n| and |Hom(Δ[1]♯, (S,A))| = |A|", {}, {}};
    b.cases = parallel_cases(static_cast<int>(c.marked.size()), [&](int i) {
        const auto& m = c.marked[i];
        json counts = json::array();
        bool ok = true;
        for (int n = 0; n <= m->dim(); ++n) {
            const auto h = marked_hom(share(flat(simplex(n, m->dim()))), m).size();
            counts.push_back({{"n", n}, {"hom", h}, {"cells", m->size(n)}});
            ok = ok && h == static_cast<std::size_t>(m->size(n));
        }
        if (m->dim() >= 1) {
            const auto h = marked_hom(share(sharp(simplex(1, m->dim()))), m).size();
            counts.push_back({{"sharp", h}, {"marked", marked_count(*m)}});
            ok = ok && static_cast<long>(h) == marked_count(*m);
        }
        return verdict_case(index_id("marked", i), ok, b.definition, counts);
    });
    return b;
}

SuiteBody cso(const Corpus& c, int cap)
{
    SuiteBody b{"classification diagrams are complete Segal objects over the point; an injected Segal violation is "
                "rejected",
                {},
                {}};
    CsoOptions opts;
    opts.cap = cap;
    b.cases = parallel_cases(static_cast<int>(c.categories.size()), [&](int i) {
        auto cd = share(classification_diagram(*c.categories[i], {2, 3}));
        auto good = is_cartesian_fibration_bisimplicial(to_terminal(cd), opts);
        auto bad = share(inject_segal_violation(cd, 2));
        auto rejected = is_cartesian_fibration_bisimplicial(to_terminal(bad), opts);
        // The witness must name the Segal map and must replay.
        bool witness_ok = rejected.fails() && rejected.witness.value("generator", "") == "Seg(2)";
        if (witness_ok) {
            auto replay = segal_completeness_check(bad, opts);
            witness_ok = replay.fails() && replay.witness == rejected.witness;
        }
        json j = {{"id", index_id("category", i)},
                  {"definition", b.definition},
                  {"original", to_string(good.verdict)},
                  {"mutated", to_string(rejected.verdict)}};
        if (good.fails() || !witness_ok) {
            j["verdict"] = "fails";
            j["witness"] = {{"original", to_json(good)}, {"mutated", to_json(rejected)}};
        } else {
            j["verdict"] = good.inconclusive() ? "inconclusive-at-bound" : "holds";
            j["mutation_witness"] = rejected.witness;
        }
        return j;
    });
    return b;
}

SuiteBody separated(const Corpus& c)
{
    SuiteBody b{"flat, sharp and transfer outputs are separated; a non-separated presheaf is rejected", {}, {}};
    auto check = [](const Presheaf& p) { return is_separated(p); };
    const int ns = static_cast<int>(c.simplicial.size());
    const int nb = static_cast<int>(c.bisimplicial.size());
    const int nm = static_cast<int>(c.marked.size());
    b.cases = parallel_cases(ns + nb + nm, [&](int i) {
        CheckReport all = CheckReport::success("separated");
        std::string id;
        if (i < ns) {
            id = index_id("simplicial", i);
            const auto& s = *c.simplicial[i];
            absorb(all, check(flat(s)));
            absorb(all, check(sharp(s)));
            absorb(all, check(apply_transfer(TransferTag::PPlusStar, share(flat(s))).object));
            absorb(all, check(apply_transfer(TransferTag::PPlusStar, share(sharp(s))).object));
        } else if (i < ns + nb) {
            id = index_id("bisimplicial", i - ns);
            const auto& x = c.bisimplicial[i - ns];
            auto fx = share(apply_transfer(TransferTag::FlatStarProlong, x).object);
            absorb(all, check(*fx));
            absorb(all, check(apply_transfer(TransferTag::IPlusStar, fx).object));
            absorb(all, check(apply_transfer(TransferTag::TauPlusLower, fx).object));
            absorb(all, check(sharp(apply_transfer(TransferTag::I1Star, x).object)));
        } else {
            id = index_id("marked", i - ns - nb);
            const auto& m = c.marked[i - ns - nb];
            absorb(all, check(*m));
            auto pm = share(apply_transfer(TransferTag::PPlusStar, m).object);
            absorb(all, check(*pm));
            absorb(all, check(apply_transfer(TransferTag::TauPlusLower, pm).object));
        }
        all.definition = b.definition;
        return case_of(id, all);
    });

    // Two [1⁺]-cells over one edge.
    RawMarkedPresheaf raw;
    raw.underlying = flat(simplex(1, 2));
    const int e = raw.underlying.find(1, "01");
    raw.plus_to_edge = {{raw.underlying.find(1, "00"), raw.underlying.find(1, "11"), e, e}};
    raw.plus_names = {{"00+", "11+", "m", "m'"}};
    auto r = is_separated(raw);
    b.cases.push_back(verdict_case("synthetic", r.fails(), b.definition, to_json(r)));
    return b;
}

} // namespace

std::string SuiteResult::summary() const
{
    std::string s = "suite " + name + ": " + std::to_string(cases) + " cases, " + std::to_string(holds) + " holds, " +
        std::to_string(fails) + " fails, " + std::to_string(inconclusive) + " inconclusive";
    for (const auto& w : warnings)
        s += "\n  warning: " + w;
    return s;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"adjunctions",    "composites",        "cartesian-oracle",
                                                   "right-fibration", "equivalence-edges", "standard-counts",
                                                   "marked-yoneda",  "cso",               "separated"};
    return names;
}

int cap_from_env(int fallback)
{
    return env_int("SIMPCALC_CAP", fallback);
}

SuiteResult run_suite(const std::string& name, const CorpusSpec& spec, std::optional<int> cap)
{
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw Error("unknown suite: " + name);

    CorpusSpec need = spec;
    need.simplicial = need.simplicial && (name == "composites" || name == "separated");
    need.bisimplicial = need.bisimplicial && (name == "adjunctions" || name == "separated");
    need.marked = need.marked && (name == "composites" || name == "marked-yoneda" || name == "separated");
    need.categories = need.categories &&
        (name == "adjunctions" || name == "right-fibration" || name == "equivalence-edges" || name == "cso");
    need.diagrams = need.diagrams && name == "cartesian-oracle";
    const Corpus corpus = generate_corpus(need);

    const int lift_cap = cap.value_or(cap_from_env(default_lift_cap));
    const int cart_cap = cap.value_or(cap_from_env(default_cartesian_cap));
    SuiteBody body;
    if (name == "adjunctions")
        body = adjunctions(corpus);
    else if (name == "composites")
        body = composites(corpus);
    else if (name == "cartesian-oracle")
        body = cartesian_oracle(corpus, cart_cap);
    else if (name == "right-fibration")
        body = right_fibration(corpus, lift_cap);
    else if (name == "equivalence-edges")
        body = equivalence_edges(corpus);
    else if (name == "standard-counts")
        body = standard_counts();
    else if (name == "marked-yoneda")
        body = marked_yoneda(corpus);
    else if (name == "cso")
        body = cso(corpus, lift_cap);
    else
        body = separated(corpus);

    SuiteResult out;
    out.name = name;
    out.warnings = std::move(body.warnings);
    for (const auto& cs : body.cases) {
        const auto v = cs.value("verdict", "fails");
        if (v == "holds")
            ++out.holds;
        else if (v == "fails")
            ++out.fails;
        else
            ++out.inconclusive;
    }
    out.cases = static_cast<int>(body.cases.size());
    if (out.cases == 0)
        out.warnings.push_back("empty corpus: the suite holds vacuously");
    if (name == "adjunctions" || name == "right-fibration" || name == "equivalence-edges" || name == "cso")
        out.report["category_rejection"] = {{"attempts", corpus.category_log.attempts},
                                            {"rejected", corpus.category_log.rejected}};
    if (name == "cartesian-oracle")
        out.report["diagram_rejection"] = {{"attempts", corpus.diagram_log.attempts},
                                           {"rejected", corpus.diagram_log.rejected}};
    out.report["suite"] = name;
    out.report["definition"] = body.definition;
    out.report["corpus"] = to_json(spec);
    out.report["caps"] = {{"lift", lift_cap}, {"cartesian", cart_cap}};
    out.report["cases"] = std::move(body.cases);
    out.report["summary"] = {{"cases", out.cases},
                             {"holds", out.holds},
                             {"fails", out.fails},
                             {"inconclusive", out.inconclusive}};
    out.report["warnings"] = out.warnings;
    return out;
}

} // namespace simpcalc
