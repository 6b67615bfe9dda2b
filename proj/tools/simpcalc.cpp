// Command-line front end. Verdict commands exit 0 (holds), 1 (fails) or
// 2 (inconclusive at the bound); bad input exits 3.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simpcalc/bisimplicial.hpp"
#include "simpcalc/cartesian.hpp"
#include "simpcalc/cat.hpp"
#include "simpcalc/corpus.hpp"
#include "simpcalc/hom.hpp"
#include "simpcalc/json_io.hpp"
#include "simpcalc/lifting.hpp"
#include "simpcalc/mapping.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/standard.hpp"
#include "simpcalc/suite.hpp"
#include "simpcalc/transfer.hpp"

using namespace simpcalc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int exit_input = 3;

int exit_for(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return 0;
    case Verdict::Fails: return 1;
    case Verdict::Inconclusive: return 2;
    }
    return 2;
}

void emit(const json& j, const std::string& out)
{
    if (out.empty())
        std::cout << canonical_dump(j);
    else
        write_json_file(out, j);
}

std::optional<Bound> parse_bound(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        const int d = std::stoi(text);
        return Bound{d, d};
    }
    return Bound{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

PresheafPtr load_presheaf(const std::string& path)
{
    return share(presheaf_from_json(read_json_file(path)));
}

// A map file, or a presheaf file read as its map to the terminal object.
PresheafMap load_map_or_terminal(const std::string& path)
{
    auto j = read_json_file(path);
    if (j.contains("components"))
        return map_from_json(j, fs::path(path).parent_path());
    return to_terminal(share(presheaf_from_json(j)));
}

std::string level_key(const Presheaf& p, int idx)
{
    const auto c = p.coords(idx);
    return p.bisimplicial() ? std::to_string(c[0]) + "," + std::to_string(c[1]) : std::to_string(c[0]);
}

json components_json(const Presheaf& x, const Presheaf& y, const Components& comps)
{
    json out = json::object();
    for (int idx = 0; idx < x.level_count(); ++idx) {
        json m = json::object();
        for (int c = 0; c < x.size(idx); ++c)
            m[x.name(idx, c)] = y.name(idx, comps[idx][c]);
        out[level_key(x, idx)] = m;
    }
    return out;
}

int report_exit(const CheckReport& r, const std::string& out)
{
    emit(to_json(r), out);
    return exit_for(r.verdict);
}

// T → pt⊠S: the given map, or the only map from T to pt⊠S.
PresheafMap over_base(const std::string& t_path, const std::string& over)
{
    auto j = read_json_file(t_path);
    if (j.contains("components"))
        return map_from_json(j, fs::path(t_path).parent_path());
    auto t = share(presheaf_from_json(j));
    if (over.empty())
        return to_terminal(t);
    auto s = load_presheaf(over);
    auto base = share(box_product(point(t->bound()[0]), truncate(*s, {t->bound()[1], 0})));
    auto homs = enumerate_hom(t, base);
    if (homs.size() != 1)
        throw Error("expected exactly one map to pt⊠S, found " + std::to_string(homs.size()) +
                    "; pass the map file instead");
    return homs.elements.front();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"simpcalc: finite presheaf calculus over the simplex categories"};
    app.require_subcommand(1);
    int code = 0;
    std::string out;

    // gen
    auto* gen = app.add_subcommand("gen", "build a named standard object");
    std::string gen_kind, gen_dim = "3";
    std::vector<std::string> gen_params;
    gen->add_option("kind", gen_kind, "simplex boundary horn spine J F E G dF L col tau marked")->required();
    gen->add_option("params", gen_params, "parameters of the kind");
    gen->add_option("--dim", gen_dim, "bound d, or d0,d1 for bisimplicial objects");
    gen->add_option("--out", out, "output file");
    gen->callback([&] {
        auto spec = parse_spec(gen_kind, gen_params);
        auto b = *parse_bound(gen_dim);
        emit(to_json(spec.bisimplicial() ? build(spec, b) : build(spec, b[0])), out);
    });

    // hom / mapspace
    auto* hom = app.add_subcommand("hom", "enumerate maps a → b");
    std::string a_path, b_path;
    bool count_only = false;
    hom->add_option("a", a_path)->required()->check(CLI::ExistingFile);
    hom->add_option("b", b_path)->required()->check(CLI::ExistingFile);
    hom->add_flag("--count-only", count_only);
    hom->add_option("--out", out);
    hom->callback([&] {
        auto homs = enumerate_hom(load_presheaf(a_path), load_presheaf(b_path));
        json j = {{"count", homs.size()}, {"exactness", homs.exactness.describe()}};
        if (!count_only) {
            j["maps"] = json::array();
            for (const auto& f : homs.elements)
                j["maps"].push_back(components_json(f.source(), f.target(), f.components()));
        }
        emit(j, out);
    });

    auto* mapspace = app.add_subcommand("mapspace", "the mapping space Map(a, b)");
    int levels = 2;
    mapspace->add_option("a", a_path)->required()->check(CLI::ExistingFile);
    mapspace->add_option("b", b_path)->required()->check(CLI::ExistingFile);
    mapspace->add_option("--levels", levels, "top level n");
    mapspace->add_option("--out", out);
    mapspace->callback([&] {
        auto m = mapping_space(load_presheaf(a_path), load_presheaf(b_path), levels);
        json j = {{"object", to_json(m.object)}, {"exactness", m.exactness.describe()}};
        emit(j, out);
    });

    // check
    auto* check = app.add_subcommand("check", "fibration and Segal-type checks");
    std::string check_kind, check_file, over;
    int cap = cap_from_env(default_lift_cap);
    int hop_n = 1;
    check->add_option("kind", check_kind, "kan inner left right trivial qcat rightfib-rows hopb segal cso")
        ->required();
    check->add_option("file", check_file, "map file, or a presheaf read over the point")
        ->required()
        ->check(CLI::ExistingFile);
    check->add_option("--cap", cap, "dimension cap for lifting problems");
    check->add_option("--over", over, "base simplicial set S for rightfib-rows and cso");
    check->add_option("--n", hop_n, "level for hopb");
    check->add_option("--out", out);
    check->callback([&] {
        CsoOptions opts;
        opts.cap = cap;
        if (check_kind == "qcat") {
            code = report_exit(is_quasicategory(load_presheaf(check_file), cap), out);
        } else if (check_kind == "rightfib-rows") {
            code = report_exit(right_fib_rows(over_base(check_file, over), cap), out);
        } else if (check_kind == "hopb") {
            code = report_exit(hopullback_discrete(load_map_or_terminal(check_file), hop_n), out);
        } else if (check_kind == "segal") {
            code = report_exit(segal_completeness_check(load_presheaf(check_file), opts), out);
        } else if (check_kind == "cso") {
            code = report_exit(is_cartesian_fibration_bisimplicial(over_base(check_file, over), opts), out);
        } else {
            code = report_exit(
                has_rlp(load_map_or_terminal(check_file), fibration_class_from_string(check_kind), cap), out);
        }
    });

    // edges / mark
    auto* edges = app.add_subcommand("edges", "p-Cartesian edges of a map");
    std::string edges_kind, map_path;
    edges->add_option("kind", edges_kind, "cartesian")->required()->check(CLI::IsMember({"cartesian"}));
    edges->add_option("map", map_path)->required()->check(CLI::ExistingFile);
    edges->add_option("--cap", cap);
    edges->add_option("--out", out);
    edges->callback([&] {
        auto p = load_map_or_terminal(map_path);
        auto nm = natural_marking(p, cap);
        json names = json::array();
        for (int e : nm.cartesian)
            names.push_back(p.source().name(1, e));
        emit({{"cartesian", names}, {"report", to_json(nm.report)}}, out);
        code = exit_for(nm.report.verdict);
    });

    auto* mark = app.add_subcommand("mark", "markings: natural, flat or sharp");
    std::string mark_kind, mark_file;
    mark->add_option("kind", mark_kind)->required()->check(CLI::IsMember({"natural", "flat", "sharp"}));
    mark->add_option("file", mark_file)->required()->check(CLI::ExistingFile);
    mark->add_option("--cap", cap);
    mark->add_option("--out", out);
    mark->callback([&] {
        if (mark_kind == "natural") {
            auto nm = natural_marking(load_map_or_terminal(mark_file), cap);
            emit(to_json(*nm.marked), out);
            return;
        }
        auto x = load_presheaf(mark_file);
        emit(to_json(mark_kind == "flat" ? flat(*x) : sharp(*x)), out);
    });

    // apply / verify
    auto* apply = app.add_subcommand("apply", "apply a transfer functor");
    std::string tag, apply_file, apply_dim;
    apply->add_option("functor", tag, "p1* i1* t! t^! p+* i+* t+! t+^! flat forget")->required();
    apply->add_option("file", apply_file)->required()->check(CLI::ExistingFile);
    apply->add_option("--dim", apply_dim, "output bound");
    apply->add_option("--out", out);
    apply->callback([&] {
        auto r = apply_transfer(transfer_tag_from_string(tag), load_presheaf(apply_file), parse_bound(apply_dim));
        for (const auto& n : r.notes)
            std::cerr << "note: " << n << "\n";
        if (!r.exact)
            std::cerr << "note: output is exact only through the given bound\n";
        emit(to_json(r.object), out);
    });

    auto* verify = app.add_subcommand("verify", "adjunction bijections and composite identities");
    verify->require_subcommand(1);
    auto* verify_adj = verify->add_subcommand("adjunction", "Hom(Lx, y) ≅ Hom(x, Ry)");
    std::string pair, x_path, y_path;
    verify_adj->add_option("pair", pair, "p1*-i1* t!-t^! p+*-i+* t+!-t+^! flat-forget forget-sharp")->required();
    verify_adj->add_option("x", x_path)->required()->check(CLI::ExistingFile);
    verify_adj->add_option("y", y_path)->required()->check(CLI::ExistingFile);
    verify_adj->add_option("--out", out);
    verify_adj->callback([&] {
        auto r = verify_adjunction(adjunction_from_string(pair), load_presheaf(x_path), load_presheaf(y_path));
        auto j = to_json(r.report);
        j["left_size"] = r.left_size;
        j["right_size"] = r.right_size;
        emit(j, out);
        code = exit_for(r.report.verdict);
    });
    auto* verify_comp = verify->add_subcommand("composites", "t_!p₁* ≅ id on a directory of objects");
    std::string corpus_dir;
    verify_comp->add_option("--corpus", corpus_dir)->required()->check(CLI::ExistingDirectory);
    verify_comp->add_option("--out", out);
    verify_comp->callback(
        [&] { code = report_exit(composite_identity_suite(read_presheaf_dir(corpus_dir)), out); });

    // cat
    auto* cat = app.add_subcommand("cat", "finite categories: nerve, Grothendieck construction, classification");
    std::string cat_kind, cat_file, cat_dim;
    cat->add_option("kind", cat_kind)->required()->check(CLI::IsMember({"nerve", "groth", "classdiag"}));
    cat->add_option("file", cat_file)->required()->check(CLI::ExistingFile);
    cat->add_option("--dim", cat_dim, "bound, d or d0,d1");
    cat->add_option("--out", out);
    cat->callback([&] {
        auto j = read_json_file(cat_file);
        if (cat_kind == "groth") {
            auto d = diagram_from_json(j);
            auto g = grothendieck(d);
            json cart = json::array();
            for (int m : classical_cartesian_edges(d, g))
                cart.push_back(g.total->morphisms[m].name);
            emit({{"total", to_json(*g.total)}, {"projection", to_json(g.projection)}, {"cartesian", cart}}, out);
            return;
        }
        auto c = category_from_json(j);
        const Bound b = parse_bound(cat_dim).value_or(Bound{3, 2});
        emit(to_json(cat_kind == "nerve" ? nerve(c, b[0]) : classification_diagram(c, b)), out);
    });

    // suite / corpus
    auto* suite = app.add_subcommand("suite", "run a named property suite");
    std::string suite_name, json_out;
    CorpusSpec spec;
    suite->add_option("name", suite_name)->required()->check(CLI::IsMember(suite_names()));
    suite->add_option("--seed", spec.seed);
    suite->add_option("--count", spec.object_count, "corpus objects per kind");
    suite->add_option("--json", json_out, "write the JSON report here");
    suite->callback([&] {
        auto r = run_suite(suite_name, spec);
        if (!json_out.empty())
            write_json_file(json_out, r.report);
        std::cout << r.summary() << "\n";
        code = r.ok() ? 0 : 1;
    });

    auto* corpus = app.add_subcommand("corpus", "write a seeded corpus to a directory");
    std::string corpus_out;
    corpus->add_option("--seed", spec.seed);
    corpus->add_option("--count", spec.object_count);
    corpus->add_option("--max-cells", spec.max_nondegenerate);
    corpus->add_option("--out", corpus_out)->required();
    corpus->callback([&] {
        auto c = generate_corpus(spec);
        write_corpus(c, spec, corpus_out);
        std::cout << "category rejection rate " << c.category_log.rate() << " (" << c.category_log.rejected << "/"
                  << c.category_log.attempts << "), diagram rejection rate " << c.diagram_log.rate() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return code;
}
