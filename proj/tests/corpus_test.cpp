#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "simpcalc/corpus.hpp"
#include "simpcalc/json_io.hpp"
#include "simpcalc/marked.hpp"
#include "simpcalc/suite.hpp"

using namespace simpcalc;

namespace {

long nondegenerate_total(const Presheaf& p)
{
    long n = 0;
    for (int idx = 0; idx < p.level_count(); ++idx)
        n += p.nondegenerate_count(idx);
    return n;
}

CorpusSpec small_spec(std::uint64_t seed)
{
    CorpusSpec s;
    s.seed = seed;
    s.object_count = 8;
    return s;
}

} // namespace

TEST_CASE("generated objects are valid and within budget")
{
    auto c = generate_corpus(small_spec(3));
    REQUIRE(c.simplicial.size() == 8);
    for (const auto& group : {c.simplicial, c.bisimplicial, c.marked})
        for (const auto& p : group) {
            CHECK_FALSE(p->check_identities());
            CHECK(nondegenerate_total(*p) >= 1);
            CHECK(nondegenerate_total(*p) <= 12);
        }
    for (const auto& m : c.marked) {
        CHECK(m->marked_shape());
        CHECK(is_separated(*m).holds());
    }
    for (const auto& cat : c.categories) {
        CHECK_FALSE(cat->validate());
        CHECK(cat->object_count() <= 4);
    }
    for (const auto& d : c.diagrams) {
        CHECK_FALSE(d.validate());
        CHECK(d.base->object_count() <= 3);
        for (const auto& f : d.fibers)
            CHECK(f->object_count() <= 3);
    }
    CHECK(c.category_log.attempts >= static_cast<long>(c.categories.size()));
    CHECK(c.category_log.rejected == c.category_log.attempts - static_cast<long>(c.categories.size()));
}

TEST_CASE("same seed, same corpus")
{
    auto a = generate_corpus(small_spec(7));
    auto b = generate_corpus(small_spec(7));
    for (std::size_t i = 0; i < a.bisimplicial.size(); ++i)
        CHECK(canonical_dump(to_json(*a.bisimplicial[i])) == canonical_dump(to_json(*b.bisimplicial[i])));
    for (std::size_t i = 0; i < a.categories.size(); ++i)
        CHECK(to_json(*a.categories[i]).dump() == to_json(*b.categories[i]).dump());

    const auto dir = std::filesystem::temp_directory_path() / "simpcalc_corpus_test";
    std::filesystem::remove_all(dir);
    write_corpus(a, small_spec(7), dir);
    auto back = read_presheaf_dir(dir);
    CHECK(back.size() == a.simplicial.size() + a.bisimplicial.size() + a.marked.size());
    auto manifest = read_json_file(dir / "manifest.json");
    CHECK(manifest.at("spec").at("seed") == 7);
    CHECK(corpus_spec_from_json(manifest.at("spec")).object_count == 8);
    std::filesystem::remove_all(dir);
}

TEST_CASE("suites")
{
    auto s = run_suite("standard-counts", small_spec(0));
    CHECK(s.ok());
    CHECK(s.fails == 0);

    CorpusSpec empty = small_spec(0);
    empty.object_count = 0;
    auto e = run_suite("marked-yoneda", empty);
    CHECK(e.ok());
    CHECK(e.cases == 0);
    CHECK_FALSE(e.warnings.empty());

    CHECK_THROWS_AS((void)run_suite("nope", empty), Error);

    auto a = run_suite("right-fibration", small_spec(1));
    auto b = run_suite("right-fibration", small_spec(1));
    CHECK(a.ok());
    CHECK(a.report.dump() == b.report.dump());
}
