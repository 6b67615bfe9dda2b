// One line per acceptance criterion; exit status 0 only if all pass.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>

#include "simpcalc/suite.hpp"

using namespace simpcalc;

namespace {

// Pinned thresholds.
constexpr int min_adjunction_pairs = 50;
constexpr double max_adjunction_seconds = 120.0;
constexpr int min_composite_objects = 50;
constexpr int min_diagrams = 10;
constexpr int min_categories = 10;
constexpr int min_marked_objects = 50;
constexpr int min_cso_categories = 10;
constexpr std::uint64_t seed = 0;

struct Run {
    SuiteResult result;
    double seconds = 0;
};

std::map<std::string, CorpusSpec> specs()
{
    CorpusSpec big;
    big.seed = seed;
    big.object_count = 50;
    CorpusSpec small = big;
    small.object_count = 12;
    return {{"adjunctions", big},       {"composites", big},      {"cartesian-oracle", small},
            {"right-fibration", small}, {"equivalence-edges", small}, {"standard-counts", small},
            {"marked-yoneda", big},     {"cso", small},           {"separated", big}};
}

Run run(const std::string& name, const CorpusSpec& spec)
{
    const auto t0 = std::chrono::steady_clock::now();
    Run r{run_suite(name, spec), 0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

int failures = 0;

void line(int n, const char* title, bool pass, const std::string& detail)
{
    std::printf("criterion %d [%s]: %s (%s)\n", n, title, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::string counts(const SuiteResult& r)
{
    return std::to_string(r.cases) + " cases, " + std::to_string(r.holds) + " holds, " + std::to_string(r.fails) +
        " fails, " + std::to_string(r.inconclusive) + " inconclusive";
}

bool all_hold(const SuiteResult& r, int at_least)
{
    return r.fails == 0 && r.inconclusive == 0 && r.holds >= at_least;
}

} // namespace

int main()
{
    const auto sp = specs();
    std::map<std::string, Run> runs;
    for (const auto& [name, spec] : sp)
        runs.emplace(name, run(name, spec));

    {
        const auto& r = runs.at("adjunctions");
        char secs[64];
        std::snprintf(secs, sizeof secs, "%.2f s, limit %.0f s", r.seconds, max_adjunction_seconds);
        line(1, "adjunction suite", all_hold(r.result, min_adjunction_pairs) && r.seconds < max_adjunction_seconds,
             counts(r.result) + ", " + secs);
    }
    line(2, "composite identities", all_hold(runs.at("composites").result, min_composite_objects),
         counts(runs.at("composites").result));
    line(3, "Cartesian-edge oracle", all_hold(runs.at("cartesian-oracle").result, min_diagrams),
         counts(runs.at("cartesian-oracle").result));
    line(4, "right-fibration characterization", all_hold(runs.at("right-fibration").result, min_categories),
         counts(runs.at("right-fibration").result));
    line(5, "equivalence edges", all_hold(runs.at("equivalence-edges").result, min_categories),
         counts(runs.at("equivalence-edges").result));
    {
        const auto& r = runs.at("standard-counts").result;
        line(6, "standard-object counts", r.fails == 0 && r.holds == r.cases && r.cases > 0, counts(r));
    }
    line(7, "marked Yoneda", all_hold(runs.at("marked-yoneda").result, min_marked_objects),
         counts(runs.at("marked-yoneda").result));
    line(8, "discrete CSO suite", all_hold(runs.at("cso").result, min_cso_categories), counts(runs.at("cso").result));
    {
        const auto& r = runs.at("separated").result;
        bool synthetic = false;
        for (const auto& c : r.report.at("cases"))
            if (c.at("id") == "synthetic")
                synthetic = c.at("verdict") == "holds";
        line(9, "separatedness", all_hold(r, 1) && synthetic,
             counts(r) + (synthetic ? ", synthetic presheaf rejected" : ", synthetic presheaf accepted"));
    }
    {
        std::string differing;
        for (const auto& [name, spec] : sp)
            if (run_suite(name, spec).report.dump() != runs.at(name).result.report.dump())
                differing += (differing.empty() ? "" : ", ") + name;
        line(10, "determinism", differing.empty(),
             differing.empty() ? std::to_string(sp.size()) + " suites byte-identical across two runs"
                               : "differs: " + differing);
    }
    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
