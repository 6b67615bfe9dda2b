#pragma once

// Named property suites over a seeded corpus. Each case records the verdict
// of one check and the definition it implements; the JSON report carries no
// timing, so equal seeds give byte-identical reports.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simpcalc/corpus.hpp"

namespace simpcalc {

struct SuiteResult {
    std::string name;
    nlohmann::json report;
    int cases = 0;
    int holds = 0;
    int fails = 0;
    int inconclusive = 0;
    std::vector<std::string> warnings;

    [[nodiscard]] bool ok() const noexcept { return fails == 0; }
    [[nodiscard]] std::string summary() const;
};

// adjunctions, composites, cartesian-oracle, right-fibration,
// equivalence-edges, standard-counts, marked-yoneda, cso, separated.
[[nodiscard]] const std::vector<std::string>& suite_names();

// Lift cap for the suites: SIMPCALC_CAP if set, else the fallback.
[[nodiscard]] int cap_from_env(int fallback);

// Throws Error for an unknown name. Cases run in parallel (SIMPCALC_THREADS
// caps the worker count) and are reported in corpus order.
[[nodiscard]] SuiteResult run_suite(const std::string& name, const CorpusSpec& spec,
                                    std::optional<int> cap = std::nullopt);

} // namespace simpcalc
