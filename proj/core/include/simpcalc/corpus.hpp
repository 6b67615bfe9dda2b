#pragma once

// Seeded random corpora. Presheaves grow by attaching one cell Δ[n] (or
// Δ[a]⊠Δ[b]) at a time along a random map from its boundary, so every object
// is valid and separated by construction. Categories come from random
// composition tables, rejected when the table is not associative.

#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include <nlohmann/json.hpp>

#include "simpcalc/cat.hpp"
#include "simpcalc/presheaf.hpp"

namespace simpcalc {

struct CorpusSpec {
    std::uint64_t seed = 0;
    int object_count = 50;
    int max_nondegenerate = 12;
    int simplicial_bound = 3;
    Bound bisimplicial_bound{2, 2};
    int max_category_objects = 4;
    int max_category_arrows = 4; // non-identity arrows
    int diagram_base_objects = 3;
    int diagram_fiber_objects = 3;
    bool simplicial = true;
    bool bisimplicial = true;
    bool marked = true;
    bool categories = true;
    bool diagrams = true;
};

struct RejectionLog {
    long attempts = 0;
    long rejected = 0;
    [[nodiscard]] double rate() const { return attempts == 0 ? 0.0 : static_cast<double>(rejected) / attempts; }
};

struct Corpus {
    std::vector<PresheafPtr> simplicial;
    std::vector<PresheafPtr> bisimplicial;
    std::vector<PresheafPtr> marked;
    std::vector<CategoryPtr> categories;
    std::vector<CatDiagram> diagrams;
    RejectionLog category_log;
    RejectionLog diagram_log;
};

// Cell attachment with at most max_nondegenerate nondegenerate cells. The
// shape decides simplicial or bisimplicial; the bound is {d, 0} or {d0, d1}.
[[nodiscard]] Presheaf random_presheaf(std::mt19937_64& rng, Shape shape, Bound bound, int max_nondegenerate);
// A random simplicial set with a random set of its edges marked.
[[nodiscard]] Presheaf random_marked(std::mt19937_64& rng, int bound, int max_nondegenerate);
[[nodiscard]] FiniteCategory random_category(std::mt19937_64& rng, int max_objects, int max_arrows,
                                             RejectionLog* log = nullptr);
// F: C^op → Cat with |C| and every fiber within the given object counts.
[[nodiscard]] CatDiagram random_diagram(std::mt19937_64& rng, int base_objects, int fiber_objects,
                                        RejectionLog* log = nullptr);

[[nodiscard]] Corpus generate_corpus(const CorpusSpec& spec);

[[nodiscard]] nlohmann::json to_json(const CorpusSpec& spec);
[[nodiscard]] CorpusSpec corpus_spec_from_json(const nlohmann::json& j);

// One JSON file per object plus manifest.json (spec and rejection rates).
void write_corpus(const Corpus& corpus, const CorpusSpec& spec, const std::filesystem::path& dir);
// Every presheaf file in a directory (sorted by file name), manifest excluded.
[[nodiscard]] std::vector<PresheafPtr> read_presheaf_dir(const std::filesystem::path& dir);

} // namespace simpcalc
