#pragma once

// JSON forms of presheaves and maps.
//
//   {"shape": "Simplex", "dim": 2, "levels": {"0": ["0","1"], ...},
//    "faces": {"1": {"0": {"01": "1"}, ...}}, "degeneracies": {...},
//    "markings": ["00", ...], "cosk": 1, "skel": 2}
//
// Bisimplicial shapes key levels by "k,l", give "dim" as [d0, d1], name the
// operators "h<i>" and "v<i>", key markings by "1,l" and give certificates as
// pairs. Serialization is canonical, so parse-then-serialize reproduces any
// key-sorted input byte for byte.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "simpcalc/presheaf.hpp"

namespace simpcalc {

[[nodiscard]] nlohmann::json to_json(const Presheaf& p);
[[nodiscard]] Presheaf presheaf_from_json(const nlohmann::json& j);

// Maps embed both ends; on input "source"/"target" may also be file paths
// resolved against base_dir.
[[nodiscard]] nlohmann::json to_json(const PresheafMap& f);
[[nodiscard]] PresheafMap map_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

// Canonical text: sorted keys, two-space indent, trailing newline.
[[nodiscard]] std::string canonical_dump(const nlohmann::json& j);

} // namespace simpcalc
