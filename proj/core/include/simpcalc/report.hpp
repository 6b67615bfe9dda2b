#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace simpcalc {

enum class Verdict { Holds, Fails, Inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v);

/// Outcome of a checker. A failing report always carries a witness; notes
/// record exactness conditions and any restriction of scope the check used.
struct CheckReport {
    Verdict verdict = Verdict::Holds;
    nlohmann::json witness;
    std::vector<std::string> notes;
    std::string definition;
    double millis = 0.0;

    [[nodiscard]] bool holds() const noexcept { return verdict == Verdict::Holds; }
    [[nodiscard]] bool fails() const noexcept { return verdict == Verdict::Fails; }
    [[nodiscard]] bool inconclusive() const noexcept { return verdict == Verdict::Inconclusive; }

    static CheckReport success(std::string definition, std::vector<std::string> notes = {});
    static CheckReport failure(std::string definition, nlohmann::json witness, std::vector<std::string> notes = {});
    static CheckReport unknown(std::string definition, std::vector<std::string> notes, nlohmann::json witness = {});
};

// Timing is excluded unless asked for, so reports stay byte-stable.
[[nodiscard]] nlohmann::json to_json(const CheckReport& report, bool with_timing = false);

// Combines verdicts: any failure wins, then any inconclusive.
void absorb(CheckReport& into, const CheckReport& part);

} // namespace simpcalc
