#include "simpcalc/report.hpp"

#include <algorithm>

namespace simpcalc {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive-at-bound";
    }
    return "?";
}

CheckReport CheckReport::success(std::string definition, std::vector<std::string> notes)
{
    CheckReport r;
    r.verdict = Verdict::Holds;
    r.definition = std::move(definition);
    r.notes = std::move(notes);
    return r;
}

CheckReport CheckReport::failure(std::string definition, nlohmann::json witness, std::vector<std::string> notes)
{
    CheckReport r;
    r.verdict = Verdict::Fails;
    r.definition = std::move(definition);
    r.witness = std::move(witness);
    r.notes = std::move(notes);
    return r;
}

CheckReport CheckReport::unknown(std::string definition, std::vector<std::string> notes, nlohmann::json witness)
{
    CheckReport r;
    r.verdict = Verdict::Inconclusive;
    r.definition = std::move(definition);
    r.notes = std::move(notes);
    r.witness = std::move(witness);
    return r;
}

nlohmann::json to_json(const CheckReport& report, bool with_timing)
{
    nlohmann::json j;
    j["verdict"] = std::string(to_string(report.verdict));
    j["definition"] = report.definition;
    j["notes"] = report.notes;
    if (!report.witness.is_null())
        j["witness"] = report.witness;
    if (with_timing)
        j["millis"] = report.millis;
    return j;
}

void absorb(CheckReport& into, const CheckReport& part)
{
    for (const auto& n : part.notes)
        if (std::find(into.notes.begin(), into.notes.end(), n) == into.notes.end())
            into.notes.push_back(n);
    if (into.verdict == Verdict::Fails)
        return;
    if (part.verdict == Verdict::Fails) {
        into.verdict = Verdict::Fails;
        into.witness = part.witness;
    }
    else if (part.verdict == Verdict::Inconclusive && into.verdict == Verdict::Holds) {
        into.verdict = Verdict::Inconclusive;
        if (into.witness.is_null())
            into.witness = part.witness;
    }
}

} // namespace simpcalc
