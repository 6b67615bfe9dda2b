#include "simpcalc/standard.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "simpcalc/hom.hpp"
#include "simpcalc/marked.hpp"

namespace simpcalc {

using Kind = StandardObjectSpec::Kind;

bool StandardObjectSpec::bisimplicial() const noexcept
{
    switch (kind) {
    case Kind::FGen:
    case Kind::EGen:
    case Kind::GGen:
    case Kind::FBoundary:
    case Kind::FHorn:
    case Kind::ConstCol: return true;
    default: return false;
    }
}

bool StandardObjectSpec::marked() const noexcept
{
    return kind == Kind::TauObj || kind == Kind::MarkedGen;
}

std::string StandardObjectSpec::describe() const
{
    static const std::map<Kind, std::string> names = {
        {Kind::Simplex, "Simplex"},     {Kind::Boundary, "Boundary"},   {Kind::Horn, "Horn"},
        {Kind::Spine, "Spine"},         {Kind::GroupoidNerve, "J"},     {Kind::FGen, "F"},
        {Kind::EGen, "E"},              {Kind::GGen, "G"},              {Kind::FBoundary, "FBoundary"},
        {Kind::FHorn, "L"},             {Kind::ConstCol, "ConstCol"},   {Kind::TauObj, "Tau"},
        {Kind::MarkedGen, "MarkedGen"}};
    std::ostringstream os;
    os << names.at(kind) << "(";
    if (marked() && plus)
        os << "1+";
    else
        os << n;
    if (kind == Kind::Horn || kind == Kind::FHorn)
        os << "," << i;
    os << ")";
    return os.str();
}

StandardObjectSpec parse_spec(const std::string& kind, const std::vector<std::string>& params)
{
    static const std::map<std::string, Kind> kinds = {
        {"simplex", Kind::Simplex},   {"boundary", Kind::Boundary},    {"horn", Kind::Horn},
        {"spine", Kind::Spine},       {"groupoid", Kind::GroupoidNerve}, {"J", Kind::GroupoidNerve},
        {"F", Kind::FGen},            {"E", Kind::EGen},               {"G", Kind::GGen},
        {"dF", Kind::FBoundary},      {"L", Kind::FHorn},              {"col", Kind::ConstCol},
        {"tau", Kind::TauObj},        {"marked", Kind::MarkedGen}};
    auto it = kinds.find(kind);
    if (it == kinds.end())
        throw Error("unknown object kind '" + kind + "'");
    StandardObjectSpec s;
    s.kind = it->second;
    const std::size_t want = (s.kind == Kind::Horn || s.kind == Kind::FHorn) ? 2 : 1;
    if (params.size() != want)
        throw Error(kind + " takes " + std::to_string(want) + " parameter(s)");
    if (s.marked() && params[0] == "1+") {
        s.plus = true;
        s.n = 1;
    }
    else
        s.n = std::stoi(params[0]);
    if (want == 2)
        s.i = std::stoi(params[1]);
    return s;
}

// ---------------------------------------------------------------------------

namespace {

std::string digits(const std::vector<int>& seq)
{
    std::string s;
    for (int v : seq)
        s.push_back(static_cast<char>('0' + v));
    return s;
}

void check_n(int n)
{
    if (n < 0 || n > max_standard_n)
        throw Error("standard objects need 0 <= n <= " + std::to_string(max_standard_n));
}

std::set<int> image(const std::vector<int>& seq)
{
    return {seq.begin(), seq.end()};
}

} // namespace

Presheaf sequence_presheaf(int n, int bound, bool monotone, const std::function<bool(const std::vector<int>&)>& keep)
{
    check_n(n);
    Presheaf p(Shape::Simplex, {bound, 0});
    std::vector<std::vector<std::vector<int>>> cells(bound + 1);
    for (int k = 0; k <= bound; ++k) {
        std::vector<int> seq(k + 1, 0);
        while (true) {
            if (keep(seq))
                cells[k].push_back(seq);
            int pos = k;
            while (pos >= 0 && seq[pos] == n)
                --pos;
            if (pos < 0)
                break;
            ++seq[pos];
            for (int q = pos + 1; q <= k; ++q)
                seq[q] = monotone ? seq[pos] : 0;
        }
    }
    for (int k = 0; k <= bound; ++k) {
        p.resize_level(k, static_cast<int>(cells[k].size()));
        for (std::size_t c = 0; c < cells[k].size(); ++c)
            p.level(k).names[c] = digits(cells[k][c]);
    }
    auto lookup = [&](int k, const std::vector<int>& seq) {
        const auto& cs = cells[k];
        auto it = std::lower_bound(cs.begin(), cs.end(), seq);
        if (it == cs.end() || *it != seq)
            throw Error("sequence presheaf not closed under faces and degeneracies");
        return static_cast<int>(it - cs.begin());
    };
    for (int k = 0; k <= bound; ++k)
        for (std::size_t c = 0; c < cells[k].size(); ++c) {
            const auto& seq = cells[k][c];
            for (int i = 0; k > 0 && i <= k; ++i) {
                auto f = seq;
                f.erase(f.begin() + i);
                p.set_face(k, 0, i, static_cast<int>(c), lookup(k - 1, f));
            }
            for (int i = 0; k < bound && i <= k; ++i) {
                auto s = seq;
                s.insert(s.begin() + i, seq[i]);
                p.set_degeneracy(k, 0, i, static_cast<int>(c), lookup(k + 1, s));
            }
        }
    return p;
}

namespace {

Presheaf finish(Presheaf p, std::optional<int> cosk, std::optional<int> skel)
{
    p.set_cosk(0, cosk);
    p.set_skel(0, skel);
    p.finalize();
    return p;
}

bool all_monotone(const std::vector<int>&) { return true; }

} // namespace

Presheaf simplex(int n, int bound)
{
    return finish(sequence_presheaf(n, bound, true, all_monotone), n == 0 ? 0 : 1, n);
}

Presheaf boundary(int n, int bound)
{
    auto keep = [n](const std::vector<int>& s) { return static_cast<int>(image(s).size()) < n + 1; };
    return finish(sequence_presheaf(n, bound, true, keep), std::max(n, 1), std::max(n - 1, 0));
}

Presheaf horn(int n, int i, int bound)
{
    if (n < 1 || i < 0 || i > n)
        throw Error("horn needs n >= 1 and 0 <= i <= n");
    auto keep = [n, i](const std::vector<int>& s) {
        auto im = image(s);
        im.insert(i);
        return static_cast<int>(im.size()) < n + 1;
    };
    return finish(sequence_presheaf(n, bound, true, keep), n, n - 1);
}

Presheaf spine(int n, int bound)
{
    auto keep = [](const std::vector<int>& s) { return s.back() - s.front() <= 1; };
    return finish(sequence_presheaf(n, bound, true, keep), n == 0 ? 0 : 1, std::min(n, 1));
}

Presheaf groupoid_nerve(int l, int bound)
{
    return finish(sequence_presheaf(l, bound, false, all_monotone), 0, l == 0 ? std::optional<int>(0) : std::nullopt);
}

Presheaf point(int bound)
{
    return simplex(0, bound);
}

Presheaf point2(Bound bound)
{
    return box_product(point(bound[0]), point(bound[1]));
}

Presheaf build(const StandardObjectSpec& spec, int bound)
{
    return build(spec, Bound{bound, bound});
}

Presheaf build(const StandardObjectSpec& s, Bound b)
{
    const int d = b[0];
    switch (s.kind) {
    case Kind::Simplex: return simplex(s.n, d);
    case Kind::Boundary: return boundary(s.n, d);
    case Kind::Horn: return horn(s.n, s.i, d);
    case Kind::Spine: return spine(s.n, d);
    case Kind::GroupoidNerve: return groupoid_nerve(s.n, d);
    case Kind::FGen: return box_product(simplex(s.n, d), point(b[1]));
    case Kind::EGen: return box_product(groupoid_nerve(s.n, d), point(b[1]));
    case Kind::GGen:
        if (s.n < 1)
            throw Error("G(n) needs n >= 1");
        return box_product(spine(s.n, d), point(b[1]));
    case Kind::FBoundary: return box_product(boundary(s.n, d), point(b[1]));
    case Kind::FHorn: return box_product(horn(s.n, s.i, d), point(b[1]));
    case Kind::ConstCol: return box_product(point(d), simplex(s.n, b[1]));
    case Kind::TauObj:
    case Kind::MarkedGen:
        if (s.plus)
            return sharp(simplex(1, d));
        return flat(simplex(s.n, d));
    }
    throw Error("unhandled object kind");
}

// ---------------------------------------------------------------------------

PresheafMap sequence_map(const PresheafPtr& source, const PresheafPtr& target, const std::vector<int>& vmap, int part)
{
    Components comps(source->level_count());
    for (int idx = 0; idx < source->level_count(); ++idx) {
        comps[idx].resize(source->size(idx));
        for (int c = 0; c < source->size(idx); ++c) {
            std::string name = source->name(idx, c);
            std::size_t start = 0;
            for (int q = 0; q < part; ++q) {
                start = name.find('|', start);
                if (start == std::string::npos)
                    throw Error("sequence_map: name '" + name + "' has too few parts");
                ++start;
            }
            std::size_t end = name.find('|', start);
            if (end == std::string::npos)
                end = name.size();
            for (std::size_t q = start; q < end; ++q) {
                const int v = name[q] - '0';
                if (v < 0 || v >= static_cast<int>(vmap.size()))
                    throw Error("sequence_map: vertex out of range in '" + name + "'");
                name[q] = static_cast<char>('0' + vmap[v]);
            }
            const int t = target->find(idx, name);
            if (t < 0)
                throw Error("sequence_map: image '" + name + "' missing from target");
            comps[idx][c] = t;
        }
    }
    PresheafMap m(source, target, std::move(comps));
    m.validate();
    return m;
}

PresheafMap canonical_inclusion(const StandardObjectSpec& sub, const StandardObjectSpec& sup, Bound bound,
                                std::optional<int> vertex)
{
    auto src = share(build(sub, bound));
    auto tgt = share(build(sup, bound));
    auto identity_vertices = [](int n) {
        std::vector<int> v(n + 1);
        for (int q = 0; q <= n; ++q)
            v[q] = q;
        return v;
    };
    const bool same_n = sub.n == sup.n;
    bool ok = false;
    std::vector<int> vmap;
    if (sup.kind == Kind::Simplex && same_n
        && (sub.kind == Kind::Horn || sub.kind == Kind::Boundary || sub.kind == Kind::Spine))
        ok = true;
    else if (sup.kind == Kind::FGen && same_n
             && (sub.kind == Kind::GGen || sub.kind == Kind::FBoundary || sub.kind == Kind::FHorn))
        ok = true;
    else if (sub.kind == Kind::Simplex && sup.kind == Kind::GroupoidNerve && same_n)
        ok = true;
    else if (sub.kind == Kind::FGen && sup.kind == Kind::EGen && same_n)
        ok = true;
    else if (sub.marked() && sup.marked() && !sub.plus && sub.n == 1 && sup.plus)
        ok = true;
    else if (sub.n == 0 && ((sub.kind == Kind::Simplex && sup.kind == Kind::Simplex)
                            || (sub.kind == Kind::FGen && (sup.kind == Kind::FGen || sup.kind == Kind::EGen)))) {
        ok = true;
        const int v = vertex.value_or(sup.kind == Kind::EGen ? 0 : sup.n);
        if (v < 0 || v > sup.n)
            throw Error("canonical_inclusion: vertex out of range");
        vmap = {v};
    }
    if (!ok)
        throw Error("not a generating inclusion: " + sub.describe() + " -> " + sup.describe());
    if (vmap.empty())
        vmap = identity_vertices(sub.n);
    return sequence_map(src, tgt, vmap, 0);
}

Presheaf certify_coskeletal(Presheaf x, CoskCertificate c)
{
    auto r = is_coskeletal(x, c);
    if (!r.holds())
        throw Error("coskeletality certificate rejected: " + r.witness.dump());
    for (int d = 0; d < 2; ++d)
        if (c[d])
            x.set_cosk(d, c[d]);
    return x;
}

} // namespace simpcalc
