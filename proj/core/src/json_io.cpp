#include "simpcalc/json_io.hpp"

#include <fstream>
#include <sstream>

namespace simpcalc {

using nlohmann::json;

namespace {

std::string level_key(const Presheaf& p, int idx)
{
    const auto c = p.coords(idx);
    return p.bisimplicial() ? std::to_string(c[0]) + "," + std::to_string(c[1]) : std::to_string(c[0]);
}

std::string op_key(const Presheaf& p, int dir, int i)
{
    if (!p.bisimplicial())
        return std::to_string(i);
    return (dir == 0 ? "h" : "v") + std::to_string(i);
}

json cert_json(const Presheaf& p, const CoskCertificate& c)
{
    if (!p.bisimplicial())
        return c[0] ? json(*c[0]) : json(nullptr);
    json a = json::array();
    for (int d = 0; d < 2; ++d)
        a.push_back(c[d] ? json(*c[d]) : json(nullptr));
    return a;
}

CoskCertificate cert_from(const json& j, bool bisimplicial)
{
    CoskCertificate c{};
    if (j.is_null())
        return c;
    if (bisimplicial) {
        if (!j.is_array() || j.size() != 2)
            throw Error("certificate of a bisimplicial object must be a pair");
        for (int d = 0; d < 2; ++d)
            if (!j[d].is_null())
                c[d] = j[d].get<int>();
        return c;
    }
    c[0] = j.get<int>();
    return c;
}

std::pair<int, int> parse_level_key(const std::string& key, bool bisimplicial)
{
    const auto comma = key.find(',');
    if (bisimplicial != (comma != std::string::npos))
        throw Error("level key '" + key + "' does not match the shape");
    if (!bisimplicial)
        return {std::stoi(key), 0};
    return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
}

std::pair<int, int> parse_op_key(const std::string& key, bool bisimplicial)
{
    if (!bisimplicial)
        return {0, std::stoi(key)};
    if (key.empty() || (key[0] != 'h' && key[0] != 'v'))
        throw Error("operator key '" + key + "' must start with h or v");
    return {key[0] == 'h' ? 0 : 1, std::stoi(key.substr(1))};
}

} // namespace

json to_json(const Presheaf& p)
{
    json j;
    j["shape"] = std::string(to_string(p.shape()));
    if (p.bisimplicial())
        j["dim"] = {p.bound()[0], p.bound()[1]};
    else
        j["dim"] = p.bound()[0];
    json levels = json::object(), faces = json::object(), degens = json::object();
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto key = level_key(p, idx);
        levels[key] = p.level(idx).names;
        for (int d = 0; d < p.directions(); ++d) {
            for (int i = 0; i < static_cast<int>(p.level(idx).faces[d].size()); ++i) {
                const int fl = p.face_level(idx, d);
                json m = json::object();
                for (int c = 0; c < p.size(idx); ++c)
                    m[p.name(idx, c)] = p.name(fl, p.face(idx, d, i, c));
                faces[key][op_key(p, d, i)] = m;
            }
            for (int i = 0; i < static_cast<int>(p.level(idx).degeneracies[d].size()); ++i) {
                const int ul = p.degeneracy_level(idx, d);
                json m = json::object();
                for (int c = 0; c < p.size(idx); ++c)
                    m[p.name(idx, c)] = p.name(ul, p.degeneracy(idx, d, i, c));
                degens[key][op_key(p, d, i)] = m;
            }
        }
    }
    j["levels"] = levels;
    j["faces"] = faces;
    j["degeneracies"] = degens;
    if (p.marked_shape()) {
        if (p.bisimplicial()) {
            json mk = json::object();
            for (int l = 0; p.dim() >= 1 && l <= p.bound()[1]; ++l) {
                const int e = p.level_index(1, l);
                json names = json::array();
                for (int c = 0; c < p.size(e); ++c)
                    if (p.is_marked(e, c))
                        names.push_back(p.name(e, c));
                mk["1," + std::to_string(l)] = names;
            }
            j["markings"] = mk;
        }
        else {
            json names = json::array();
            if (p.dim() >= 1)
                for (int c = 0; c < p.size(1); ++c)
                    if (p.is_marked(1, c))
                        names.push_back(p.name(1, c));
            j["markings"] = names;
        }
    }
    j["cosk"] = cert_json(p, p.cosk());
    j["skel"] = cert_json(p, p.skel());
    return j;
}

Presheaf presheaf_from_json(const json& j)
{
    const Shape shape = shape_from_string(j.at("shape").get<std::string>());
    const bool bi = is_bisimplicial_shape(shape);
    Bound b{0, 0};
    if (bi) {
        b = {j.at("dim").at(0).get<int>(), j.at("dim").at(1).get<int>()};
    }
    else
        b[0] = j.at("dim").get<int>();
    Presheaf p(shape, b);
    for (const auto& [key, names] : j.at("levels").items()) {
        const auto [k, l] = parse_level_key(key, bi);
        const int idx = p.level_index(k, l);
        p.resize_level(idx, static_cast<int>(names.size()));
        for (std::size_t c = 0; c < names.size(); ++c)
            p.level(idx).names[c] = names[c].get<std::string>();
        p.level(idx).by_name.clear();
        for (int c = 0; c < p.size(idx); ++c)
            p.level(idx).by_name.emplace(p.level(idx).names[c], c);
    }
    auto lookup = [&](int idx, const std::string& name) {
        auto it = p.level(idx).by_name.find(name);
        if (it == p.level(idx).by_name.end())
            throw Error("unknown cell '" + name + "'");
        return it->second;
    };
    auto fill = [&](const char* field, bool face) {
        if (!j.contains(field))
            return;
        for (const auto& [key, ops] : j.at(field).items()) {
            const auto [k, l] = parse_level_key(key, bi);
            const int idx = p.level_index(k, l);
            for (const auto& [okey, table] : ops.items()) {
                const auto [dir, i] = parse_op_key(okey, bi);
                const int other = face ? p.face_level(idx, dir) : p.degeneracy_level(idx, dir);
                if (other < 0 || i < 0 || i > p.extent(idx, dir))
                    throw Error(std::string(field) + ": operator " + okey + " undefined at level " + key);
                for (const auto& [cell, value] : table.items()) {
                    const int c = lookup(idx, cell);
                    const int v = lookup(other, value.get<std::string>());
                    if (face)
                        p.set_face(idx, dir, i, c, v);
                    else
                        p.set_degeneracy(idx, dir, i, c, v);
                }
            }
        }
    };
    fill("faces", true);
    fill("degeneracies", false);
    if (j.contains("markings") && !j.at("markings").is_null()) {
        if (!is_marked_shape(shape))
            throw Error("markings given for an unmarked shape");
        const auto& mk = j.at("markings");
        if (bi) {
            for (const auto& [key, names] : mk.items()) {
                const auto [k, l] = parse_level_key(key, true);
                if (k != 1)
                    throw Error("markings live on levels (1,l)");
                const int e = p.level_index(1, l);
                for (const auto& n : names)
                    p.set_marked(e, lookup(e, n.get<std::string>()), true);
            }
        }
        else
            for (const auto& n : mk)
                p.set_marked(1, lookup(1, n.get<std::string>()), true);
    }
    const auto cosk = cert_from(j.value("cosk", json(nullptr)), bi);
    const auto skel = cert_from(j.value("skel", json(nullptr)), bi);
    for (int d = 0; d < 2; ++d) {
        p.set_cosk(d, cosk[d]);
        p.set_skel(d, skel[d]);
    }
    p.finalize();
    return p;
}

json to_json(const PresheafMap& f)
{
    json j;
    j["source"] = to_json(f.source());
    j["target"] = to_json(f.target());
    json comps = json::object();
    const Presheaf& x = f.source();
    for (int idx = 0; idx < x.level_count(); ++idx) {
        json m = json::object();
        for (int c = 0; c < x.size(idx); ++c)
            m[x.name(idx, c)] = f.target().name(idx, f(idx, c));
        comps[level_key(x, idx)] = m;
    }
    j["components"] = comps;
    return j;
}

PresheafMap map_from_json(const json& j, const std::filesystem::path& base_dir)
{
    auto load = [&](const json& v) {
        if (v.is_string())
            return share(presheaf_from_json(read_json_file(base_dir / v.get<std::string>())));
        return share(presheaf_from_json(v));
    };
    auto x = load(j.at("source"));
    auto y = load(j.at("target"));
    Components comps(x->level_count());
    for (int idx = 0; idx < x->level_count(); ++idx)
        comps[idx].assign(x->size(idx), -1);
    for (const auto& [key, table] : j.at("components").items()) {
        const auto [k, l] = parse_level_key(key, x->bisimplicial());
        const int idx = x->level_index(k, l);
        for (const auto& [cell, value] : table.items()) {
            const int c = x->find(idx, cell);
            const int v = y->find(idx, value.get<std::string>());
            if (c < 0 || v < 0)
                throw Error("map component refers to an unknown cell");
            comps[idx][c] = v;
        }
    }
    for (int idx = 0; idx < x->level_count(); ++idx)
        for (int v : comps[idx])
            if (v < 0)
                throw Error("map components incomplete at level " + level_key(*x, idx));
    PresheafMap f(x, y, std::move(comps));
    f.validate();
    return f;
}

json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    try {
        return json::parse(in);
    }
    catch (const json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path.string());
    out << canonical_dump(j);
}

std::string canonical_dump(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace simpcalc
