#include "simpcalc/keyed.hpp"

#include <map>

namespace simpcalc {

Presheaf build_keyed(const KeyedSpec& spec)
{
    Presheaf p(spec.shape, spec.bound);
    if (static_cast<int>(spec.cells.size()) != p.level_count())
        throw Error("build_keyed: wrong number of levels");
    std::vector<std::map<CellKey, int>> index(p.level_count());
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto& cs = spec.cells[idx];
        p.resize_level(idx, static_cast<int>(cs.size()));
        for (std::size_t c = 0; c < cs.size(); ++c) {
            if (!index[idx].emplace(cs[c], static_cast<int>(c)).second)
                throw Error("build_keyed: duplicate cell key");
            if (spec.name)
                p.level(idx).names[c] = spec.name(idx, cs[c]);
        }
    }
    auto lookup = [&](int idx, const CellKey& key) {
        auto it = index[idx].find(key);
        if (it == index[idx].end())
            throw Error("build_keyed: structure map leaves the listed cells");
        return it->second;
    };
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto& cs = spec.cells[idx];
        for (int d = 0; d < p.directions(); ++d) {
            const int n = p.extent(idx, d);
            const int fl = p.face_level(idx, d);
            const int dl = p.degeneracy_level(idx, d);
            for (std::size_t c = 0; c < cs.size(); ++c) {
                for (int i = 0; fl >= 0 && i <= n; ++i)
                    p.set_face(idx, d, i, static_cast<int>(c), lookup(fl, spec.face(idx, d, i, cs[c])));
                for (int i = 0; dl >= 0 && i <= n; ++i)
                    p.set_degeneracy(idx, d, i, static_cast<int>(c), lookup(dl, spec.degeneracy(idx, d, i, cs[c])));
            }
        }
        if (spec.marked && p.marked_shape() && p.coords(idx)[0] == 1)
            for (std::size_t c = 0; c < cs.size(); ++c)
                p.set_marked(idx, static_cast<int>(c), spec.marked(idx, cs[c]));
    }
    for (int d = 0; d < 2; ++d) {
        p.set_cosk(d, spec.cosk[d]);
        p.set_skel(d, spec.skel[d]);
    }
    p.finalize();
    return p;
}

} // namespace simpcalc
