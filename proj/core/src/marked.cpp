#include "simpcalc/marked.hpp"

namespace simpcalc {

namespace {

Presheaf remark(const Presheaf& s, Shape shape)
{
    Presheaf p(shape, s.bound());
    for (int idx = 0; idx < p.level_count(); ++idx) {
        const auto& from = s.level(idx);
        p.resize_level(idx, from.size());
        auto& to = p.level(idx);
        to.names = from.names;
        to.faces = from.faces;
        to.degeneracies = from.degeneracies;
    }
    for (int d = 0; d < 2; ++d) {
        p.set_cosk(d, s.cosk()[d]);
        p.set_skel(d, s.skel()[d]);
    }
    return p;
}

} // namespace

Presheaf flat(const Presheaf& s)
{
    Presheaf p = remark(s, with_marking(s.shape()));
    if (p.dim() >= 1)
        for (int l = 0; l <= p.bound()[1]; ++l) {
            const int v = p.level_index(0, l);
            for (int c = 0; c < p.size(v); ++c)
                p.set_marked(p.level_index(1, l), p.degeneracy(v, 0, 0, c), true);
        }
    p.finalize();
    return p;
}

Presheaf sharp(const Presheaf& s)
{
    Presheaf p = remark(s, with_marking(s.shape()));
    if (p.dim() >= 1)
        for (int l = 0; l <= p.bound()[1]; ++l) {
            const int e = p.level_index(1, l);
            for (int c = 0; c < p.size(e); ++c)
                p.set_marked(e, c, true);
        }
    p.finalize();
    return p;
}

Presheaf forget(const Presheaf& m)
{
    Presheaf p = remark(m, unmarked(m.shape()));
    p.finalize();
    return p;
}

Presheaf apply_policy(const Presheaf& s, MarkingPolicy policy)
{
    return policy == MarkingPolicy::Flat ? flat(s) : sharp(s);
}

Presheaf with_markings(const Presheaf& s, const std::vector<std::vector<std::string>>& marked_names)
{
    Presheaf p = s.marked_shape() ? s : flat(s);
    for (std::size_t l = 0; l < marked_names.size(); ++l) {
        const int e = p.level_index(1, static_cast<int>(l));
        for (const auto& name : marked_names[l]) {
            const int c = p.find(e, name);
            if (c < 0)
                throw Error("with_markings: no edge named '" + name + "'");
            p.set_marked(e, c, true);
        }
    }
    p.finalize();
    return p;
}

std::vector<std::vector<int>> marked_edges(const Presheaf& m)
{
    std::vector<std::vector<int>> out;
    if (!m.marked_shape() || m.dim() < 1)
        return out;
    for (int l = 0; l <= m.bound()[1]; ++l) {
        const int e = m.level_index(1, l);
        out.emplace_back();
        for (int c = 0; c < m.size(e); ++c)
            if (m.is_marked(e, c))
                out.back().push_back(c);
    }
    return out;
}

long marked_count(const Presheaf& m)
{
    long n = 0;
    for (const auto& col : marked_edges(m))
        n += static_cast<long>(col.size());
    return n;
}

HomSet marked_hom(const PresheafPtr& m1, const PresheafPtr& m2)
{
    if (!m1->marked_shape() || !m2->marked_shape())
        throw Error("marked_hom expects marked shapes");
    return enumerate_hom(m1, m2);
}

} // namespace simpcalc
