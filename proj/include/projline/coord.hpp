#pragma once

#include <string>
#include <vector>

#include "projline/field.hpp"
#include "projline/groupoid.hpp"
#include "projline/report.hpp"

namespace projline {

// Vector in k^2, entries are field element indices.
struct vec2 {
    int x = -1;
    int y = -1;
    bool operator==(const vec2& o) const { return x == o.x && y == o.y; }
};

// | u.x v.x |
// | u.y v.y |
inline int det2(const vec2& u, const vec2& v, const field_table& f) {
    return f.plus(f.times(u.x, v.y), f.neg(f.times(u.y, v.x)));
}

// Point of the projective line, held by its canonical representative:
// (t, 1) for finite points, (1, 0) for the point at infinity.
struct proj_point {
    vec2 rep;
    bool operator==(const proj_point& o) const { return rep == o.rep; }
    bool operator!=(const proj_point& o) const { return !(rep == o.rep); }
};

inline proj_point make_point(const vec2& v, const field_table& f) {
    if (v.x == f.zero && v.y == f.zero)
        throw error(errc::degenerate_points, "the zero vector spans no point");
    if (v.y == f.zero) return {{f.one, f.zero}};
    return {{f.times(v.x, f.inv(v.y)), f.one}};
}

inline std::string point_name(const proj_point& p, const field_table& f) {
    return "(" + f.name(p.rep.x) + ":" + f.name(p.rep.y) + ")";
}

// All q+1 points: (t:1) in field element order, then (1:0).
inline std::vector<proj_point> enumerate_points(const field_table& f) {
    {
        auto rep = validate_field(f);
        if (!rep.clean()) throw error(errc::invalid_field, rep.first_witness(), rep);
    }
    std::vector<proj_point> pts;
    pts.reserve(static_cast<size_t>(f.q()) + 1);
    for (int t = 0; t < f.q(); ++t) pts.push_back({{t, f.one}});
    pts.push_back({{f.one, f.zero}});
    return pts;
}

// The 1x1 matrix entry of the arrow c: a -> b, in the bases (a, c) and
// (b, c): |a c| / |b c|. Nonzero because a, b, c are pairwise distinct.
inline int proj_scalar(const proj_point& a, const proj_point& b, const proj_point& c,
                       const field_table& f) {
    if (a == b || a == c || b == c)
        throw error(errc::degenerate_points, "proj_scalar needs three distinct points");
    return f.times(det2(a.rep, c.rep, f), f.inv(det2(b.rep, c.rep, f)));
}

// Inverse of t = proj_scalar(a, b, .): the label is span(a - t.b).
inline proj_point label_of_map(const proj_point& a, const proj_point& b, int t,
                               const field_table& f) {
    if (a == b) throw error(errc::degenerate_points, "label_of_map needs distinct endpoints");
    if (t == f.zero) throw error(errc::zero_coefficient, "projective maps have nonzero scale");
    vec2 v{f.plus(a.rep.x, f.neg(f.times(t, b.rep.x))),
           f.plus(a.rep.y, f.neg(f.times(t, b.rep.y)))};
    return make_point(v, f);
}

// Arrow of the coordinate model, kept as its matrix entry.
struct coord_morphism {
    proj_point src;
    proj_point dst;
    int coeff = -1;
};

inline coord_morphism compose_coord(const coord_morphism& m1, const coord_morphism& m2,
                                    const field_table& f) {
    if (!(m1.dst == m2.src))
        throw error(errc::non_composable, "arrows do not share a middle point");
    return {m1.src, m2.dst, f.times(m1.coeff, m2.coeff)};
}

// (a,b;c,d) = (|a c| / |b c|) . (|b d| / |a d|)
inline int cross_ratio_coord(const proj_point& a, const proj_point& b, const proj_point& c,
                             const proj_point& d, const field_table& f) {
    if (a == b || a == c || a == d || b == c || b == d || c == d)
        throw error(errc::degenerate_points, "cross ratio needs four distinct points");
    return f.times(proj_scalar(a, b, c, f), proj_scalar(b, a, d, f));
}

// The full groupoid of the projective line over f. Points are named by
// their canonical representatives, scalars by the nonzero field elements
// (with the field's one spelled "1").
inline proj_groupoid generate_groupoid(const field_table& f) {
    const auto pts = enumerate_points(f);  // validates f
    const int q = f.q(), n = q + 1;

    proj_groupoid g;
    g.points.reserve(static_cast<size_t>(n));
    for (const auto& p : pts) g.points.push_back(point_name(p, f));

    // nonzero field elements in table order; scalar index <-> element index
    std::vector<int> elem_of_scalar;
    std::vector<int> scalar_of_elem(static_cast<size_t>(q), -1);
    for (int e = 0; e < q; ++e) {
        if (e == f.zero) continue;
        const std::string id = (e == f.one) ? "1" : f.name(e);
        if (id == "1" && e != f.one)
            throw error(errc::invalid_field, "an element other than one is named \"1\"");
        scalar_of_elem[static_cast<size_t>(e)] = static_cast<int>(g.scalars.size());
        elem_of_scalar.push_back(e);
        g.scalars.push_back(id);
    }
    g.one = scalar_of_elem[static_cast<size_t>(f.one)];
    const int s = g.s();
    g.scalar_mul.resize(static_cast<size_t>(s) * s);
    for (int u = 0; u < s; ++u)
        for (int v = 0; v < s; ++v)
            g.scalar_mul[static_cast<size_t>(u) * s + v] =
                scalar_of_elem[static_cast<size_t>(f.times(elem_of_scalar[static_cast<size_t>(u)],
                                                           elem_of_scalar[static_cast<size_t>(v)]))];

    // matrix entry of every arrow, and the label realizing each entry
    std::vector<int> coeff(static_cast<size_t>(n) * n * n, -1);
    std::vector<int> label_for(static_cast<size_t>(n) * n * q, -1);
    auto cidx = [n](int a, int b, int c) {
        return (static_cast<size_t>(a) * n + b) * n + c;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                const int t = proj_scalar(pts[static_cast<size_t>(a)], pts[static_cast<size_t>(b)],
                                          pts[static_cast<size_t>(c)], f);
                coeff[cidx(a, b, c)] = t;
                label_for[(static_cast<size_t>(a) * n + b) * q + t] = c;
            }
        }

    const int od = g.out_deg(), M = g.morphism_count();
    g.compose_tab.resize(static_cast<size_t>(M) * od);
    auto entry_coeff = [&](const morphism& m) {
        return m.endo() ? elem_of_scalar[static_cast<size_t>(m.label)] : coeff[cidx(m.src, m.dst, m.label)];
    };
    for (int id1 = 0; id1 < M; ++id1) {
        const morphism m1 = g.morphism_at(id1);
        const int t1 = entry_coeff(m1);
        for (int r2 = 0; r2 < od; ++r2) {
            const morphism m2 = g.morphism_at(m1.dst * od + r2);
            const int t = f.times(t1, entry_coeff(m2));
            morphism out;
            if (m1.src == m2.dst)
                out = g.endo_arrow(scalar_of_elem[static_cast<size_t>(t)], m1.src);
            else
                out = g.arrow(label_for[(static_cast<size_t>(m1.src) * n + m2.dst) * q + t],
                              m1.src, m2.dst);
            g.compose_tab[static_cast<size_t>(id1) * od + r2] = g.morphism_id(out);
        }
    }
    return g;
}

}  // namespace projline
