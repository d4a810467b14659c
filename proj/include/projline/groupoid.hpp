#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "projline/report.hpp"

namespace projline {

// An arrow src -> dst. For src != dst the label is a point index distinct
// from both endpoints (the projection structure names each such arrow by a
// third point). For src == dst the label is a scalar index: endo arrows are
// stored directly as abstract scalars, the same id at every vertex.
struct morphism {
    int src = -1;
    int dst = -1;
    int label = -1;

    bool endo() const { return src == dst; }
    bool operator==(const morphism& o) const {
        return src == o.src && dst == o.dst && label == o.label;
    }
    bool operator!=(const morphism& o) const { return !(*this == o); }
};

// Groupoid on n >= 3 points with an abelian scalar group and a total
// composition table over all composable pairs. Composition is written left
// to right: compose(f, g) is "f then g".
//
// Morphisms are indexed densely: every object has out_deg() outgoing
// arrows, listed by destination block; id = src * out_deg() + local rank.
struct proj_groupoid {
    std::vector<std::string> points;
    std::vector<std::string> scalars;
    int one = -1;                 // index of "1" in scalars
    std::vector<int> scalar_mul;  // s*s row-major, scalar indices
    std::vector<int> compose_tab; // (n*out_deg) * out_deg, morphism ids

    int n() const { return static_cast<int>(points.size()); }
    int s() const { return static_cast<int>(scalars.size()); }
    int out_deg() const { return (n() - 1) * (n() - 2) + s(); }
    int morphism_count() const { return n() * out_deg(); }

    int smul(int a, int b) const { return scalar_mul[static_cast<size_t>(a) * s() + b]; }

    int sinv(int a) const {
        for (int b = 0; b < s(); ++b)
            if (smul(a, b) == one && smul(b, a) == one) return b;
        throw error(errc::structurally_invalid, "scalar '" + scalars[static_cast<size_t>(a)] +
                                                    "' has no inverse");
    }

    int point_index(const std::string& name) const {
        for (int i = 0; i < n(); ++i)
            if (points[static_cast<size_t>(i)] == name) return i;
        throw error(errc::malformed_groupoid, "unknown point '" + name + "'");
    }

    int scalar_index(const std::string& name) const {
        for (int i = 0; i < s(); ++i)
            if (scalars[static_cast<size_t>(i)] == name) return i;
        throw error(errc::malformed_groupoid, "unknown scalar '" + name + "'");
    }

    // rank of label among points with src and dst removed
    int label_rank(int src, int dst, int label) const {
        return label - (label > src ? 1 : 0) - (label > dst ? 1 : 0);
    }

    int label_unrank(int src, int dst, int r) const {
        int lo = std::min(src, dst), hi = std::max(src, dst);
        if (r >= lo) ++r;
        if (r >= hi) ++r;
        return r;
    }

    // offset of the hom(src, dst) block among the out-arrows of src
    int block_offset(int src, int dst) const {
        return dst * (n() - 2) + (src < dst ? s() - (n() - 2) : 0);
    }

    int morphism_id(const morphism& m) const {
        int local = block_offset(m.src, m.dst) +
                    (m.endo() ? m.label : label_rank(m.src, m.dst, m.label));
        return m.src * out_deg() + local;
    }

    morphism morphism_at(int id) const {
        const int od = out_deg();
        int src = id / od, local = id % od;
        for (int dst = 0; dst < n(); ++dst) {
            int bs = (dst == src) ? s() : n() - 2;
            if (local < bs)
                return {src, dst, dst == src ? local : label_unrank(src, dst, local)};
            local -= bs;
        }
        throw error(errc::malformed_groupoid, "morphism id out of range");
    }

    morphism arrow(int label, int src, int dst) const {
        if (src == dst || label == src || label == dst)
            throw error(errc::degenerate_points, "arrow label must be a third point");
        return {src, dst, label};
    }

    morphism endo_arrow(int scalar, int at) const { return {at, at, scalar}; }
    morphism identity(int at) const { return {at, at, one}; }

    // compose_tab index for composable ids (id2 must start where id1 ends)
    int compose_ids(int id1, int id2) const {
        return compose_tab[static_cast<size_t>(id1) * out_deg() + id2 % out_deg()];
    }

    morphism compose(const morphism& m1, const morphism& m2) const {
        if (m1.dst != m2.src)
            throw error(errc::non_composable, "arrows do not share a middle object");
        return morphism_at(compose_ids(morphism_id(m1), morphism_id(m2)));
    }

    morphism inverse(const morphism& m) const {
        const int id = morphism_id(m);
        const int base = m.dst * out_deg();
        for (int r = 0; r < out_deg(); ++r) {
            morphism cand = morphism_at(base + r);
            if (cand.dst != m.src) continue;
            if (compose_ids(id, base + r) == morphism_id(identity(m.src)) &&
                compose_ids(base + r, id) == morphism_id(identity(m.dst)))
                return cand;
        }
        throw error(errc::structurally_invalid, "morphism has no two-sided inverse");
    }

    void set_compose(const morphism& m1, const morphism& m2, const morphism& result) {
        if (m1.dst != m2.src) throw error(errc::non_composable, "pair is not composable");
        if (result.src != m1.src || result.dst != m2.dst)
            throw error(errc::malformed_groupoid, "result endpoints do not match");
        compose_tab[static_cast<size_t>(morphism_id(m1)) * out_deg() +
                    morphism_id(m2) % out_deg()] = morphism_id(result);
    }

    std::string morphism_name(const morphism& m) const {
        if (m.endo()) return scalars[static_cast<size_t>(m.label)] + "@" + points[static_cast<size_t>(m.src)];
        return points[static_cast<size_t>(m.label)] + ":" + points[static_cast<size_t>(m.src)] +
               "->" + points[static_cast<size_t>(m.dst)];
    }

    bool operator==(const proj_groupoid& o) const {
        return points == o.points && scalars == o.scalars && one == o.one &&
               scalar_mul == o.scalar_mul && compose_tab == o.compose_tab;
    }
};

namespace detail {

// type-level guards; throws MalformedGroupoid before any semantic check
inline void guard_well_typed(const proj_groupoid& g) {
    if (g.n() < 3) throw error(errc::malformed_groupoid, "need at least 3 points");
    {
        auto sorted = g.points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw error(errc::malformed_groupoid, "duplicate point id");
        sorted = g.scalars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw error(errc::malformed_groupoid, "duplicate scalar id");
    }
    if (g.s() < 1) throw error(errc::malformed_groupoid, "empty scalar list");
    bool has_one = false;
    for (int i = 0; i < g.s(); ++i)
        if (g.scalars[static_cast<size_t>(i)] == "1") {
            has_one = true;
            if (g.one != i)
                throw error(errc::malformed_groupoid, "'one' does not point at scalar \"1\"");
        }
    if (!has_one) throw error(errc::malformed_groupoid, "scalar \"1\" is missing");
    if (g.scalar_mul.size() != static_cast<size_t>(g.s()) * g.s())
        throw error(errc::malformed_groupoid, "scalar_mul has wrong size");
    for (int v : g.scalar_mul)
        if (v < 0 || v >= g.s())
            throw error(errc::malformed_groupoid, "scalar_mul entry out of range");
    const int od = g.out_deg(), M = g.morphism_count();
    if (g.compose_tab.size() != static_cast<size_t>(M) * od)
        throw error(errc::malformed_groupoid, "compose table has wrong size");
    for (int id1 = 0; id1 < M; ++id1) {
        const morphism m1 = g.morphism_at(id1);
        for (int r2 = 0; r2 < od; ++r2) {
            int v = g.compose_tab[static_cast<size_t>(id1) * od + r2];
            if (v < 0 || v >= M)
                throw error(errc::malformed_groupoid, "compose entry out of range");
            const morphism m2 = g.morphism_at(m1.dst * od + r2);
            const morphism m12 = g.morphism_at(v);
            if (m12.src != m1.src || m12.dst != m2.dst)
                throw error(errc::malformed_groupoid,
                            "compose(" + g.morphism_name(m1) + ", " + g.morphism_name(m2) +
                                ") has endpoints " + g.morphism_name(m12));
        }
    }
}

}  // namespace detail

// Groupoid laws plus the two conventions the representation relies on: the
// scalar set is one abelian group acting identically at every vertex, and
// conjugation along any arrow preserves scalar ids.
inline validation_report validate_structure(const proj_groupoid& g) {
    detail::guard_well_typed(g);
    validation_report rep;
    auto check = [&rep](const std::string& name) -> check_result& {
        rep.checks.push_back({name, true, ""});
        return rep.checks.back();
    };
    auto fail = [](check_result& c, const std::string& w) {
        if (c.passed) {
            c.passed = false;
            c.witness = w;
        }
    };

    const int n = g.n(), s = g.s(), od = g.out_deg(), M = g.morphism_count();

    {
        auto& c = check("projection_bijection");
        if (s != n - 2) {
            std::ostringstream os;
            os << "hom(A,A) has " << s << " elements but hom(A,B) has " << n - 2;
            fail(c, os.str());
        }
    }
    {
        auto& c = check("scalar_group");
        for (int a = 0; a < s && c.passed; ++a)
            for (int b = 0; b < s && c.passed; ++b)
                for (int x = 0; x < s; ++x)
                    if (g.smul(g.smul(a, b), x) != g.smul(a, g.smul(b, x))) {
                        fail(c, "associativity fails at " + g.scalars[static_cast<size_t>(a)] + "," +
                                    g.scalars[static_cast<size_t>(b)] + "," + g.scalars[static_cast<size_t>(x)]);
                        break;
                    }
        for (int a = 0; a < s && c.passed; ++a)
            for (int b = 0; b < s; ++b)
                if (g.smul(a, b) != g.smul(b, a)) {
                    fail(c, "commutativity fails at " + g.scalars[static_cast<size_t>(a)] + "," +
                                g.scalars[static_cast<size_t>(b)]);
                    break;
                }
        for (int a = 0; a < s && c.passed; ++a)
            if (g.smul(g.one, a) != a || g.smul(a, g.one) != a)
                fail(c, "\"1\" is not an identity at " + g.scalars[static_cast<size_t>(a)]);
        for (int a = 0; a < s && c.passed; ++a) {
            bool found = false;
            for (int b = 0; b < s; ++b)
                if (g.smul(a, b) == g.one && g.smul(b, a) == g.one) found = true;
            if (!found) fail(c, "no inverse for " + g.scalars[static_cast<size_t>(a)]);
        }
    }
    {
        auto& c = check("connectedness");
        if (n - 2 < 1) fail(c, "some hom set is empty");
    }

    std::vector<int> dst_of(static_cast<size_t>(M));
    for (int id = 0; id < M; ++id) dst_of[static_cast<size_t>(id)] = g.morphism_at(id).dst;

    {
        auto& c = check("identity_laws");
        for (int a = 0; a < n && c.passed; ++a) {
            const int ida = g.morphism_id(g.identity(a));
            for (int r = 0; r < od; ++r) {
                // 1_a . m = m for m out of a
                if (g.compose_tab[static_cast<size_t>(ida) * od + r] != a * od + r) {
                    fail(c, "1@" + g.points[static_cast<size_t>(a)] + " is not a left identity for " +
                                g.morphism_name(g.morphism_at(a * od + r)));
                    break;
                }
            }
            for (int id = 0; id < M && c.passed; ++id)
                if (dst_of[static_cast<size_t>(id)] == a &&
                    g.compose_tab[static_cast<size_t>(id) * od + ida % od] != id)
                    fail(c, "1@" + g.points[static_cast<size_t>(a)] + " is not a right identity for " +
                                g.morphism_name(g.morphism_at(id)));
        }
    }
    {
        auto& c = check("inverses");
        for (int id = 0; id < M && c.passed; ++id) {
            const morphism m = g.morphism_at(id);
            const int want_l = g.morphism_id(g.identity(m.src));
            const int want_r = g.morphism_id(g.identity(m.dst));
            bool found = false;
            const int base = m.dst * od;
            for (int r = 0; r < od; ++r) {
                if (dst_of[static_cast<size_t>(base + r)] != m.src) continue;
                if (g.compose_tab[static_cast<size_t>(id) * od + r] == want_l &&
                    g.compose_tab[static_cast<size_t>(base + r) * od + id % od] == want_r) {
                    found = true;
                    break;
                }
            }
            if (!found) fail(c, g.morphism_name(m) + " has no two-sided inverse");
        }
    }
    {
        auto& c = check("associativity");
        for (int id1 = 0; id1 < M && c.passed; ++id1) {
            const size_t base1 = static_cast<size_t>(id1) * od;
            const int d1 = dst_of[static_cast<size_t>(id1)];
            for (int r2 = 0; r2 < od && c.passed; ++r2) {
                const int id2 = d1 * od + r2;
                const int c12 = g.compose_tab[base1 + r2];
                const size_t base12 = static_cast<size_t>(c12) * od;
                const size_t base2 = static_cast<size_t>(id2) * od;
                for (int r3 = 0; r3 < od; ++r3) {
                    const int lhs = g.compose_tab[base12 + r3];
                    const int c23 = g.compose_tab[base2 + r3];
                    const int rhs = g.compose_tab[base1 + c23 % od];
                    if (lhs != rhs) {
                        const int id3 = dst_of[static_cast<size_t>(id2)] * od + r3;
                        fail(c, "(" + g.morphism_name(g.morphism_at(id1)) + " . " +
                                    g.morphism_name(g.morphism_at(id2)) + ") . " +
                                    g.morphism_name(g.morphism_at(id3)));
                        break;
                    }
                }
            }
        }
    }
    {
        auto& c = check("commutativity");
        for (int a = 0; a < n && c.passed; ++a)
            for (int u = 0; u < s && c.passed; ++u)
                for (int v = 0; v < s; ++v) {
                    const int idu = g.morphism_id(g.endo_arrow(u, a));
                    const int idv = g.morphism_id(g.endo_arrow(v, a));
                    if (g.compose_ids(idu, idv) != g.compose_ids(idv, idu)) {
                        fail(c, "endos at " + g.points[static_cast<size_t>(a)] + " do not commute: " +
                                    g.scalars[static_cast<size_t>(u)] + "," + g.scalars[static_cast<size_t>(v)]);
                        break;
                    }
                }
    }
    {
        auto& c = check("vertex_group_agreement");
        for (int a = 0; a < n && c.passed; ++a)
            for (int u = 0; u < s && c.passed; ++u)
                for (int v = 0; v < s; ++v) {
                    const morphism want = g.endo_arrow(g.smul(u, v), a);
                    if (g.compose_ids(g.morphism_id(g.endo_arrow(u, a)),
                                      g.morphism_id(g.endo_arrow(v, a))) != g.morphism_id(want)) {
                        fail(c, "endo composition at " + g.points[static_cast<size_t>(a)] +
                                    " disagrees with scalar_mul at " + g.scalars[static_cast<size_t>(u)] +
                                    "," + g.scalars[static_cast<size_t>(v)]);
                        break;
                    }
                }
    }
    {
        // mu.f = f.mu for every arrow f: A -> B and scalar mu; this is what
        // makes "the same scalar id at every vertex" a coherent convention
        auto& c = check("scalar_identification");
        for (int id = 0; id < M && c.passed; ++id) {
            const morphism m = g.morphism_at(id);
            if (m.endo()) continue;
            for (int u = 0; u < s; ++u) {
                const int left = g.compose_ids(g.morphism_id(g.endo_arrow(u, m.src)), id);
                const int right = g.compose_ids(id, g.morphism_id(g.endo_arrow(u, m.dst)));
                if (left != right) {
                    fail(c, g.scalars[static_cast<size_t>(u)] + "@" + g.points[static_cast<size_t>(m.src)] +
                                " . " + g.morphism_name(m) + " != " + g.morphism_name(m) + " . " +
                                g.scalars[static_cast<size_t>(u)] + "@" + g.points[static_cast<size_t>(m.dst)]);
                    break;
                }
            }
        }
    }
    return rep;
}

// The four axioms, each swept exhaustively. Quantifiers over four points
// are vacuous on 3-point groupoids.
inline validation_report check_axioms(const proj_groupoid& g) {
    {
        auto structure = validate_structure(g);
        if (!structure.clean())
            throw error(errc::structurally_invalid, structure.first_witness(), structure);
    }
    validation_report rep;
    auto check = [&rep](const std::string& name) -> check_result& {
        rep.checks.push_back({name, true, ""});
        return rep.checks.back();
    };
    auto fail = [](check_result& c, const std::string& w) {
        if (c.passed) {
            c.passed = false;
            c.witness = w;
        }
    };
    const int n = g.n();
    auto pname = [&g](int p) { return g.points[static_cast<size_t>(p)]; };

    {
        auto& c = check("axiom1");
        // (C:A->B).(C:B->A) = 1_A
        for (int a = 0; a < n && c.passed; ++a)
            for (int b = 0; b < n && c.passed; ++b) {
                if (a == b) continue;
                for (int x = 0; x < n; ++x) {
                    if (x == a || x == b) continue;
                    if (g.compose(g.arrow(x, a, b), g.arrow(x, b, a)) != g.identity(a)) {
                        fail(c, "(" + pname(x) + ":" + pname(a) + "->" + pname(b) + ").(" +
                                    pname(x) + ":" + pname(b) + "->" + pname(a) + ") != 1");
                        break;
                    }
                }
            }
        // (C:A->B).(C:B->D) = C:A->D
        for (int a = 0; a < n && c.passed; ++a)
            for (int b = 0; b < n && c.passed; ++b)
                for (int d = 0; d < n && c.passed; ++d) {
                    if (a == b || a == d || b == d) continue;
                    for (int x = 0; x < n; ++x) {
                        if (x == a || x == b || x == d) continue;
                        if (g.compose(g.arrow(x, a, b), g.arrow(x, b, d)) != g.arrow(x, a, d)) {
                            fail(c, "(" + pname(x) + ":" + pname(a) + "->" + pname(b) + ").(" +
                                        pname(x) + ":" + pname(b) + "->" + pname(d) +
                                        ") != " + pname(x) + ":" + pname(a) + "->" + pname(d));
                            break;
                        }
                    }
                }
    }
    {
        auto& c = check("axiom2");
        for (int a = 0; a < n && c.passed; ++a)
            for (int b = 0; b < n && c.passed; ++b)
                for (int x = 0; x < n && c.passed; ++x)
                    for (int d = 0; d < n; ++d) {
                        if (a == b || a == x || a == d || b == x || b == d || x == d) continue;
                        const morphism lhs = g.compose(
                            g.compose(g.arrow(x, a, b), g.arrow(d, b, a)), g.arrow(b, a, x));
                        const morphism rhs = g.compose(
                            g.compose(g.arrow(b, a, x), g.arrow(a, x, d)), g.arrow(b, d, x));
                        if (lhs != rhs) {
                            fail(c, "A=" + pname(a) + " B=" + pname(b) + " C=" + pname(x) +
                                        " D=" + pname(d));
                            break;
                        }
                    }
    }
    {
        // the double ratio (A,B;C,D) determines the interchanged (A,C;B,D):
        // bucket tuples by the first value, the second must be constant
        auto& c = check("axiom3");
        std::vector<int> expected(static_cast<size_t>(g.s()), -1);
        std::vector<std::string> rep_tuple(static_cast<size_t>(g.s()));
        for (int a = 0; a < n && c.passed; ++a)
            for (int b = 0; b < n && c.passed; ++b)
                for (int x = 0; x < n && c.passed; ++x)
                    for (int d = 0; d < n; ++d) {
                        if (a == b || a == x || a == d || b == x || b == d || x == d) continue;
                        const int v =
                            g.compose(g.arrow(x, a, b), g.arrow(d, b, a)).label;
                        const int w =
                            g.compose(g.arrow(b, a, x), g.arrow(d, x, a)).label;
                        std::string tup = "(" + pname(a) + "," + pname(b) + ";" + pname(x) + "," +
                                          pname(d) + ")";
                        if (expected[static_cast<size_t>(v)] < 0) {
                            expected[static_cast<size_t>(v)] = w;
                            rep_tuple[static_cast<size_t>(v)] = tup;
                        } else if (expected[static_cast<size_t>(v)] != w) {
                            fail(c, tup + " and " + rep_tuple[static_cast<size_t>(v)] +
                                        " share a value but their interchanges differ");
                            break;
                        }
                    }
    }
    {
        // (A,B,C;C,A,B) does not depend on the third point
        auto& c = check("axiom4");
        auto tri = [&g](int a, int b, int x) {
            return g.compose(g.compose(g.arrow(x, a, b), g.arrow(a, b, x)), g.arrow(b, x, a))
                .label;
        };
        for (int a = 0; a < n && c.passed; ++a)
            for (int b = 0; b < n && c.passed; ++b)
                for (int x = 0; x < n && c.passed; ++x)
                    for (int d = 0; d < n; ++d) {
                        if (a == b || a == x || a == d || b == x || b == d || x == d) continue;
                        if (tri(a, b, x) != tri(a, b, d)) {
                            fail(c, "(" + pname(a) + "," + pname(b) + "," + pname(x) +
                                        ";...) != (" + pname(a) + "," + pname(b) + "," + pname(d) +
                                        ";...)");
                            break;
                        }
                    }
    }
    return rep;
}

// Canonical scalar id of an endo arrow: conjugate it to the base vertex
// along any arrow. On validated structures this is the stored label.
inline std::string abstract_scalar_of(const proj_groupoid& g, const morphism& m) {
    if (!m.endo()) throw error(errc::not_endo, g.morphism_name(m) + " is not an endo arrow");
    if (m.src == 0) return g.scalars[static_cast<size_t>(m.label)];
    int lbl = 0;
    while (lbl == 0 || lbl == m.src) ++lbl;  // least admissible label for 0 -> src
    const morphism t = g.arrow(lbl, 0, m.src);
    const morphism conj = g.compose(g.compose(t, m), g.inverse(t));
    return g.scalars[static_cast<size_t>(conj.label)];
}

// ---- serialization ----------------------------------------------------
//
// {"points": [...], "scalars": [...], "scalar_mul": [...],
//  "compose": [[[s,d,l],[s,d,l],[s,d,l]], ...]}
// scalar_mul is flattened row-major; compose lists every composable pair
// once, in morphism-id order, each entry [lhs, rhs, composite] with arrows
// encoded as [src, dst, label]. One compose entry per line, fixed layout,
// so identical groupoids serialize to identical bytes.

namespace detail {

inline void write_json_string(std::ostream& os, const std::string& sv) {
    os << nlohmann::json(sv).dump();
}

inline void write_morphism(std::ostream& os, const proj_groupoid& g, const morphism& m) {
    os << '[';
    write_json_string(os, g.points[static_cast<size_t>(m.src)]);
    os << ',';
    write_json_string(os, g.points[static_cast<size_t>(m.dst)]);
    os << ',';
    write_json_string(os, m.endo() ? g.scalars[static_cast<size_t>(m.label)]
                                   : g.points[static_cast<size_t>(m.label)]);
    os << ']';
}

}  // namespace detail

inline void write_groupoid(const proj_groupoid& g, std::ostream& os) {
    os << "{\n  \"points\": [";
    for (int i = 0; i < g.n(); ++i) {
        if (i) os << ", ";
        detail::write_json_string(os, g.points[static_cast<size_t>(i)]);
    }
    os << "],\n  \"scalars\": [";
    for (int i = 0; i < g.s(); ++i) {
        if (i) os << ", ";
        detail::write_json_string(os, g.scalars[static_cast<size_t>(i)]);
    }
    os << "],\n  \"scalar_mul\": [";
    for (size_t i = 0; i < g.scalar_mul.size(); ++i) {
        if (i) os << ", ";
        detail::write_json_string(os, g.scalars[static_cast<size_t>(g.scalar_mul[i])]);
    }
    os << "],\n  \"compose\": [\n";
    const int od = g.out_deg(), M = g.morphism_count();
    bool first = true;
    for (int id1 = 0; id1 < M; ++id1) {
        const morphism m1 = g.morphism_at(id1);
        for (int r2 = 0; r2 < od; ++r2) {
            if (!first) os << ",\n";
            first = false;
            const morphism m2 = g.morphism_at(m1.dst * od + r2);
            const morphism m12 = g.morphism_at(g.compose_tab[static_cast<size_t>(id1) * od + r2]);
            os << "    [";
            detail::write_morphism(os, g, m1);
            os << ',';
            detail::write_morphism(os, g, m2);
            os << ',';
            detail::write_morphism(os, g, m12);
            os << ']';
        }
    }
    os << "\n  ]\n}\n";
}

inline void write_groupoid(const proj_groupoid& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error(errc::io_error, "cannot open '" + path + "' for writing");
    write_groupoid(g, os);
}

inline proj_groupoid read_groupoid(std::istream& is) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw error(errc::parse_error, e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j.contains("scalars") ||
        !j.contains("scalar_mul") || !j.contains("compose"))
        throw error(errc::malformed_groupoid,
                    "groupoid file needs points/scalars/scalar_mul/compose");
    proj_groupoid g;
    g.points = j.at("points").get<std::vector<std::string>>();
    g.scalars = j.at("scalars").get<std::vector<std::string>>();
    if (g.n() < 3) throw error(errc::malformed_groupoid, "need at least 3 points");
    std::unordered_map<std::string, int> pidx, sidx;
    for (int i = 0; i < g.n(); ++i)
        if (!pidx.emplace(g.points[static_cast<size_t>(i)], i).second)
            throw error(errc::malformed_groupoid, "duplicate point id");
    for (int i = 0; i < g.s(); ++i)
        if (!sidx.emplace(g.scalars[static_cast<size_t>(i)], i).second)
            throw error(errc::malformed_groupoid, "duplicate scalar id");
    {
        auto it = sidx.find("1");
        if (it == sidx.end()) throw error(errc::malformed_groupoid, "scalar \"1\" is missing");
        g.one = it->second;
    }
    {
        const auto& arr = j.at("scalar_mul");
        if (!arr.is_array() || arr.size() != static_cast<size_t>(g.s()) * g.s())
            throw error(errc::malformed_groupoid, "scalar_mul has wrong size");
        for (const auto& v : arr) {
            auto it = sidx.find(v.get<std::string>());
            if (it == sidx.end())
                throw error(errc::malformed_groupoid, "scalar_mul entry is not a scalar id");
            g.scalar_mul.push_back(it->second);
        }
    }
    auto decode = [&](const nlohmann::json& m) -> morphism {
        if (!m.is_array() || m.size() != 3)
            throw error(errc::malformed_groupoid, "morphism must be [src, dst, label]");
        auto ps = pidx.find(m[0].get<std::string>());
        auto pd = pidx.find(m[1].get<std::string>());
        if (ps == pidx.end() || pd == pidx.end())
            throw error(errc::malformed_groupoid, "morphism endpoint is not a point id");
        const std::string lbl = m[2].get<std::string>();
        if (ps->second == pd->second) {
            auto it = sidx.find(lbl);
            if (it == sidx.end())
                throw error(errc::malformed_groupoid,
                            "endo arrow label '" + lbl + "' is not a scalar id");
            return {ps->second, pd->second, it->second};
        }
        auto it = pidx.find(lbl);
        if (it == pidx.end())
            throw error(errc::malformed_groupoid, "arrow label '" + lbl + "' is not a point id");
        if (it->second == ps->second || it->second == pd->second)
            throw error(errc::malformed_groupoid,
                        "arrow label '" + lbl + "' equals one of its endpoints");
        return {ps->second, pd->second, it->second};
    };
    const int od = g.out_deg(), M = g.morphism_count();
    g.compose_tab.assign(static_cast<size_t>(M) * od, -1);
    const auto& comp = j.at("compose");
    if (!comp.is_array()) throw error(errc::malformed_groupoid, "compose must be an array");
    for (const auto& entry : comp) {
        if (!entry.is_array() || entry.size() != 3)
            throw error(errc::malformed_groupoid, "compose entry must be [lhs, rhs, composite]");
        const morphism m1 = decode(entry[0]), m2 = decode(entry[1]), m12 = decode(entry[2]);
        if (m1.dst != m2.src)
            throw error(errc::malformed_groupoid,
                        "compose entry pairs " + g.morphism_name(m1) + " with " +
                            g.morphism_name(m2));
        if (m12.src != m1.src || m12.dst != m2.dst)
            throw error(errc::malformed_groupoid,
                        "composite endpoints do not match for " + g.morphism_name(m1) + " . " +
                            g.morphism_name(m2));
        auto& slot = g.compose_tab[static_cast<size_t>(g.morphism_id(m1)) * od +
                                   g.morphism_id(m2) % od];
        if (slot != -1)
            throw error(errc::malformed_groupoid,
                        "duplicate compose entry for " + g.morphism_name(m1) + " . " +
                            g.morphism_name(m2));
        slot = g.morphism_id(m12);
    }
    for (int v : g.compose_tab)
        if (v < 0) throw error(errc::malformed_groupoid, "compose table is not total");
    return g;
}

inline proj_groupoid read_groupoid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw error(errc::io_error, "cannot open '" + path + "'");
    return read_groupoid(is);
}

}  // namespace projline
