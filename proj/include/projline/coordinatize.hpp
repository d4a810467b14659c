#pragma once

#include <algorithm>
#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "projline/coord.hpp"
#include "projline/field.hpp"
#include "projline/groupoid.hpp"
#include "projline/rapport.hpp"
#include "projline/report.hpp"

namespace projline {

// The scalar group of a groupoid together with its involution and -1; the
// two constants come with their well-definedness sweeps already done.
struct phi_group {
    std::vector<std::string> ids;
    int one = -1;
    std::vector<int> mul;  // s*s row-major
    phi_table phi;         // phi[one] = -1
    int minus1 = -1;

    int size() const { return static_cast<int>(ids.size()); }
    int times(int a, int b) const { return mul[static_cast<size_t>(a) * ids.size() + b]; }

    int inv(int a) const {
        for (int b = 0; b < size(); ++b)
            if (times(a, b) == one) return b;
        throw error(errc::malformed_table,
                    "scalar '" + ids[static_cast<size_t>(a)] + "' has no inverse");
    }
};

inline phi_group extract_phi_group(const proj_groupoid& g) {
    phi_group pg;
    pg.ids = g.scalars;
    pg.one = g.one;
    pg.mul = g.scalar_mul;
    pg.phi = derive_phi(g);
    pg.minus1 = minus_one(g);
    return pg;
}

// Addition recovered from the multiplicative structure:
//   lambda + mu = lambda . phi((-1) . lambda^-1 . mu)    for mu != -lambda
//   lambda + (-lambda) = 0,  0 + mu = mu
// The candidate goes through validate_field; a dirty report means the
// scalars do not carry a field, which is a finding, not an exception.
struct reconstruction {
    field_table field;
    validation_report report;
};

inline reconstruction reconstruct_field(const phi_group& pg) {
    const int s = pg.size();
    for (int t = 0; t < s; ++t)
        if (t != pg.one && pg.phi[static_cast<size_t>(t)] < 0)
            throw error(errc::malformed_table, "phi is not total on non-identity scalars");

    std::string zero_name = "0";
    while (std::find(pg.ids.begin(), pg.ids.end(), zero_name) != pg.ids.end())
        zero_name = "_" + zero_name;

    field_table f;
    f.elements.push_back(zero_name);
    for (const auto& id : pg.ids) f.elements.push_back(id);
    f.zero = 0;
    f.one = pg.one + 1;
    const int q = s + 1;
    f.add.assign(static_cast<size_t>(q) * q, 0);
    f.mul.assign(static_cast<size_t>(q) * q, 0);
    for (int i = 0; i < q; ++i) {
        f.add[static_cast<size_t>(0) * q + i] = i;
        f.add[static_cast<size_t>(i) * q + 0] = i;
        // zero row and column of mul stay zero
    }
    for (int i = 1; i < q; ++i)
        for (int j = 1; j < q; ++j) {
            const int lam = i - 1, mu = j - 1;
            f.mul[static_cast<size_t>(i) * q + j] = pg.times(lam, mu) + 1;
            const int t = pg.times(pg.minus1, pg.times(pg.inv(lam), mu));
            f.add[static_cast<size_t>(i) * q + j] =
                (t == pg.one) ? 0 : pg.times(lam, pg.phi[static_cast<size_t>(t)]) + 1;
        }
    reconstruction rec{std::move(f), {}};
    rec.report = validate_field(rec.field);
    return rec;
}

// Structure-preserving map between groupoids: where each point goes and
// where each scalar goes. Arrows follow their labels, so a single pair of
// maps determines the whole functor.
struct projectivity {
    std::vector<int> point_map;
    std::vector<int> scalar_map;
};

inline validation_report verify_projectivity(const projectivity& pr, const proj_groupoid& src,
                                             const proj_groupoid& dst) {
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
    const int n = src.n(), s = src.s();

    {
        auto& c = check("maps_total");
        if (static_cast<int>(pr.point_map.size()) != n ||
            static_cast<int>(pr.scalar_map.size()) != s)
            fail(c, "map sizes do not match the source groupoid");
        else {
            for (int v : pr.point_map)
                if (v < 0 || v >= dst.n()) fail(c, "point image out of range");
            for (int v : pr.scalar_map)
                if (v < 0 || v >= dst.s()) fail(c, "scalar image out of range");
        }
        if (!c.passed) return rep;  // nothing below is evaluable
    }

    bool points_ok = true;
    {
        auto& c = check("point_map_injective");
        for (int i = 0; i < n && c.passed; ++i)
            for (int j = i + 1; j < n; ++j)
                if (pr.point_map[static_cast<size_t>(i)] ==
                    pr.point_map[static_cast<size_t>(j)]) {
                    fail(c, src.points[static_cast<size_t>(i)] + " and " +
                                src.points[static_cast<size_t>(j)] + " share an image");
                    points_ok = false;
                    break;
                }
    }

    {
        // the image of C:A->B must be the arrow P(C): P(A) -> P(B)
        auto& c = check("label_equation");
        if (!points_ok)
            fail(c, "skipped: point map is not injective");
        else
            for (int a = 0; a < n && c.passed; ++a)
                for (int b = 0; b < n && c.passed; ++b) {
                    if (a == b) continue;
                    for (int l = 0; l < n; ++l) {
                        if (l == a || l == b) continue;
                        const int pa = pr.point_map[static_cast<size_t>(a)];
                        const int pb = pr.point_map[static_cast<size_t>(b)];
                        const int pl = pr.point_map[static_cast<size_t>(l)];
                        if (pa == pb || pl == pa || pl == pb) {
                            fail(c, "image of " + src.morphism_name(src.arrow(l, a, b)) +
                                        " is not a well-formed arrow");
                            break;
                        }
                    }
                }
    }

    bool scalars_ok = true;
    {
        auto& c = check("scalar_map_homomorphism");
        if (pr.scalar_map[static_cast<size_t>(src.one)] != dst.one) {
            fail(c, "1 is not sent to 1");
            scalars_ok = false;
        }
        for (int u = 0; u < s && c.passed; ++u)
            for (int v = u + 1; v < s; ++v)
                if (pr.scalar_map[static_cast<size_t>(u)] ==
                    pr.scalar_map[static_cast<size_t>(v)]) {
                    fail(c, "scalar map is not injective at " +
                                src.scalars[static_cast<size_t>(u)] + "," +
                                src.scalars[static_cast<size_t>(v)]);
                    scalars_ok = false;
                    break;
                }
        for (int u = 0; u < s && c.passed; ++u)
            for (int v = 0; v < s; ++v)
                if (pr.scalar_map[static_cast<size_t>(src.smul(u, v))] !=
                    dst.smul(pr.scalar_map[static_cast<size_t>(u)],
                             pr.scalar_map[static_cast<size_t>(v)])) {
                    fail(c, "products are not preserved at " +
                                src.scalars[static_cast<size_t>(u)] + "," +
                                src.scalars[static_cast<size_t>(v)]);
                    scalars_ok = false;
                    break;
                }
    }

    {
        auto& c = check("phi_compatibility");
        if (!scalars_ok || !points_ok)
            fail(c, "skipped: earlier map checks failed");
        else
            try {
                const phi_table phi_src = derive_phi(src);
                const phi_table phi_dst = derive_phi(dst);
                for (int u = 0; u < s; ++u) {
                    if (u == src.one) continue;
                    if (pr.scalar_map[static_cast<size_t>(phi_src[static_cast<size_t>(u)])] !=
                        phi_dst[static_cast<size_t>(pr.scalar_map[static_cast<size_t>(u)])]) {
                        fail(c, "phi does not commute with the scalar map at " +
                                    src.scalars[static_cast<size_t>(u)]);
                        break;
                    }
                }
            } catch (const error& e) {
                fail(c, std::string("phi is not well-defined: ") + e.what());
            }
    }

    {
        auto& c = check("functoriality");
        if (!points_ok)
            fail(c, "skipped: point map is not injective");
        else {
            const int od = src.out_deg(), M = src.morphism_count();
            std::vector<int> fid(static_cast<size_t>(M));
            for (int id = 0; id < M; ++id) {
                const morphism m = src.morphism_at(id);
                const morphism fm{pr.point_map[static_cast<size_t>(m.src)],
                                  pr.point_map[static_cast<size_t>(m.dst)],
                                  m.endo() ? pr.scalar_map[static_cast<size_t>(m.label)]
                                           : pr.point_map[static_cast<size_t>(m.label)]};
                fid[static_cast<size_t>(id)] = dst.morphism_id(fm);
            }
            for (int id1 = 0; id1 < M && c.passed; ++id1) {
                const int d1 = src.morphism_at(id1).dst;
                for (int r2 = 0; r2 < od; ++r2) {
                    const int id2 = d1 * od + r2;
                    const int lhs = dst.compose_ids(fid[static_cast<size_t>(id1)],
                                                    fid[static_cast<size_t>(id2)]);
                    const int rhs = fid[static_cast<size_t>(
                        src.compose_tab[static_cast<size_t>(id1) * od + r2])];
                    if (lhs != rhs) {
                        fail(c, "image of " + src.morphism_name(src.morphism_at(id1)) + " . " +
                                    src.morphism_name(src.morphism_at(id2)) +
                                    " differs from the composite of the images");
                        break;
                    }
                }
            }
        }
    }

    {
        auto& c = check("cross_ratio_preservation");
        if (!points_ok || !scalars_ok)
            fail(c, "skipped: earlier map checks failed");
        else
            for (int a = 0; a < n && c.passed; ++a)
                for (int b = 0; b < n && c.passed; ++b)
                    for (int x = 0; x < n && c.passed; ++x)
                        for (int d = 0; d < n; ++d) {
                            if (a == b || a == x || a == d || b == x || b == d || x == d)
                                continue;
                            const int v = cross_ratio(src, a, b, x, d);
                            const int w = cross_ratio(
                                dst, pr.point_map[static_cast<size_t>(a)],
                                pr.point_map[static_cast<size_t>(b)],
                                pr.point_map[static_cast<size_t>(x)],
                                pr.point_map[static_cast<size_t>(d)]);
                            if (pr.scalar_map[static_cast<size_t>(v)] != w) {
                                fail(c, "(" + src.points[static_cast<size_t>(a)] + "," +
                                            src.points[static_cast<size_t>(b)] + ";" +
                                            src.points[static_cast<size_t>(x)] + "," +
                                            src.points[static_cast<size_t>(d)] +
                                            ") is not preserved");
                                break;
                            }
                        }
    }
    return rep;
}

// A map of projective lines is fixed by three points and the scalar action:
// send the base triple across, then place every other point X by solving
// (t0,t1;t2,X) = mu in the source and asking for the fourth point over
// p(mu) in the target. The result is verified in full before it is handed
// back; p itself is vetted first.
inline projectivity build_projectivity(const proj_groupoid& src, const proj_groupoid& dst,
                                       const std::array<int, 3>& t_src,
                                       const std::array<int, 3>& t_dst,
                                       const std::vector<int>& p) {
    const int n = src.n(), s = src.s();
    for (int i = 0; i < 3; ++i) {
        if (t_src[static_cast<size_t>(i)] < 0 || t_src[static_cast<size_t>(i)] >= n ||
            t_dst[static_cast<size_t>(i)] < 0 || t_dst[static_cast<size_t>(i)] >= dst.n())
            throw error(errc::degenerate_points, "base triple index out of range");
        for (int j = i + 1; j < 3; ++j)
            if (t_src[static_cast<size_t>(i)] == t_src[static_cast<size_t>(j)] ||
                t_dst[static_cast<size_t>(i)] == t_dst[static_cast<size_t>(j)])
                throw error(errc::degenerate_points, "base triple has a repeated point");
    }

    auto bad = [](const std::string& w) {
        return error(errc::incompatible_scalar_map, "scalar map rejected: " + w);
    };
    if (static_cast<int>(p.size()) != s) throw bad("wrong size");
    std::vector<char> seen(static_cast<size_t>(dst.s()), 0);
    for (int v : p) {
        if (v < 0 || v >= dst.s()) throw bad("image out of range");
        if (seen[static_cast<size_t>(v)]) throw bad("not injective");
        seen[static_cast<size_t>(v)] = 1;
    }
    if (p[static_cast<size_t>(src.one)] != dst.one) throw bad("1 is not sent to 1");
    for (int u = 0; u < s; ++u)
        for (int v = 0; v < s; ++v)
            if (p[static_cast<size_t>(src.smul(u, v))] !=
                dst.smul(p[static_cast<size_t>(u)], p[static_cast<size_t>(v)]))
                throw bad("products are not preserved at " + src.scalars[static_cast<size_t>(u)] +
                          "," + src.scalars[static_cast<size_t>(v)]);
    {
        const phi_table phi_src = derive_phi(src);
        const phi_table phi_dst = derive_phi(dst);
        for (int u = 0; u < s; ++u) {
            if (u == src.one) continue;
            if (p[static_cast<size_t>(phi_src[static_cast<size_t>(u)])] !=
                phi_dst[static_cast<size_t>(p[static_cast<size_t>(u)])])
                throw bad("phi does not commute with the map at " +
                          src.scalars[static_cast<size_t>(u)]);
        }
    }

    projectivity pr;
    pr.scalar_map = p;
    pr.point_map.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < 3; ++i)
        pr.point_map[static_cast<size_t>(t_src[static_cast<size_t>(i)])] =
            t_dst[static_cast<size_t>(i)];
    for (int x = 0; x < n; ++x) {
        if (x == t_src[0] || x == t_src[1] || x == t_src[2]) continue;
        const int mu = cross_ratio(src, t_src[0], t_src[1], t_src[2], x);
        pr.point_map[static_cast<size_t>(x)] = solve_fourth_point(
            dst, p[static_cast<size_t>(mu)], t_dst[0], t_dst[1], t_dst[2]);
    }

    const validation_report rep = verify_projectivity(pr, src, dst);
    if (!rep.clean())
        throw error(errc::verification_failure,
                    "constructed map failed verification: " + rep.first_witness(), rep);
    return pr;
}

// Full pipeline: a finite groupoid that passes the structural checks and the
// four axioms, and whose scalars reconstruct to a field, is identified with
// the coordinate model built over that field.
struct coordinatization {
    field_table field;
    proj_groupoid model;
    projectivity iso;
};

inline coordinatization coordinatize(const proj_groupoid& g) {
    {
        const validation_report rep = validate_structure(g);
        if (!rep.clean())
            throw error(errc::structurally_invalid,
                        "groupoid fails structural validation: " + rep.first_witness(), rep);
    }
    {
        const validation_report rep = check_axioms(g);
        if (!rep.clean())
            throw error(errc::axiom_violation, "axiom failure: " + rep.first_witness(), rep);
    }
    if (g.n() == 4 && minus_one(g) == g.one)
        throw error(errc::unsupported_four_point,
                    "four points with -1 = 1: addition is not recoverable from this groupoid");

    const phi_group pg = extract_phi_group(g);
    reconstruction rec = reconstruct_field(pg);
    if (!rec.report.clean())
        throw error(errc::not_a_field,
                    "reconstructed tables fail field validation: " + rec.report.first_witness(),
                    rec.report);

    coordinatization out{std::move(rec.field), {}, {}};
    out.model = generate_groupoid(out.field);

    std::vector<int> p(static_cast<size_t>(g.s()));
    for (int u = 0; u < g.s(); ++u)
        p[static_cast<size_t>(u)] = out.model.scalar_index(g.scalars[static_cast<size_t>(u)]);

    // target triple: (1:0), (0:1), (1:1); the source triple is the one the
    // field was built from
    const int q = out.field.q();
    const std::array<int, 3> t_dst{q, 0, out.field.one};
    out.iso = build_projectivity(g, out.model, {0, 1, 2}, t_dst, p);

    std::vector<char> hit(static_cast<size_t>(out.model.n()), 0);
    for (int v : out.iso.point_map) hit[static_cast<size_t>(v)] = 1;
    for (char h : hit)
        if (!h)
            throw error(errc::verification_failure,
                        "coordinatizing map is not onto the model");
    return out;
}

inline nlohmann::ordered_json projectivity_to_json(const projectivity& pr,
                                                   const proj_groupoid& src,
                                                   const proj_groupoid& dst) {
    nlohmann::ordered_json j;
    j["points"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < pr.point_map.size(); ++i)
        j["points"].push_back({src.points[i], dst.points[static_cast<size_t>(pr.point_map[i])]});
    j["scalars"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < pr.scalar_map.size(); ++i)
        j["scalars"].push_back(
            {src.scalars[i], dst.scalars[static_cast<size_t>(pr.scalar_map[i])]});
    return j;
}

inline void write_projectivity(const projectivity& pr, const proj_groupoid& src,
                               const proj_groupoid& dst, std::ostream& os) {
    os << projectivity_to_json(pr, src, dst).dump(2) << "\n";
}

}  // namespace projline
