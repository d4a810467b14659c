#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "projline/coordinatize.hpp"
#include "projline/groupoid.hpp"
#include "projline/rapport.hpp"
#include "projline/report.hpp"

namespace projline {
namespace detail {

inline std::vector<int> element_orders(const std::vector<int>& mul, int one, int s) {
    std::vector<int> ord(static_cast<size_t>(s));
    for (int a = 0; a < s; ++a) {
        int x = a, k = 1;
        while (x != one) {
            x = mul[static_cast<size_t>(x) * s + a];
            ++k;
        }
        ord[static_cast<size_t>(a)] = k;
    }
    return ord;
}

// All group isomorphisms between two multiplication tables of equal size,
// as index maps. Backtracking with element-order matching and incremental
// product consistency; sizes here stay small so this is plenty.
inline std::vector<std::vector<int>> group_isomorphisms(const std::vector<int>& mul_a, int one_a,
                                                        const std::vector<int>& mul_b, int one_b,
                                                        int s) {
    std::vector<std::vector<int>> found;
    const std::vector<int> ord_a = element_orders(mul_a, one_a, s);
    const std::vector<int> ord_b = element_orders(mul_b, one_b, s);
    std::vector<int> img(static_cast<size_t>(s), -1), pre(static_cast<size_t>(s), -1);
    img[static_cast<size_t>(one_a)] = one_b;
    pre[static_cast<size_t>(one_b)] = one_a;
    std::vector<int> todo;
    for (int a = 0; a < s; ++a)
        if (a != one_a) todo.push_back(a);

    auto consistent = [&](int a) {
        for (int x = 0; x < s; ++x) {
            if (img[static_cast<size_t>(x)] < 0) continue;
            const int pairs[2][2] = {{a, x}, {x, a}};
            for (const auto& pq : pairs) {
                const int m = mul_a[static_cast<size_t>(pq[0]) * s + pq[1]];
                const int t = mul_b[static_cast<size_t>(img[static_cast<size_t>(pq[0])]) * s +
                                    img[static_cast<size_t>(pq[1])]];
                if (img[static_cast<size_t>(m)] >= 0) {
                    if (img[static_cast<size_t>(m)] != t) return false;
                } else if (pre[static_cast<size_t>(t)] >= 0) {
                    return false;
                }
            }
        }
        return true;
    };

    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == todo.size()) {
            found.push_back(img);
            return;
        }
        const int a = todo[k];
        for (int b = 0; b < s; ++b) {
            if (pre[static_cast<size_t>(b)] >= 0) continue;
            if (ord_a[static_cast<size_t>(a)] != ord_b[static_cast<size_t>(b)]) continue;
            img[static_cast<size_t>(a)] = b;
            pre[static_cast<size_t>(b)] = a;
            if (consistent(a)) rec(k + 1);
            img[static_cast<size_t>(a)] = -1;
            pre[static_cast<size_t>(b)] = -1;
        }
    };
    rec(0);
    return found;
}

inline std::vector<std::string> std_point_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('A' + i)));
    return names;
}

inline std::vector<std::string> cyclic_scalar_names(int s) {
    std::vector<std::string> ids{"1"};
    for (int i = 1; i < s; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i - 1)));
    return ids;
}

}  // namespace detail

// Lexicographically least relabeling of a groupoid over all point
// permutations and scalar-group automorphisms. Two groupoids are isomorphic
// exactly when their canonical tables coincide.
struct canonical_result {
    proj_groupoid canon;
    projectivity relabel;  // from the input onto the canonical form
};

inline canonical_result canonical_form(const proj_groupoid& g) {
    const int n = g.n(), s = g.s(), od = g.out_deg(), M = g.morphism_count();
    const auto autos =
        detail::group_isomorphisms(g.scalar_mul, g.one, g.scalar_mul, g.one, s);

    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> fid(static_cast<size_t>(M));
    std::vector<int> cand_smul(static_cast<size_t>(s) * s);
    std::vector<int> cand_tab(static_cast<size_t>(M) * od);

    bool have = false;
    std::vector<int> best_smul, best_tab, best_pi, best_sg;
    do {
        for (const auto& sg : autos) {
            for (int u = 0; u < s; ++u)
                for (int v = 0; v < s; ++v)
                    cand_smul[static_cast<size_t>(sg[static_cast<size_t>(u)]) * s +
                              sg[static_cast<size_t>(v)]] =
                        sg[static_cast<size_t>(g.smul(u, v))];
            for (int id = 0; id < M; ++id) {
                const morphism m = g.morphism_at(id);
                fid[static_cast<size_t>(id)] =
                    g.morphism_id({perm[static_cast<size_t>(m.src)],
                                   perm[static_cast<size_t>(m.dst)],
                                   m.endo() ? sg[static_cast<size_t>(m.label)]
                                            : perm[static_cast<size_t>(m.label)]});
            }
            for (int id1 = 0; id1 < M; ++id1) {
                const int d1 = g.morphism_at(id1).dst;
                for (int r2 = 0; r2 < od; ++r2) {
                    const int id2 = d1 * od + r2;
                    cand_tab[static_cast<size_t>(fid[static_cast<size_t>(id1)]) * od +
                             fid[static_cast<size_t>(id2)] % od] =
                        fid[static_cast<size_t>(
                            g.compose_tab[static_cast<size_t>(id1) * od + r2])];
                }
            }
            if (!have || cand_smul < best_smul ||
                (cand_smul == best_smul && cand_tab < best_tab)) {
                have = true;
                best_smul = cand_smul;
                best_tab = cand_tab;
                best_pi = perm;
                best_sg = sg;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    canonical_result out;
    out.canon.points = g.points;
    out.canon.scalars = g.scalars;
    out.canon.one = g.one;  // automorphisms fix the identity
    out.canon.scalar_mul = std::move(best_smul);
    out.canon.compose_tab = std::move(best_tab);
    out.relabel.point_map = std::move(best_pi);
    out.relabel.scalar_map = std::move(best_sg);
    return out;
}

// Exhaustive isomorphism test. Returns a witness map when one exists.
inline std::optional<projectivity> iso_check(const proj_groupoid& a, const proj_groupoid& b) {
    if (a.n() != b.n() || a.s() != b.s()) return std::nullopt;
    const int n = a.n(), s = a.s(), od = a.out_deg(), M = a.morphism_count();
    const auto isos = detail::group_isomorphisms(a.scalar_mul, a.one, b.scalar_mul, b.one, s);
    if (isos.empty()) return std::nullopt;

    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> fid(static_cast<size_t>(M));
    do {
        for (const auto& sg : isos) {
            for (int id = 0; id < M; ++id) {
                const morphism m = a.morphism_at(id);
                fid[static_cast<size_t>(id)] =
                    b.morphism_id({perm[static_cast<size_t>(m.src)],
                                   perm[static_cast<size_t>(m.dst)],
                                   m.endo() ? sg[static_cast<size_t>(m.label)]
                                            : perm[static_cast<size_t>(m.label)]});
            }
            bool ok = true;
            for (int id1 = 0; id1 < M && ok; ++id1) {
                const int d1 = a.morphism_at(id1).dst;
                for (int r2 = 0; r2 < od; ++r2) {
                    const int id2 = d1 * od + r2;
                    if (b.compose_ids(fid[static_cast<size_t>(id1)],
                                      fid[static_cast<size_t>(id2)]) !=
                        fid[static_cast<size_t>(
                            a.compose_tab[static_cast<size_t>(id1) * od + r2])]) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return projectivity{perm, sg};
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

// One isomorphism class of enumerated structures.
struct iso_class {
    proj_groupoid representative;  // canonical form
    long long size = 0;            // labeled structures in the class
    std::array<bool, 4> axiom_pass{};
    std::string minus_one_id;      // "-" when -1 is not well-defined
    projectivity first_witness;    // relabeling of the first member found onto the representative
};

struct search_result {
    int point_count = 0;
    std::vector<int> required_axioms;
    long long structure_count = 0;  // labeled structures passing the required axioms
    std::vector<iso_class> classes;
};

// Enumerates every structurally valid composition table on n points up to
// nothing (each labeled structure counts once), keeps those passing the
// required axioms, and partitions the survivors into isomorphism classes.
//
// The enumeration works in additive coordinates: fixing, for each ordered
// pair (A,B), the bijection between the labels outside {A,B} and the scalar
// group Z_s carried by the arrows A -> B. Composition adds coordinates, so
// a family of such charts determines a valid table, and conversely every
// valid table yields exactly one family once the charts out of the first
// point are anchored at their least label. Axioms 1, 2 and 4 are linear
// conditions on chart values and prune the assignment tree; axiom 3 is
// settled on completed tables.
inline search_result enumerate_models(int n, const std::vector<int>& require_axioms) {
    if (n < 3 || n > 5)
        throw error(errc::size_out_of_range, "point count must be between 3 and 5");
    std::set<int> req(require_axioms.begin(), require_axioms.end());
    for (int a : req)
        if (a < 1 || a > 4) throw error(errc::malformed_table, "axiom ids must lie in 1..4");
    if (n == 5 && !(req.count(1) && req.count(2)))
        throw error(errc::infeasible_search,
                    "five-point enumeration needs axioms 1 and 2 among the requirements; "
                    "without them the chart tree has too many leaves to classify");

    const int s = n - 2;
    const bool tied = req.count(1) > 0;  // axiom 1 ties the chart of (B,A) to that of (A,B)

    std::vector<std::pair<int, int>> slots;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            slots.emplace_back(u, v);
            if (!tied) slots.emplace_back(v, u);
        }

    // candidate charts per slot: coordinate values for the labels outside the
    // pair, in label order; charts out of point 0 are anchored at their least
    // label to kill the per-point gauge freedom
    std::vector<std::vector<std::vector<int>>> cands(slots.size());
    for (size_t k = 0; k < slots.size(); ++k) {
        const bool anchored = slots[k].first == 0;
        std::vector<int> c(static_cast<size_t>(s));
        std::iota(c.begin(), c.end(), 0);
        do {
            if (anchored && c[0] != 0) continue;
            cands[k].push_back(c);
        } while (std::next_permutation(c.begin(), c.end()));
    }

    std::vector<std::vector<int>> chart(static_cast<size_t>(n) * n,
                                        std::vector<int>(static_cast<size_t>(n), -1));
    std::vector<char> assigned(static_cast<size_t>(n) * n, 0);
    auto chx = [&](int a, int b, int c) { return chart[static_cast<size_t>(a) * n + b][static_cast<size_t>(c)]; };
    auto asg = [&](int a, int b) { return assigned[static_cast<size_t>(a) * n + b] != 0; };

    // all instances of the linear axioms whose charts are currently assigned
    auto linear_ok = [&]() {
        if (req.count(1)) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b || !asg(a, b) || !asg(b, a)) continue;
                    for (int c = 0; c < n; ++c) {
                        if (c == a || c == b) continue;
                        if ((chx(a, b, c) + chx(b, a, c)) % s != 0) return false;
                    }
                    for (int d = 0; d < n; ++d) {
                        if (d == a || d == b || !asg(b, d) || !asg(a, d)) continue;
                        for (int c = 0; c < n; ++c) {
                            if (c == a || c == b || c == d) continue;
                            if ((chx(a, b, c) + chx(b, d, c)) % s != chx(a, d, c)) return false;
                        }
                    }
                }
        }
        if (req.count(2)) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b || !asg(a, b) || !asg(b, a)) continue;
                    for (int c = 0; c < n; ++c)
                        for (int d = 0; d < n; ++d) {
                            if (c == d || c == a || c == b || d == a || d == b) continue;
                            if (!asg(c, d) || !asg(d, c)) continue;
                            if ((chx(a, b, c) + chx(b, a, d)) % s !=
                                (chx(c, d, a) + chx(d, c, b)) % s)
                                return false;
                        }
                }
        }
        if (req.count(4)) {
            auto tau = [&](int a, int b, int c) {
                return (chx(a, b, c) + chx(b, c, a) + chx(c, a, b)) % s;
            };
            auto tau_ready = [&](int a, int b, int c) {
                return asg(a, b) && asg(b, c) && asg(c, a);
            };
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    if (a == b) continue;
                    for (int c = 0; c < n; ++c) {
                        if (c == a || c == b || !tau_ready(a, b, c)) continue;
                        for (int d = c + 1; d < n; ++d) {
                            if (d == a || d == b || !tau_ready(a, b, d)) continue;
                            if (tau(a, b, c) != tau(a, b, d)) return false;
                        }
                    }
                }
        }
        return true;
    };

    search_result res;
    res.point_count = n;
    res.required_axioms.assign(req.begin(), req.end());

    proj_groupoid proto;
    proto.points = detail::std_point_names(n);
    proto.scalars = detail::cyclic_scalar_names(s);
    proto.one = 0;
    proto.scalar_mul.assign(static_cast<size_t>(s) * s, 0);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            proto.scalar_mul[static_cast<size_t>(i) * s + j] = (i + j) % s;
    const int od = proto.out_deg(), M = proto.morphism_count();

    std::map<std::pair<std::vector<int>, std::vector<int>>, size_t> class_of;
    std::vector<int> lab_of(static_cast<size_t>(n) * n * s, -1);

    auto leaf = [&]() {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                for (int c = 0; c < n; ++c) {
                    if (c == a || c == b) continue;
                    lab_of[(static_cast<size_t>(a) * n + b) * s + chx(a, b, c)] = c;
                }
            }
        proj_groupoid g = proto;
        g.compose_tab.assign(static_cast<size_t>(M) * od, -1);
        for (int id1 = 0; id1 < M; ++id1) {
            const morphism m1 = g.morphism_at(id1);
            const int c1 = m1.endo() ? m1.label : chx(m1.src, m1.dst, m1.label);
            for (int r2 = 0; r2 < od; ++r2) {
                const morphism m2 = g.morphism_at(m1.dst * od + r2);
                const int c2 = m2.endo() ? m2.label : chx(m2.src, m2.dst, m2.label);
                const int tot = (c1 + c2) % s;
                const morphism m12 =
                    (m1.src == m2.dst)
                        ? morphism{m1.src, m1.src, tot}
                        : morphism{m1.src, m2.dst,
                                   lab_of[(static_cast<size_t>(m1.src) * n + m2.dst) * s + tot]};
                g.compose_tab[static_cast<size_t>(id1) * od + r2] = g.morphism_id(m12);
            }
        }

        const validation_report rep = check_axioms(g);
        std::array<bool, 4> flags{rep.passed("axiom1"), rep.passed("axiom2"),
                                  rep.passed("axiom3"), rep.passed("axiom4")};
        for (int a : req)
            if (!flags[static_cast<size_t>(a - 1)]) return;
        ++res.structure_count;

        canonical_result cf = canonical_form(g);
        auto key = std::make_pair(cf.canon.scalar_mul, cf.canon.compose_tab);
        auto it = class_of.find(key);
        if (it == class_of.end()) {
            iso_class cls;
            cls.size = 1;
            cls.axiom_pass = flags;
            try {
                cls.minus_one_id = cf.canon.scalars[static_cast<size_t>(minus_one(cf.canon))];
            } catch (const error&) {
                cls.minus_one_id = "-";
            }
            cls.first_witness = cf.relabel;
            cls.representative = std::move(cf.canon);
            class_of.emplace(std::move(key), res.classes.size());
            res.classes.push_back(std::move(cls));
        } else {
            ++res.classes[it->second].size;
        }
    };

    std::function<void(size_t)> dfs = [&](size_t k) {
        if (k == slots.size()) {
            leaf();
            return;
        }
        const auto [u, v] = slots[k];
        std::vector<int> labels;
        for (int c = 0; c < n; ++c)
            if (c != u && c != v) labels.push_back(c);
        for (const auto& cand : cands[k]) {
            for (int i = 0; i < s; ++i) {
                chart[static_cast<size_t>(u) * n + v][static_cast<size_t>(labels[static_cast<size_t>(i)])] =
                    cand[static_cast<size_t>(i)];
                if (tied)
                    chart[static_cast<size_t>(v) * n + u][static_cast<size_t>(labels[static_cast<size_t>(i)])] =
                        (s - cand[static_cast<size_t>(i)]) % s;
            }
            assigned[static_cast<size_t>(u) * n + v] = 1;
            if (tied) assigned[static_cast<size_t>(v) * n + u] = 1;
            if (linear_ok()) dfs(k + 1);
            assigned[static_cast<size_t>(u) * n + v] = 0;
            if (tied) assigned[static_cast<size_t>(v) * n + u] = 0;
        }
    };
    dfs(0);

    // keep class order independent of discovery order
    std::vector<size_t> order(res.classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        const auto& a = res.classes[x];
        const auto& b = res.classes[y];
        if (a.representative.scalar_mul != b.representative.scalar_mul)
            return a.representative.scalar_mul < b.representative.scalar_mul;
        return a.representative.compose_tab < b.representative.compose_tab;
    });
    std::vector<iso_class> sorted;
    sorted.reserve(res.classes.size());
    for (size_t i : order) sorted.push_back(std::move(res.classes[i]));
    res.classes = std::move(sorted);
    return res;
}

inline void write_search_result(const search_result& res, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw error(errc::io_error, "cannot create directory '" + dir + "': " + ec.message());

    nlohmann::ordered_json j;
    j["points"] = res.point_count;
    j["required_axioms"] = res.required_axioms;
    j["structure_count"] = res.structure_count;
    j["classes"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < res.classes.size(); ++i) {
        const auto& cls = res.classes[i];
        const std::string fname = "model_" + std::to_string(i) + ".groupoid";
        {
            std::ofstream os(fs::path(dir) / fname);
            if (!os) throw error(errc::io_error, "cannot open '" + fname + "' for writing");
            write_groupoid(cls.representative, os);
            if (!os) throw error(errc::io_error, "failed writing '" + fname + "'");
        }
        nlohmann::ordered_json cj;
        cj["file"] = fname;
        cj["size"] = cls.size;
        cj["minus_one"] = cls.minus_one_id;
        cj["axioms"] = {{"axiom1", cls.axiom_pass[0]},
                        {"axiom2", cls.axiom_pass[1]},
                        {"axiom3", cls.axiom_pass[2]},
                        {"axiom4", cls.axiom_pass[3]}};
        j["classes"].push_back(cj);
    }
    std::ofstream os(fs::path(dir) / "summary.json");
    if (!os) throw error(errc::io_error, "cannot open summary.json for writing");
    os << j.dump(2) << "\n";
    if (!os) throw error(errc::io_error, "failed writing summary.json");
}

}  // namespace projline
