#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "projline/coord.hpp"
#include "projline/coordinatize.hpp"
#include "projline/field.hpp"
#include "projline/groupoid.hpp"
#include "projline/rapport.hpp"
#include "projline/report.hpp"
#include "projline/search.hpp"

namespace projline {
namespace cli_detail {

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

inline field_table load_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw error(errc::io_error, "cannot open '" + path + "'");
    return read_field(is);
}

inline proj_groupoid load_groupoid(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw error(errc::io_error, "cannot open '" + path + "'");
    return read_groupoid(is);
}

inline std::vector<int> resolve_points(const proj_groupoid& g, const std::string& csv,
                                       size_t expected, const char* what) {
    const std::vector<std::string> names = split_csv(csv);
    if (names.size() != expected)
        throw error(errc::malformed_groupoid,
                    std::string(what) + " needs " + std::to_string(expected) + " point names");
    std::vector<int> idx;
    for (const auto& nm : names) idx.push_back(g.point_index(nm));
    return idx;
}

struct painter {
    bool color;
    std::string pass() const { return color ? "\033[32mPASS\033[0m" : "PASS"; }
    std::string fail() const { return color ? "\033[31mFAIL\033[0m" : "FAIL"; }
};

inline bool print_report(std::ostream& out, const validation_report& rep, const painter& p) {
    for (const auto& c : rep.checks) {
        out << "CHECK " << c.name << " " << (c.passed ? p.pass() : p.fail());
        if (!c.passed && !c.witness.empty()) out << " " << c.witness;
        out << "\n";
    }
    return rep.clean();
}

}  // namespace cli_detail

// Dispatches one invocation. Returns 0 on success, 1 on a failed check or
// negative verdict (report lines go to `out`), 2 on usage or I/O problems.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err,
                   bool color = false) {
    using cli_detail::load_field;
    using cli_detail::load_groupoid;
    const cli_detail::painter paint{color};

    CLI::App app{"projective-line groupoid toolkit"};
    app.name("projline");
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate the coordinate model over a finite field");
    std::string field_spec, gen_out;
    gen->add_option("--field", field_spec, "prime:<p> or file:<path>")->required();
    gen->add_option("-o,--output", gen_out, "groupoid output path (default: stdout)");

    auto* chk = app.add_subcommand("check", "run structural and axiom checks on a groupoid");
    std::string chk_in;
    chk->add_option("input", chk_in, "groupoid file")->required();

    auto* coo =
        app.add_subcommand("coordinatize", "reconstruct the field and the coordinatizing map");
    std::string coo_in, coo_out, coo_proj;
    coo->add_option("input", coo_in, "groupoid file")->required();
    coo->add_option("-o,--output", coo_out, "field output path (default: stdout)");
    coo->add_option("--proj", coo_proj, "projectivity output path");

    auto* sea = app.add_subcommand("search", "enumerate small structures and classify them");
    int sea_points = 0;
    std::string sea_axioms = "1,2,3,4", sea_out;
    bool sea_distinct = false;
    sea->add_option("--points", sea_points, "number of points (3..5)")->required();
    sea->add_option("--axioms", sea_axioms, "comma-separated axiom ids to require (default 1,2,3,4)");
    sea->add_flag("--require-minus-one-distinct", sea_distinct,
                  "keep only classes where -1 is defined and differs from 1");
    sea->add_option("-o,--output", sea_out, "output directory for summary.json and models");

    auto* rap = app.add_subcommand("rapport", "cross ratio and tri-rapport queries");
    std::string rap_in, rap_cross, rap_tri, rap_twelve, rap_harm, rap_mu;
    std::vector<std::string> rap_triple;
    bool rap_fourth = false;
    rap->add_option("input", rap_in, "groupoid file")->required();
    rap->add_option("--cross", rap_cross, "A,B,C,D");
    rap->add_option("--tri", rap_tri, "A,B,C,X,Y,Z");
    rap->add_option("--twelve", rap_twelve, "A,B,C,D");
    rap->add_option("--harmonic", rap_harm, "A,B,C");
    rap->add_flag("--fourth", rap_fourth, "solve (A,B;C,X) = mu for X");
    rap->add_option("--mu", rap_mu, "scalar name for --fourth");
    rap->add_option("--triple", rap_triple, "three point names for --fourth")->expected(3);

    auto* iso = app.add_subcommand("iso", "isomorphism test between two fields or two groupoids");
    std::string iso_a, iso_b;
    iso->add_option("first", iso_a)->required();
    iso->add_option("second", iso_b)->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            field_table f;
            if (field_spec.rfind("prime:", 0) == 0) {
                f = make_prime_field(std::stoi(field_spec.substr(6)));
            } else if (field_spec.rfind("file:", 0) == 0) {
                f = load_field(field_spec.substr(5));
            } else {
                err << "projline: --field expects prime:<p> or file:<path>\n";
                return 2;
            }
            const proj_groupoid g = generate_groupoid(f);
            if (gen_out.empty()) {
                write_groupoid(g, out);
            } else {
                std::ofstream os(gen_out);
                if (!os) throw error(errc::io_error, "cannot open '" + gen_out + "'");
                write_groupoid(g, os);
                if (!os) throw error(errc::io_error, "failed writing '" + gen_out + "'");
                out << "wrote " << gen_out << " (" << g.n() << " points, " << g.morphism_count()
                    << " morphisms)\n";
            }
            return 0;
        }

        if (chk->parsed()) {
            const proj_groupoid g = load_groupoid(chk_in);
            const validation_report structural = validate_structure(g);
            bool ok = cli_detail::print_report(out, structural, paint);
            if (ok) ok = cli_detail::print_report(out, check_axioms(g), paint);
            return ok ? 0 : 1;
        }

        if (coo->parsed()) {
            const proj_groupoid g = load_groupoid(coo_in);
            const coordinatization c = coordinatize(g);
            out << "reconstructed field: " << c.field.q() << " elements\n";
            if (coo_out.empty()) {
                write_field(c.field, out);
            } else {
                std::ofstream os(coo_out);
                if (!os) throw error(errc::io_error, "cannot open '" + coo_out + "'");
                write_field(c.field, os);
                if (!os) throw error(errc::io_error, "failed writing '" + coo_out + "'");
                out << "wrote " << coo_out << "\n";
            }
            if (!coo_proj.empty()) {
                std::ofstream os(coo_proj);
                if (!os) throw error(errc::io_error, "cannot open '" + coo_proj + "'");
                write_projectivity(c.iso, g, c.model, os);
                if (!os) throw error(errc::io_error, "failed writing '" + coo_proj + "'");
                out << "wrote " << coo_proj << "\n";
            }
            return 0;
        }

        if (sea->parsed()) {
            std::vector<int> ax;
            if (!sea_axioms.empty())
                for (const auto& part : cli_detail::split_csv(sea_axioms)) {
                    if (part.empty()) continue;
                    ax.push_back(std::stoi(part));
                }
            search_result res = enumerate_models(sea_points, ax);
            if (sea_distinct) {
                std::vector<iso_class> kept;
                for (auto& cls : res.classes)
                    if (cls.minus_one_id != "1" && cls.minus_one_id != "-")
                        kept.push_back(std::move(cls));
                res.classes = std::move(kept);
            }
            out << "structures: " << res.structure_count << "\n";
            out << "classes: " << res.classes.size() << "\n";
            for (size_t i = 0; i < res.classes.size(); ++i) {
                const auto& cls = res.classes[i];
                out << "class " << i << ": size " << cls.size << ", -1 = " << cls.minus_one_id
                    << ", axioms";
                for (int a = 0; a < 4; ++a)
                    out << " " << (a + 1) << (cls.axiom_pass[static_cast<size_t>(a)] ? "+" : "-");
                out << "\n";
            }
            if (!sea_out.empty()) {
                write_search_result(res, sea_out);
                out << "wrote " << sea_out << "/summary.json and " << res.classes.size()
                    << " model files\n";
            }
            return 0;
        }

        if (rap->parsed()) {
            const proj_groupoid g = load_groupoid(rap_in);
            const int queries = (!rap_cross.empty() ? 1 : 0) + (!rap_tri.empty() ? 1 : 0) +
                                (!rap_twelve.empty() ? 1 : 0) + (!rap_harm.empty() ? 1 : 0) +
                                (rap_fourth ? 1 : 0);
            if (queries != 1) {
                err << "projline: rapport needs exactly one of --cross, --tri, --twelve, "
                       "--harmonic, --fourth\n";
                return 2;
            }
            if (!rap_cross.empty()) {
                const auto p = cli_detail::resolve_points(g, rap_cross, 4, "--cross");
                const int v = cross_ratio(g, p[0], p[1], p[2], p[3]);
                out << "cross(" << rap_cross << ") = " << g.scalars[static_cast<size_t>(v)]
                    << "\n";
            } else if (!rap_tri.empty()) {
                const auto p = cli_detail::resolve_points(g, rap_tri, 6, "--tri");
                const int v = tri_rapport(g, p[0], p[1], p[2], p[3], p[4], p[5]);
                out << "tri(" << rap_tri << ") = " << g.scalars[static_cast<size_t>(v)] << "\n";
            } else if (!rap_twelve.empty()) {
                const auto p = cli_detail::resolve_points(g, rap_twelve, 4, "--twelve");
                for (const auto& e : twelve_scalars(g, p[0], p[1], p[2], p[3])) {
                    out << e.role << ": tri(";
                    for (int i = 0; i < 6; ++i)
                        out << (i ? (i == 3 ? ";" : ",") : "")
                            << g.points[static_cast<size_t>(e.tri[static_cast<size_t>(i)])];
                    out << ") = " << g.scalars[static_cast<size_t>(e.value)] << "\n";
                }
            } else if (!rap_harm.empty()) {
                const auto p = cli_detail::resolve_points(g, rap_harm, 3, "--harmonic");
                const int d = harmonic_conjugate(g, p[0], p[1], p[2]);
                out << "harmonic(" << rap_harm << ") = " << g.points[static_cast<size_t>(d)]
                    << "\n";
            } else {
                if (rap_mu.empty() || rap_triple.size() != 3) {
                    err << "projline: --fourth needs --mu and --triple A B C\n";
                    return 2;
                }
                const int mu = g.scalar_index(rap_mu);
                const int a = g.point_index(rap_triple[0]);
                const int b = g.point_index(rap_triple[1]);
                const int c = g.point_index(rap_triple[2]);
                const int x = solve_fourth_point(g, mu, a, b, c);
                out << "fourth(mu=" << rap_mu << "; " << rap_triple[0] << "," << rap_triple[1]
                    << "," << rap_triple[2] << ") = " << g.points[static_cast<size_t>(x)] << "\n";
            }
            return 0;
        }

        if (iso->parsed()) {
            auto kind = [](const std::string& path) {
                std::ifstream is(path);
                if (!is) throw error(errc::io_error, "cannot open '" + path + "'");
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(is);
                } catch (const nlohmann::json::parse_error& e) {
                    throw error(errc::parse_error, "'" + path + "': " + e.what());
                }
                if (j.contains("compose")) return 'g';
                if (j.contains("add")) return 'f';
                throw error(errc::parse_error, "'" + path + "' is neither a field nor a groupoid");
            };
            const char ka = kind(iso_a), kb = kind(iso_b);
            if (ka != kb) {
                err << "projline: cannot compare a field with a groupoid\n";
                return 2;
            }
            if (ka == 'f') {
                const field_table f1 = load_field(iso_a), f2 = load_field(iso_b);
                const auto m = field_iso_check(f1, f2);
                if (!m) {
                    out << "not isomorphic\n";
                    return 1;
                }
                out << "isomorphic\n";
                for (size_t i = 0; i < m->map.size(); ++i)
                    out << f1.elements[i] << " -> "
                        << f2.elements[static_cast<size_t>(m->map[i])] << "\n";
                return 0;
            }
            const proj_groupoid g1 = load_groupoid(iso_a), g2 = load_groupoid(iso_b);
            const auto m = iso_check(g1, g2);
            if (!m) {
                out << "not isomorphic\n";
                return 1;
            }
            out << "isomorphic\n";
            for (size_t i = 0; i < m->point_map.size(); ++i)
                out << g1.points[i] << " -> "
                    << g2.points[static_cast<size_t>(m->point_map[i])] << "\n";
            for (size_t i = 0; i < m->scalar_map.size(); ++i)
                out << g1.scalars[i] << " -> "
                    << g2.scalars[static_cast<size_t>(m->scalar_map[i])] << "\n";
            return 0;
        }
    } catch (const error& e) {
        if (e.report()) cli_detail::print_report(out, *e.report(), paint);
        err << "projline: error: " << e.what() << " [" << errc_name(e.code()) << "]\n";
        return (e.code() == errc::io_error || e.code() == errc::parse_error) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "projline: error: " << e.what() << "\n";
        return 1;
    }
    return 2;  // unreachable: require_subcommand guarantees a branch
}

}  // namespace projline
