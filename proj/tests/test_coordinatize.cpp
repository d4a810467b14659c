#include <catch2/catch_amalgamated.hpp>

#include "support/expect.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace projline;

namespace {

projectivity identity_on(const proj_groupoid& g) {
    projectivity pr;
    pr.point_map.resize(static_cast<size_t>(g.n()));
    pr.scalar_map.resize(static_cast<size_t>(g.s()));
    std::iota(pr.point_map.begin(), pr.point_map.end(), 0);
    std::iota(pr.scalar_map.begin(), pr.scalar_map.end(), 0);
    return pr;
}

std::vector<int> identity_scalars(const proj_groupoid& g) {
    std::vector<int> p(static_cast<size_t>(g.s()));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

}  // namespace

TEST_CASE("the scalar group with phi and minus one") {
    const proj_groupoid g5 = generate_groupoid(make_prime_field(5));
    const phi_group p5 = extract_phi_group(g5);
    CHECK(p5.size() == 4);
    CHECK(p5.ids == g5.scalars);
    CHECK(p5.minus1 == g5.scalar_index("4"));
    CHECK(p5.phi[static_cast<size_t>(g5.scalar_index("2"))] == g5.scalar_index("4"));
    CHECK(p5.phi[static_cast<size_t>(g5.scalar_index("3"))] == g5.scalar_index("3"));
    CHECK(p5.inv(g5.scalar_index("2")) == g5.scalar_index("3"));

    const proj_groupoid g2 = generate_groupoid(make_prime_field(2));
    const phi_group p2 = extract_phi_group(g2);
    CHECK(p2.size() == 1);
    CHECK(p2.minus1 == p2.one);

    const proj_groupoid g7 = generate_groupoid(make_prime_field(7));
    const phi_group p7 = extract_phi_group(g7);
    CHECK(p7.size() == 6);
    CHECK(p7.minus1 == g7.scalar_index("6"));
    for (int v = 2; v < 7; ++v)
        CHECK(p7.phi[static_cast<size_t>(g7.scalar_index(std::to_string(v)))] ==
              g7.scalar_index(std::to_string(((1 - v) % 7 + 7) % 7)));
}

TEST_CASE("field reconstruction from the scalar group") {
    SECTION("the mod-5 model gives back the mod-5 tables") {
        const reconstruction rec =
            reconstruct_field(extract_phi_group(generate_groupoid(make_prime_field(5))));
        CHECK(rec.report.clean());
        CHECK(rec.field == make_prime_field(5));
        CHECK(rec.field.plus(2, 1) == 3);  // 2.phi(4.inv(2).1) = 2.phi(2) = 2.4 = 3
        CHECK(rec.field.plus(2, 3) == 0);  // mu = -lambda
    }

    SECTION("the two-element case is trivial") {
        const reconstruction rec =
            reconstruct_field(extract_phi_group(generate_groupoid(make_prime_field(2))));
        CHECK(rec.report.clean());
        CHECK(rec.field == make_prime_field(2));
    }

    SECTION("a four-element scalar group in characteristic two") {
        const reconstruction rec =
            reconstruct_field(extract_phi_group(generate_groupoid(oracle::gf4())));
        CHECK(rec.report.clean());
        CHECK(rec.field == oracle::gf4());
    }

    SECTION("the mod-7 model") {
        const reconstruction rec =
            reconstruct_field(extract_phi_group(generate_groupoid(make_prime_field(7))));
        CHECK(rec.report.clean());
        CHECK(rec.field == make_prime_field(7));
    }

    SECTION("a corrupted involution yields a dirty report, not a throw") {
        const proj_groupoid g = generate_groupoid(make_prime_field(5));
        phi_group pg = extract_phi_group(g);
        pg.phi[static_cast<size_t>(g.scalar_index("2"))] = g.scalar_index("2");
        pg.phi[static_cast<size_t>(g.scalar_index("4"))] = g.scalar_index("4");
        const reconstruction rec = reconstruct_field(pg);
        CHECK_FALSE(rec.report.clean());
        CHECK_FALSE(rec.report.first_witness().empty());
    }

    SECTION("a partial involution is rejected outright") {
        const proj_groupoid g = generate_groupoid(make_prime_field(5));
        phi_group pg = extract_phi_group(g);
        pg.phi[static_cast<size_t>(g.scalar_index("3"))] = -1;
        CHECK(thrown_code([&] { reconstruct_field(pg); }) == errc::malformed_table);
    }

    SECTION("a scalar already named 0 does not collide with the new zero") {
        proj_groupoid g = generate_groupoid(make_prime_field(5));
        g.scalars[static_cast<size_t>(g.scalar_index("3"))] = "0";
        const reconstruction rec = reconstruct_field(extract_phi_group(g));
        CHECK(rec.report.clean());
        CHECK(rec.field.name(rec.field.zero) == "_0");
    }
}

TEST_CASE("building a projectivity from a triple") {
    const proj_groupoid g = generate_groupoid(make_prime_field(5));

    SECTION("the identity triple gives the identity") {
        const projectivity pr =
            build_projectivity(g, g, {0, 1, 2}, {0, 1, 2}, identity_scalars(g));
        CHECK(pr.point_map == identity_on(g).point_map);
        CHECK(pr.scalar_map == identity_on(g).scalar_map);
        CHECK(verify_projectivity(pr, g, g).clean());
    }

    SECTION("swapping the first two base points") {
        const projectivity pr =
            build_projectivity(g, g, {0, 1, 2}, {1, 0, 2}, identity_scalars(g));
        CHECK(pr.point_map == std::vector<int>{1, 0, 2, 5, 4, 3});
        CHECK(verify_projectivity(pr, g, g).clean());
    }

    SECTION("degenerate triples are rejected") {
        CHECK(thrown_code([&] {
                  build_projectivity(g, g, {0, 1, 1}, {0, 1, 2}, identity_scalars(g));
              }) == errc::degenerate_points);
        CHECK(thrown_code([&] {
                  build_projectivity(g, g, {0, 1, 2}, {0, 1, 9}, identity_scalars(g));
              }) == errc::degenerate_points);
    }

    SECTION("a scalar map that ignores multiplication is rejected") {
        // fixes 1 and 2, swaps 3 and 4: then p(2.2) = 3 but p(2).p(2) = 4
        const std::vector<int> p{0, 1, 3, 2};
        CHECK(thrown_code([&] { build_projectivity(g, g, {0, 1, 2}, {0, 1, 2}, p); }) ==
              errc::incompatible_scalar_map);
    }

    SECTION("a collapsing scalar map is rejected") {
        const std::vector<int> p(static_cast<size_t>(g.s()), g.one);
        CHECK(thrown_code([&] { build_projectivity(g, g, {0, 1, 2}, {0, 1, 2}, p); }) ==
              errc::incompatible_scalar_map);
    }

    SECTION("group inversion on the mod-7 scalars is a hom but not phi-compatible") {
        const proj_groupoid h = generate_groupoid(make_prime_field(7));
        std::vector<int> p(static_cast<size_t>(h.s()));
        for (int u = 0; u < h.s(); ++u) p[static_cast<size_t>(u)] = h.sinv(u);
        CHECK(thrown_code([&] { build_projectivity(h, h, {0, 1, 2}, {0, 1, 2}, p); }) ==
              errc::incompatible_scalar_map);
    }
}

TEST_CASE("verification notices post-hoc tampering") {
    const proj_groupoid g = generate_groupoid(make_prime_field(5));

    SECTION("clean on the identity") {
        const validation_report rep = verify_projectivity(identity_on(g), g, g);
        CHECK(rep.clean());
        const proj_groupoid g3 = generate_groupoid(make_prime_field(3));
        CHECK(verify_projectivity(identity_on(g3), g3, g3).clean());
    }

    SECTION("swapping two images off the base triple") {
        projectivity pr = identity_on(g);
        std::swap(pr.point_map[3], pr.point_map[4]);
        const validation_report rep = verify_projectivity(pr, g, g);
        CHECK_FALSE(rep.clean());
        CHECK((!rep.passed("functoriality") || !rep.passed("cross_ratio_preservation")));
    }

    SECTION("a non-injective point map skips the dependent checks") {
        projectivity pr = identity_on(g);
        pr.point_map[3] = pr.point_map[4];
        const validation_report rep = verify_projectivity(pr, g, g);
        CHECK_FALSE(rep.clean());
        CHECK_FALSE(rep.passed("point_map_injective"));
        const check_result* lbl = rep.find("label_equation");
        REQUIRE(lbl != nullptr);
        CHECK_FALSE(lbl->passed);
        CHECK(lbl->witness.find("skipped") != std::string::npos);
    }

    SECTION("wrong sizes stop at totality") {
        projectivity pr = identity_on(g);
        pr.point_map.pop_back();
        const validation_report rep = verify_projectivity(pr, g, g);
        CHECK_FALSE(rep.passed("maps_total"));
        CHECK(rep.checks.size() == 1);
    }
}

TEST_CASE("coordinatization round trip") {
    for (int q : {2, 3, 5, 7}) {
        const field_table f = make_prime_field(q);
        const proj_groupoid g = generate_groupoid(f);
        const coordinatization c = coordinatize(g);
        CHECK(c.field.q() == q);
        CHECK(validate_field(c.field).clean());
        CHECK(field_iso_check(c.field, f).has_value());
        CHECK(verify_projectivity(c.iso, g, c.model).clean());
    }

    const field_table f4 = oracle::gf4();
    const coordinatization c4 = coordinatize(generate_groupoid(f4));
    CHECK(c4.field == f4);
    CHECK(field_iso_check(c4.field, f4).has_value());
}

TEST_CASE("coordinatize rejects broken input") {
    SECTION("structural damage") {
        std::mt19937 rng(5);
        bool found = false;
        for (int attempt = 0; attempt < 20 && !found; ++attempt) {
            proj_groupoid g = generate_groupoid(make_prime_field(5));
            oracle::mutate_well_typed(g, rng);
            if (validate_structure(g).clean()) continue;
            found = true;
            try {
                coordinatize(g);
                FAIL("expected a throw");
            } catch (const error& e) {
                CHECK(e.code() == errc::structurally_invalid);
                REQUIRE(e.report().has_value());
                CHECK_FALSE(e.report()->clean());
            }
        }
        CHECK(found);
    }

    SECTION("axiom failure on a structurally valid table") {
        const search_result res = enumerate_models(4, {});
        const iso_class* broken = nullptr;
        for (const auto& cls : res.classes)
            if (!cls.axiom_pass[0]) {
                broken = &cls;
                break;
            }
        REQUIRE(broken != nullptr);
        CHECK(validate_structure(broken->representative).clean());
        try {
            coordinatize(broken->representative);
            FAIL("expected a throw");
        } catch (const error& e) {
            CHECK(e.code() == errc::axiom_violation);
            REQUIRE(e.report().has_value());
            CHECK_FALSE(e.report()->clean());
        }
    }
}

TEST_CASE("scalar endomorphisms extend to exactly the field endomorphisms") {
    const proj_groupoid g = generate_groupoid(oracle::gf4());
    const phi_group pg = extract_phi_group(g);
    const reconstruction rec = reconstruct_field(pg);
    REQUIRE(rec.report.clean());
    const field_table& f = rec.field;
    const int s = pg.size(), q = f.q();

    // all self-maps of the scalar set that respect the phi-group structure
    std::vector<std::vector<int>> phi_endos;
    std::vector<int> e(static_cast<size_t>(s));
    for (int code = 0; code < s * s * s; ++code) {
        int c = code;
        for (int i = 0; i < s; ++i) {
            e[static_cast<size_t>(i)] = c % s;
            c /= s;
        }
        bool ok = e[static_cast<size_t>(pg.one)] == pg.one &&
                  e[static_cast<size_t>(pg.minus1)] == pg.minus1;
        for (int x = 0; x < s && ok; ++x)
            for (int y = 0; y < s && ok; ++y)
                ok = e[static_cast<size_t>(pg.times(x, y))] ==
                     pg.times(e[static_cast<size_t>(x)], e[static_cast<size_t>(y)]);
        for (int x = 0; x < s && ok; ++x) {
            if (x == pg.one) continue;
            ok = e[static_cast<size_t>(x)] != pg.one &&
                 e[static_cast<size_t>(pg.phi[static_cast<size_t>(x)])] ==
                     pg.phi[static_cast<size_t>(e[static_cast<size_t>(x)])];
        }
        if (ok) phi_endos.push_back(e);
    }
    CHECK(phi_endos.size() == 2);

    // extend each by 0 -> 0; element i of the field is scalar i-1
    std::set<std::vector<int>> extended;
    for (const auto& en : phi_endos) {
        std::vector<int> sigma(static_cast<size_t>(q), 0);
        for (int i = 1; i < q; ++i) sigma[static_cast<size_t>(i)] = en[static_cast<size_t>(i - 1)] + 1;
        extended.insert(sigma);
    }

    // all ring endomorphisms of the reconstructed field, by brute force
    std::set<std::vector<int>> ring_endos;
    std::vector<int> sg(static_cast<size_t>(q));
    for (int code = 0; code < q * q * q * q; ++code) {
        int c = code;
        for (int i = 0; i < q; ++i) {
            sg[static_cast<size_t>(i)] = c % q;
            c /= q;
        }
        bool ok = sg[static_cast<size_t>(f.zero)] == f.zero && sg[static_cast<size_t>(f.one)] == f.one;
        for (int x = 0; x < q && ok; ++x)
            for (int y = 0; y < q && ok; ++y)
                ok = sg[static_cast<size_t>(f.plus(x, y))] ==
                         f.plus(sg[static_cast<size_t>(x)], sg[static_cast<size_t>(y)]) &&
                     sg[static_cast<size_t>(f.times(x, y))] ==
                         f.times(sg[static_cast<size_t>(x)], sg[static_cast<size_t>(y)]);
        if (ok) ring_endos.insert(sg);
    }
    CHECK(ring_endos.size() == 2);
    CHECK(extended == ring_endos);

    // one of the two is squaring, the other the identity
    std::vector<int> frob(static_cast<size_t>(q));
    for (int x = 0; x < q; ++x) frob[static_cast<size_t>(x)] = f.times(x, x);
    CHECK(ring_endos.count(frob) == 1);
}

TEST_CASE("projectivity serialization") {
    const proj_groupoid g = generate_groupoid(make_prime_field(3));
    const projectivity pr = identity_on(g);

    const auto j = projectivity_to_json(pr, g, g);
    REQUIRE(j.contains("points"));
    REQUIRE(j.contains("scalars"));
    CHECK(j["points"].size() == 4);
    CHECK(j["points"][0][0] == "(0:1)");
    CHECK(j["points"][0][1] == "(0:1)");
    CHECK(j["scalars"].size() == 2);

    std::ostringstream os1, os2;
    write_projectivity(pr, g, g, os1);
    write_projectivity(pr, g, g, os2);
    CHECK(os1.str() == os2.str());
    CHECK(os1.str().find("\"points\"") != std::string::npos);
}
