#include <catch2/catch_amalgamated.hpp>

#include "support/expect.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

#include <projline/cli.hpp>

#include <fstream>
#include <sstream>

using namespace projline;

namespace {

struct cli_run {
    int rc;
    std::string out;
    std::string err;
};

cli_run run(std::vector<std::string> args, bool color = false) {
    std::ostringstream out, err;
    const int rc = run_cli(std::move(args), out, err, color);
    return {rc, out.str(), err.str()};
}

int count_lines(const std::string& s, const std::string& needle) {
    int k = 0;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line))
        if (line.find(needle) != std::string::npos) ++k;
    return k;
}

}  // namespace

TEST_CASE("gen writes the coordinate model") {
    const temp_dir dir;
    const std::string path = dir.file("l5.groupoid");

    const cli_run r = run({"gen", "--field", "prime:5", "-o", path});
    CHECK(r.rc == 0);
    CHECK(r.out.find("wrote " + path) != std::string::npos);
    CHECK(r.out.find("6 points") != std::string::npos);

    const proj_groupoid g = read_groupoid(path);
    CHECK(g == generate_groupoid(make_prime_field(5)));

    // same invocation, byte-identical file
    const std::string path2 = dir.file("again.groupoid");
    run({"gen", "--field", "prime:5", "-o", path2});
    std::ifstream a(path), b(path2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("gen accepts a field file and rejects bad specs") {
    const temp_dir dir;
    const std::string fpath = dir.file("f4.field");
    write_field(oracle::gf4(), fpath);

    const cli_run r = run({"gen", "--field", "file:" + fpath});
    CHECK(r.rc == 0);
    CHECK(r.out.find("\"(1:0)\"") != std::string::npos);  // stdout model, 5 points

    CHECK(run({"gen", "--field", "gf:4"}).rc == 2);
    CHECK(run({"gen", "--field", "prime:6"}).rc == 1);  // composite modulus, reported
    CHECK(run({"gen", "--field", "file:" + dir.file("missing.field")}).rc == 2);
    CHECK(run({"gen"}).rc == 2);  // --field is required
}

TEST_CASE("check passes clean models and pins failures") {
    const temp_dir dir;
    const std::string path = dir.file("l3.groupoid");
    REQUIRE(run({"gen", "--field", "prime:3", "-o", path}).rc == 0);

    const cli_run ok = run({"check", path});
    CHECK(ok.rc == 0);
    CHECK(count_lines(ok.out, " PASS") == 13);  // 9 structural + 4 axioms
    CHECK(ok.out.find("CHECK axiom1 PASS") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    // redirect one composite label inside its hom-set, textually
    std::ifstream is(path);
    auto j = nlohmann::json::parse(is);
    is.close();
    for (auto& entry : j["compose"]) {
        auto& target = entry[2];
        if (target[0] == target[1]) continue;  // endo: label is a scalar
        const std::string src = target[0], dst = target[1], lbl = target[2];
        for (const auto& cand : j["points"]) {
            const std::string name = cand;
            if (name != src && name != dst && name != lbl) {
                target[2] = name;
                break;
            }
        }
        break;
    }
    const std::string bad = dir.file("bad.groupoid");
    std::ofstream os(bad);
    os << j.dump(2) << "\n";
    os.close();

    const cli_run fail = run({"check", bad});
    CHECK(fail.rc == 1);
    CHECK(fail.out.find("FAIL") != std::string::npos);

    CHECK(run({"check", dir.file("nope.groupoid")}).rc == 2);
}

TEST_CASE("check in color mode") {
    const temp_dir dir;
    const std::string path = dir.file("l2.groupoid");
    REQUIRE(run({"gen", "--field", "prime:2", "-o", path}).rc == 0);
    const cli_run r = run({"check", path}, true);
    CHECK(r.rc == 0);
    CHECK(r.out.find("\033[32m") != std::string::npos);
}

TEST_CASE("coordinatize recovers the field") {
    const temp_dir dir;
    const std::string gpath = dir.file("l5.groupoid");
    REQUIRE(run({"gen", "--field", "prime:5", "-o", gpath}).rc == 0);

    const std::string fpath = dir.file("k.field"), ppath = dir.file("p.map");
    const cli_run r = run({"coordinatize", gpath, "-o", fpath, "--proj", ppath});
    CHECK(r.rc == 0);
    CHECK(r.out.find("reconstructed field: 5 elements") != std::string::npos);

    const field_table f = read_field(fpath);
    CHECK(f == make_prime_field(5));

    std::ifstream ps(ppath);
    const auto pj = nlohmann::json::parse(ps);
    CHECK(pj["points"].size() == 6);
    CHECK(pj["scalars"].size() == 4);

    // an axiom-violating table is refused with a report
    const search_result res = enumerate_models(4, {});
    for (const auto& cls : res.classes)
        if (!cls.axiom_pass[0]) {
            const std::string bpath = dir.file("broken.groupoid");
            write_groupoid(cls.representative, bpath);
            const cli_run bad = run({"coordinatize", bpath});
            CHECK(bad.rc == 1);
            CHECK(bad.err.find("AxiomViolation") != std::string::npos);
            break;
        }
}

TEST_CASE("search prints the classification") {
    const cli_run r4 = run({"search", "--points", "4"});
    CHECK(r4.rc == 0);
    CHECK(r4.out.find("structures: 1\n") != std::string::npos);
    CHECK(r4.out.find("classes: 1\n") != std::string::npos);
    CHECK(r4.out.find("class 0: size 1, -1 = a, axioms 1+ 2+ 3+ 4+") != std::string::npos);

    const cli_run raw = run({"search", "--points", "4", "--axioms", ""});
    CHECK(raw.rc == 0);
    CHECK(raw.out.find("structures: 512\n") != std::string::npos);

    const cli_run r3 = run({"search", "--points", "3", "--require-minus-one-distinct"});
    CHECK(r3.rc == 0);
    CHECK(r3.out.find("classes: 0\n") != std::string::npos);

    const temp_dir dir;
    const cli_run r5 = run({"search", "--points", "5", "-o", dir.file("out")});
    CHECK(r5.rc == 0);
    CHECK(r5.out.find("structures: 2\n") != std::string::npos);
    std::ifstream sin(dir.file("out") + "/summary.json");
    CHECK(sin.good());

    CHECK(run({"search", "--points", "6"}).rc == 1);
    CHECK(run({"search", "--points", "5", "--axioms", "3,4"}).rc == 1);
    CHECK(run({"search"}).rc == 2);
}

TEST_CASE("rapport queries by point names") {
    const temp_dir dir;
    const std::string path = dir.file("l5.groupoid");
    REQUIRE(run({"gen", "--field", "prime:5", "-o", path}).rc == 0);

    const cli_run cross = run({"rapport", path, "--cross", "(1:0),(0:1),(1:1),(2:1)"});
    CHECK(cross.rc == 0);
    CHECK(cross.out == "cross((1:0),(0:1),(1:1),(2:1)) = 2\n");

    const cli_run tri =
        run({"rapport", path, "--tri", "(1:0),(0:1),(1:1),(1:1),(1:0),(0:1)"});
    CHECK(tri.rc == 0);
    CHECK(tri.out == "tri((1:0),(0:1),(1:1),(1:1),(1:0),(0:1)) = 4\n");

    const cli_run twelve = run({"rapport", path, "--twelve", "(1:0),(0:1),(1:1),(2:1)"});
    CHECK(twelve.rc == 0);
    CHECK(count_lines(twelve.out, " = ") == 12);
    CHECK(twelve.out.find("mu: tri(") == 0);
    CHECK(count_lines(twelve.out, "-mu") >= 2);  // -mu and -mu^-1 at least

    const cli_run harm = run({"rapport", path, "--harmonic", "(1:0),(0:1),(1:1)"});
    CHECK(harm.rc == 0);
    CHECK(harm.out == "harmonic((1:0),(0:1),(1:1)) = (4:1)\n");

    const cli_run fourth = run({"rapport", path, "--fourth", "--mu", "2", "--triple", "(1:0)",
                                "(0:1)", "(1:1)"});
    CHECK(fourth.rc == 0);
    CHECK(fourth.out == "fourth(mu=2; (1:0),(0:1),(1:1)) = (2:1)\n");

    // exactly one query
    CHECK(run({"rapport", path}).rc == 2);
    CHECK(run({"rapport", path, "--cross", "(1:0),(0:1),(1:1),(2:1)", "--harmonic",
               "(1:0),(0:1),(1:1)"})
              .rc == 2);
    CHECK(run({"rapport", path, "--fourth"}).rc == 2);  // needs --mu and --triple
    CHECK(run({"rapport", path, "--cross", "(1:0),(0:1),(1:1)"}).rc == 1);   // 3 names
    CHECK(run({"rapport", path, "--cross", "(9:9),(0:1),(1:1),(2:1)"}).rc == 1);
}

TEST_CASE("iso compares files of the same kind") {
    const temp_dir dir;

    const std::string fa = dir.file("a.field"), fb = dir.file("b.field"),
                      fc = dir.file("c.field");
    write_field(oracle::gf4(), fa);
    field_table renamed = oracle::gf4();
    renamed.elements = {"z", "u", "p", "q"};
    write_field(renamed, fb);
    write_field(make_prime_field(5), fc);

    const cli_run same = run({"iso", fa, fb});
    CHECK(same.rc == 0);
    CHECK(same.out.find("isomorphic\n") == 0);
    CHECK(same.out.find("0 -> z") != std::string::npos);

    const cli_run diff = run({"iso", fa, fc});
    CHECK(diff.rc == 1);
    CHECK(diff.out == "not isomorphic\n");

    const std::string ga = dir.file("a.groupoid"), gb = dir.file("b.groupoid");
    REQUIRE(run({"gen", "--field", "prime:3", "-o", ga}).rc == 0);
    REQUIRE(run({"gen", "--field", "file:" + fa, "-o", gb}).rc == 0);

    const cli_run giso = run({"iso", ga, ga});
    CHECK(giso.rc == 0);
    CHECK(giso.out.find("isomorphic\n") == 0);

    CHECK(run({"iso", ga, gb}).rc == 1);  // 4 points vs 5 points
    CHECK(run({"iso", fa, ga}).rc == 2);  // field vs groupoid
    CHECK(run({"iso", fa, dir.file("missing.field")}).rc == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).rc == 2);
    CHECK(run({"frobnicate"}).rc == 2);
    CHECK(run({"gen", "--unknown-flag"}).rc == 2);
    CHECK(run({"--help"}).rc == 0);  // help is a clean exit
}
