#include <cstdio>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "ffpm/formats.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = ffpm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) {
        if (l == line) return true;
    }
    return false;
}

class TempFile {
public:
    TempFile(const std::string& name, const std::string& contents) : path_("ffpm_cli_" + name) {
        ffpm::write_file(path_, contents);
    }
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace

TEST_CASE("bound") {
    const auto r = run({"--machine", "bound", "-q", "2", "-n", "4", "-k", "3"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "D=2"));
    CHECK(has_line(r.out, "m=2"));
    CHECK(has_line(r.out, "tail=5/16"));
    CHECK(has_line(r.out, "hoeffding_vacuous=true"));
    CHECK(r.out.find("c=0.0200") != std::string::npos);

    const auto human = run({"bound", "-q", "2", "-n", "4", "-k", "3"});
    CHECK(human.code == 0);
    CHECK(human.out.find("\nD ") != std::string::npos);

    CHECK(run({"bound", "-q", "2", "-n", "1", "-k", "2"}).code == 0);
    CHECK(run({"bound", "-q", "1", "-n", "4", "-k", "3"}).code == 2);
    CHECK(run({"bound", "-q", "6", "-n", "4", "-k", "3"}).code == 2);
    CHECK(run({"bound", "-q", "2", "-n", "4"}).code == 2);
}

TEST_CASE("usage and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"witness", "-q", "2", "-n", "4"}).code == 2);
    CHECK(run({"witness", "-q", "2", "-n", "4", "-k", "3", "--identity"}).code == 2);
    CHECK(run({"search", "-q", "2", "-n", "4", "-k", "3", "--mode", "random"}).code == 2);
}

TEST_CASE("witness") {
    const auto r = run({"--machine", "witness", "-q", "2", "-n", "4", "-k", "3"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "verified=true"));
    CHECK(has_line(r.out, "degree_bound=3"));

    CHECK(run({"witness", "-q", "5", "-n", "3", "--identity"}).code == 0);

    const TempFile f("x2x.txt", "1 : 2\n1 : 1\n");
    const auto bad = run({"witness", "-q", "2", "-n", "3", "--thm2", f.path()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("fiber count at 0 = 2 ≡ 0 mod 2") != std::string::npos);

    const auto good = run({"--machine", "witness", "-q", "3", "-n", "3", "--thm2", f.path()});
    CHECK(good.code == 0);
    CHECK(has_line(good.out, "map=composed"));

    const TempFile out("p.txt", "");
    CHECK(run({"witness", "-q", "2", "-n", "4", "-k", "3", "--output", out.path()}).code == 0);
    const auto p = ffpm::parse_polynomial(ffpm::Field::of_order(2), ffpm::read_file(out.path()));
    CHECK(p.arity() == 4);
}

TEST_CASE("field options") {
    CHECK(run({"witness", "--field", "p=2 r=2 modulus=1,1,1", "-n", "3", "-k", "2"}).code == 0);
    CHECK(run({"witness", "--field", "p=2 r=2 modulus=1,0,1", "-n", "3", "-k", "2"}).code == 2);
    const auto st = run({"selftest", "--field", "p=2 r=2 modulus=1,0,1"});
    CHECK(st.code == 3);
    CHECK(st.err.find("field construction failed") != std::string::npos);
    CHECK(run({"selftest", "--quick", "--field", "p=3 r=2"}).code == 0);
}

TEST_CASE("transform") {
    const TempFile t("t.txt", "q=3 n=1\n1\n0\n0\n");
    const auto r = run({"transform", "--input", t.path()});
    CHECK(r.code == 0);
    // 1 - x^2 over GF(3).
    CHECK(r.out == "1 : 0\n2 : 2\n");
    const TempFile p("poly.txt", r.out);
    const auto back = run({"transform", "--synthesize", "-q", "3", "--input", p.path()});
    CHECK(back.code == 0);
    CHECK(back.out == "q=3 n=1\n1\n0\n0\n");
    CHECK(run({"transform", "--verify", "--direct", "--input", t.path()}).code == 0);
    const TempFile bad("bad.txt", "q=3 n=1\n1\n0\n");
    CHECK(run({"transform", "--input", bad.path()}).code == 2);
}

TEST_CASE("search and rank") {
    const TempFile set("set.txt", "");
    const auto r = run({"--machine", "search", "-q", "2", "-n", "4", "-k", "3", "--emit-set", set.path()});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "optimal=true"));
    CHECK(has_line(r.out, "avoiding=true"));
    CHECK(has_line(r.out, "rank_ok=true"));
    CHECK(has_line(r.out, "image_size=4"));

    const auto rk = run({"--machine", "rank", "-q", "2", "-n", "4", "-k", "3", "--set", set.path()});
    CHECK(rk.code == 0);
    CHECK(has_line(rk.out, "rank_bound=10"));
    CHECK(has_line(rk.out, "rank_equals_size=true"));

    const auto g = run({"--machine", "search", "-q", "3", "-n", "4", "-k", "2", "--mode", "greedy", "--seed", "4"});
    CHECK(g.code == 0);
    CHECK(has_line(g.out, "mode=greedy"));
    CHECK(g.out.find("component_size") == std::string::npos);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"--machine", "search", "-q", "3", "-n", "4", "-k", "2"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run({"bound", "-q", "5", "-n", "9", "-k", "2"}).out == run({"bound", "-q", "5", "-n", "9", "-k", "2"}).out);
}
