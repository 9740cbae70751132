#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "spectra/cli.hpp"

using spectra::run_cli;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("spectra-cli-test-" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string file(const std::string& name, const std::string& content) const {
        auto p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

const char* kP = "nplts P\nalphabet a b c\n"
                 "trans s a -> t:1\ntrans t b -> u:1\ntrans t c -> v:1\n";
const char* kQ = "nplts Q\nalphabet a b c\n"
                 "trans s a -> t:1\ntrans s a -> u:1\n"
                 "trans t b -> v:1\ntrans u c -> w:1\n";

} // namespace

TEST_CASE("check: equivalent pair exits 0, distinguished exits 1") {
    TempDir tmp;
    std::string p = tmp.file("p.nplts", kP), q = tmp.file("q.nplts", kQ);
    std::string out;
    CHECK(run({"check", "--model", p, "--model2", q, "--left", "s", "--right", "s", "--equiv",
               "ptr"},
              &out) == 0);
    CHECK(out.find("verdict ptr equivalent") != std::string::npos);

    CHECK(run({"check", "--model", p, "--model2", q, "--left", "s", "--right", "s", "--equiv",
               "pf"},
              &out) == 1);
    CHECK(out.find("verdict pf distinguished") != std::string::npos);
    CHECK(out.find("witness") != std::string::npos);
}

TEST_CASE("check: one model, two states") {
    TempDir tmp;
    std::string m = tmp.file("m.nplts", "nplts m\nalphabet a\n"
                                        "trans s a -> x:1\ntrans z a -> y:1\n");
    CHECK(run({"check", "--model", m, "--left", "s", "--right", "z", "--equiv", "pb-dis"}) == 0);
}

TEST_CASE("usage and input errors exit 2") {
    TempDir tmp;
    std::string p = tmp.file("p.nplts", kP);
    std::string bad = tmp.file("bad.nplts", "nplts m\nalphabet a\ntrans s a -> s:1\n");
    std::string err;
    CHECK(run({"check", "--model", p, "--left", "s", "--right", "s"}, nullptr, &err) == 2);
    CHECK(run({"check", "--model", p, "--left", "s", "--right", "s", "--equiv", "bogus"},
              nullptr, &err) == 2);
    CHECK(err.find("bogus") != std::string::npos);
    CHECK(run({"check", "--model", p, "--left", "nope", "--right", "s", "--equiv", "ptr"},
              nullptr, &err) == 2);
    CHECK(run({"check", "--model", bad, "--left", "s", "--right", "s", "--equiv", "ptr"},
              nullptr, &err) == 2);
    CHECK(run({"check", "--model", p + ".missing", "--left", "s", "--right", "s", "--equiv",
               "ptr"},
              nullptr, &err) == 2);
    CHECK(run({"frobnicate"}) == 2);
    CHECK(run({}) == 2);
}

TEST_CASE("help exits 0") {
    std::string out;
    CHECK(run({"--help"}, &out) == 0);
    CHECK(out.find("check") != std::string::npos);
}

TEST_CASE("budget exhaustion exits 3") {
    TempDir tmp;
    std::string wide = tmp.file("wide.nplts",
                                "nplts w\nalphabet a b\n"
                                "trans s0 a -> s1:1\ntrans s0 b -> s1:1\n"
                                "trans s1 a -> s2:1\ntrans s1 b -> s2:1\n"
                                "trans s2 a -> s3:1\ntrans s2 b -> s3:1\n");
    std::string err;
    CHECK(run({"check", "--model", wide, "--left", "s0", "--right", "s0", "--equiv", "ptr",
               "--budget", "5"},
              nullptr, &err) == 3);
}

TEST_CASE("compare prints a full report") {
    TempDir tmp;
    std::string p = tmp.file("p.nplts", kP), q = tmp.file("q.nplts", kQ);
    std::string out1, out2;
    int code = run({"compare", "--model", p, "--model2", q, "--left", "s", "--right", "s",
                    "--gen-tests", "depth=2,branching=1,grid=1"},
                   &out1);
    CHECK(code == 0); // disagreements are fine; violations are not
    CHECK(out1.find("verdict ptr-dis") != std::string::npos);
    CHECK(out1.find("verdict pte-supinf") != std::string::npos);
    CHECK(out1.find("verdict pb-supinf") != std::string::npos);
    // byte-identical on a second run
    run({"compare", "--model", p, "--model2", q, "--left", "s", "--right", "s", "--gen-tests",
         "depth=2,branching=1,grid=1"},
        &out2);
    CHECK(out1 == out2);
}

TEST_CASE("classify") {
    TempDir tmp;
    std::string m = tmp.file("m.nplts", "nplts coin\nalphabet a b\n"
                                        "trans s a -> t:1/2, u:1/2\ntrans t b -> v:1\n");
    std::string out;
    CHECK(run({"classify", "--model", m}, &out) == 0);
    CHECK(out.find("coin") != std::string::npos);
    CHECK(out.find("fully-probabilistic") != std::string::npos);
}

TEST_CASE("dot emits a digraph") {
    TempDir tmp;
    std::string m = tmp.file("m.nplts", kP);
    std::string out;
    CHECK(run({"dot", "--model", m}, &out) == 0);
    CHECK(out.find("digraph") != std::string::npos);
}

TEST_CASE("search emits a witness that check confirms") {
    TempDir tmp;
    std::string out;
    int code = run({"search", "--finer", "pf", "--coarser", "ptr", "--seed", "1", "--attempts",
                    "400", "--states", "5"},
                   &out);
    REQUIRE(code == 0);
    CHECK(out.find("witness pf-lt-ptr") != std::string::npos);
    CHECK(out.find("equiv ptr") != std::string::npos);
    CHECK(out.find("dist pf") != std::string::npos);
    // the emitted model block parses as a model again
    auto pos = out.find("nplts");
    REQUIRE(pos != std::string::npos);
    std::string model_text = out.substr(pos);
    std::string mfile = tmp.file("found.nplts", model_text);
    auto grab = [&](const std::string& key) {
        auto k = out.find(key + " ");
        REQUIRE(k != std::string::npos);
        k += key.size() + 1;
        auto end = out.find('\n', k);
        return out.substr(k, end - k);
    };
    std::string left = grab("left"), right = grab("right");
    CHECK(run({"check", "--model", mfile, "--left", left, "--right", right, "--equiv", "ptr"}) ==
          0);
    CHECK(run({"check", "--model", mfile, "--left", left, "--right", right, "--equiv", "pf"}) ==
          1);
}

TEST_CASE("corpus subcommand verifies a directory") {
    TempDir tmp;
    auto wit_dir = tmp.path / "wits";
    std::filesystem::create_directories(wit_dir);
    {
        std::ofstream out(wit_dir / "one.wit");
        out << "witness one\nleft s\nright z\nequiv ptr\ndist pf\n"
            << "gentests depth=1 branching=1 grid=1\n"
            << kP << "";
    }
    // kP has no z state: verification must fail loudly, not crash
    std::string out, err;
    CHECK(run({"corpus", "--dir", wit_dir.string()}, &out, &err) != 0);

    {
        std::ofstream o(wit_dir / "one.wit");
        o << "witness one\nleft s\nright t\nequiv pb-dis\ndist pb-dis\n"
          << "gentests depth=1 branching=1 grid=1\n"
          << kP;
    }
    // contradictory expectations: exactly one of equiv/dist can hold
    CHECK(run({"corpus", "--dir", wit_dir.string()}, &out) == 1);
    CHECK(out.find("1 failures") != std::string::npos);
}
