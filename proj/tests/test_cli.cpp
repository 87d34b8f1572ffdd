// End-to-end runs of the command-line binary: report shapes, exit codes,
// golden-value spot checks, and byte-stable reruns. SUBTILE_BIN is the
// path to the built executable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subtile/report.hpp"
#include "subtile/rulefile.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace subtile;

namespace {

struct RunResult {
    int code;
    std::string out; // stdout + stderr interleaved
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(SUBTILE_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p))
        out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

// One scratch directory for all cases, with the input files written once.
const std::string& dir() {
    static std::string d = [] {
        char tmpl[] = "/tmp/subtile-cli-XXXXXX";
        REQUIRE(mkdtemp(tmpl) != nullptr);
        return std::string(tmpl);
    }();
    return d;
}

std::string put(const std::string& name, const std::string& text) {
    std::string path = dir() + "/" + name;
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

const std::string& fib_rules() {
    static std::string p = put("fib.rules", "kind: substitution1d\n"
                                            "letters: a b\n"
                                            "rule: a -> b\n"
                                            "rule: b -> a b\n");
    return p;
}

const std::string& spec_rules() {
    static std::string p = put("spec.rules", "kind: tilespec\n"
                                             "x-len-a: 1\n"
                                             "x-len-b: 1\n"
                                             "y-len-a: (0,1)\n"
                                             "y-len-b: (-1,1)\n");
    return p;
}

const std::string& x_rules() {
    static std::string p = put("x.rules", "kind: linetiling\n"
                                          "len-a: 1\n"
                                          "len-b: 1\n"
                                          "base: a\n"
                                          "policy: seeded\n"
                                          "seed: 42\n");
    return p;
}

} // namespace

TEST_CASE("substitute prints the iterated word") {
    RunResult r = run("substitute " + fib_rules() + " b 3");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("command: substitute\n", 0) == 0);
    CHECK(has(r.out, "kind: substitution1d\n"));
    CHECK(has(r.out, "  width: 5\n"));
    CHECK(has(r.out, "  word: abbab\n"));
}

TEST_CASE("substitute --render writes the drawing and digests it") {
    std::string chair = put("chair.rules", "kind: block2d\n"
                                           "letters: NE NW SE SW\n"
                                           "block-size: 2\n"
                                           "block: NE -> NE NE / SW NE\n"
                                           "block: NW -> NW NW / NW SE\n"
                                           "block: SE -> NW SE / SE SE\n"
                                           "block: SW -> SW NE / SW SW\n");
    std::string svg = dir() + "/chair3.svg";
    RunResult r1 = run("substitute " + chair + " NE 3 --render " + svg);
    CHECK(r1.code == 0);
    std::string bytes = slurp(svg);
    // 8x8 colored cells plus the report-digest of the exact bytes
    long long cells = 0;
    for (std::size_t pos = bytes.find("class=\"cell\"");
         pos != std::string::npos; pos = bytes.find("class=\"cell\"", pos + 1))
        ++cells;
    CHECK(cells == 64);
    CHECK(has(r1.out, "render-digest: fnv1a64:" + hex64(fnv1a64(bytes)) + "\n"));

    RunResult r2 = run("substitute " + chair + " NE 3 --render " + svg);
    CHECK(r2.out == r1.out);
    CHECK(slurp(svg) == bytes);
}

TEST_CASE("language lists the admitted words of one length") {
    RunResult r = run("language " + fib_rules() + " 5");
    CHECK(r.code == 0);
    CHECK(has(r.out, "count: 6\n"));
    CHECK(has(r.out, "  word: ababb\n"));
    CHECK(has(r.out, "  word: bbabb\n"));
    CHECK(!has(r.out, "aa"));
}

TEST_CASE("aperiodic refutes every small period") {
    RunResult r = run("aperiodic " + fib_rules() + " --period-cap 6 --m-cap 40");
    CHECK(r.code == 0);
    CHECK(has(r.out, "all-refuted: true\n"));
    CHECK(has(r.out, "  refuting-word: aa\n"));
    CHECK(!has(r.out, "refuted: false"));
}

TEST_CASE("verify-corollary2 validates the separating certificate") {
    RunResult r = run("verify-corollary2 -n 1");
    CHECK(r.code == 0);
    CHECK(has(r.out, "  block-letter: b*b\n"));
    CHECK(has(r.out, "  refuted: true\n"));
    CHECK(has(r.out, "validated: true\n"));

    // an undersized refutation cap leaves a survivor and a failing exit
    RunResult s = run("verify-corollary2 -n 1 --m-cap 1");
    CHECK(s.code == 1);
    CHECK(has(s.out, "  refuted: false\n"));
    CHECK(has(s.out, "  survivor: true\n"));
    CHECK(has(s.out, "  member-of-approximation: true\n"));
    CHECK(has(s.out, "validated: false\n"));
}

TEST_CASE("fib-conjugate witness mode emits a reconstructible pair") {
    RunResult r = run("fib-conjugate --spec " + spec_rules() + " --witness 10");
    CHECK(r.code == 0);
    CHECK(has(r.out, "mode: witness\n"));
    CHECK(has(r.out, "  divergence-level: "));
    CHECK(has(r.out, "  t: ("));
    // seeded pipeline: a second run is byte-identical
    RunResult r2 = run("fib-conjugate --spec " + spec_rules() + " --witness 10");
    CHECK(r2.out == r.out);
}

TEST_CASE("fib-conjugate maps a tiling file and serializes the image") {
    std::string out = dir() + "/img.rules";
    RunResult r = run("fib-conjugate --spec " + spec_rules() + " " + x_rules() +
                      " --out " + out);
    CHECK(r.code == 0);
    CHECK(has(r.out, "mode: file\n"));
    CHECK(has(r.out, "offset: ("));
    ParsedRuleFile img = parse_rule_file(slurp(out));
    REQUIRE(img.kind == RuleKind::linetiling);
    CHECK(img.tiling->spec().len_a == Golden(0, 1));  // tau
    CHECK(img.tiling->spec().len_b == Golden(-1, 1)); // tau - 1

    // mismatched length invariants: report the error, exit 1
    std::string bad = put("badspec.rules", "kind: tilespec\n"
                                           "x-len-a: 1\n"
                                           "x-len-b: 1\n"
                                           "y-len-a: 1\n"
                                           "y-len-b: (0,1)\n");
    RunResult e = run("fib-conjugate --spec " + bad + " --witness 10");
    CHECK(e.code == 1);
    CHECK(has(e.out, "error: not conjugate: length invariants differ\n"));
}

TEST_CASE("metric distances come out exact") {
    RunResult self = run("metric " + x_rules() + " " + x_rules());
    CHECK(self.code == 0);
    CHECK(has(self.out, "distance: (0,0) ~ 0.00000000\n"));

    std::string moved = put("x10.rules", "kind: linetiling\n"
                                         "len-a: 1\n"
                                         "len-b: 1\n"
                                         "base: a\n"
                                         "policy: seeded\n"
                                         "seed: 42\n"
                                         "shift: 1/10\n");
    RunResult r = run("metric " + x_rules() + " " + moved);
    CHECK(r.code == 0);
    CHECK(has(r.out, "distance: (9/10,0) ~ 0.90000000\n"));
}

TEST_CASE("frame reports a witness or the failing condition") {
    RunResult w = run("frame --seed 7");
    CHECK(w.code == 0);
    CHECK(has(w.out, "s: (1,2),(0,0)\n")); // tau^3 along the x axis
    CHECK(has(w.out, "result: witness\n"));

    std::string board = put("board.rules", "kind: patch\n"
                                           "letters: p q\n"
                                           "row: p q\n"
                                           "row: q p\n");
    RunResult f = run("frame --patch " + board + " --s \"(10,0),(0,0)\" --t "
                      "\"(0,0),(9,0)\"");
    CHECK(f.code == 1);
    CHECK(has(f.out, "result: refusal\n"));
    CHECK(has(f.out, "failed-condition: t-translate\n"));
    CHECK(has(f.out, "failing-displacement: ("));
}

TEST_CASE("global precision trims the decimal mirrors") {
    RunResult r = run("--precision 2 metric " + x_rules() + " " + x_rules());
    CHECK(r.code == 0);
    CHECK(has(r.out, "distance: (0,0) ~ 0.00\n"));
}

TEST_CASE("usage and parse problems exit with 2") {
    CHECK(run("metric /nonexistent.rules " + x_rules()).code == 2);
    CHECK(run("substitute " + fib_rules() + " z 1").code == 2);
    std::string broken = put("broken.rules", "kind: substitution1d\n"
                                             "letters a b\n");
    RunResult r = run("substitute " + broken + " a 1");
    CHECK(r.code == 2);
    CHECK(has(r.out, "line 2, column 1"));
    CHECK(run("").code == 2);         // missing subcommand
    CHECK(run("--help").code == 0);   // help is a successful exit
    CHECK(run("frame").code == 2);    // neither --patch nor --seed
}
