#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relcheck/cli.hpp"
#include "relcheck/proglang.hpp"

using namespace relcheck;

namespace {

const std::string kCorpus = RELCHECK_CORPUS_DIR;

std::string cf(const std::string& name) { return kCorpus + "/" + name; }

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string last_line(const std::string& text) {
    std::istringstream in(text);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    return last;
}

std::string collapse_spaces(const std::string& line) {
    std::string out;
    bool in_gap = false;
    for (char c : line) {
        if (c == ' ' || c == '\t') {
            in_gap = true;
            continue;
        }
        if (in_gap && !out.empty()) out += ' ';
        in_gap = false;
        out += c;
    }
    return out;
}

} // namespace

TEST_CASE("contract examples run with the documented exit codes") {
    RunResult refines = run({"refines", "--lhs", cf("pprime.prog"), "--rhs",
                             cf("p.prog"), "--space", cf("s12.space")});
    CHECK(refines.code == 0);
    CHECK(refines.out == "refines: true\n");

    RunResult more = run({"more-correct", "--candidate", cf("ppp.prog"),
                          "--baseline", cf("p.prog"), "--spec", cf("add.spec")});
    CHECK(more.code == 0);
    CHECK(more.out.find("more-correct: true") == 0);

    // The sum program is more correct than the loop but does not refine it.
    RunResult not_ref = run({"refines", "--lhs", cf("ppp.prog"), "--rhs",
                             cf("p.prog"), "--space", cf("s12.space")});
    CHECK(not_ref.code == 1);
    CHECK(not_ref.out.find("refines: false") == 0);
    CHECK(not_ref.out.find("disagrees at:") != std::string::npos);

    RunResult chain = run({"verify-chain", cf("fermat_small.chain")});
    CHECK(chain.code == 0);
    CHECK(chain.out.find("verdict: verified") != std::string::npos);
}

TEST_CASE("structured output is byte-identical across runs") {
    std::vector<std::string> args = {
        "more-correct", "--candidate", cf("band_p2.rel"),
        "--baseline",   cf("band_p1.rel"),
        "--spec",       cf("band_r.rel"),
        "--space",      cf("band.space"),
        "--nondet",     "--format", "structured"};
    RunResult first = run(args);
    RunResult second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);

    const std::string golden = R"({
  "kind": "more-correct-nondet",
  "candidate": "band_p2",
  "baseline": "band_p1",
  "spec": "band_r",
  "verdict": true,
  "baseline_competence": 2,
  "candidate_competence": 4,
  "violations_on_baseline": [
    [
      [
        2
      ],
      [
        0
      ]
    ],
    [
      [
        3
      ],
      [
        1
      ]
    ]
  ]
}
)";
    CHECK(first.out == golden);

    RunResult reversed = run({"more-correct", "--candidate", cf("band_p1.rel"),
                              "--baseline", cf("band_p2.rel"), "--spec",
                              cf("band_r.rel"), "--space", cf("band.space"),
                              "--nondet", "--format", "structured"});
    CHECK(reversed.code == 1);
    auto rec = nlohmann::json::parse(reversed.out);
    CHECK(rec["verdict"] == false);
    CHECK(rec["uncovered_state"] == nlohmann::json::parse("[1]"));
}

TEST_CASE("verify-chain tables end with the last program's reliability") {
    RunResult table = run({"verify-chain", cf("fermat_small.chain")});
    CHECK(collapse_spaces(last_line(table.out)) == "P3 0.3889");

    RunResult rec_run =
        run({"verify-chain", cf("fermat_small.chain"), "--format", "structured"});
    auto rec = nlohmann::json::parse(rec_run.out);
    CHECK(rec["kind"] == "verify-chain");
    CHECK(rec["verified"] == true);
    CHECK(rec["termination"] == "none");
    CHECK(rec["domain_states"] == 18);
    CHECK(rec["steps"].size() == 4);
    CHECK(rec["steps"][3]["name"] == "P3");
    CHECK(rec["steps"][3]["reliability"] == "0.3889");
    CHECK(rec["steps"][1]["competence"] == 4);

    // A failing chain reports the witness state and exits 1.
    RunResult bad = run({"verify-chain", cf("fermat_reversed_small.chain"),
                         "--format", "structured"});
    CHECK(bad.code == 1);
    auto bad_rec = nlohmann::json::parse(bad.out);
    CHECK(bad_rec["verified"] == false);
    CHECK(bad_rec["steps"][1]["uncovered_state"] ==
          nlohmann::json::parse("[3, 0, 0, 0]"));
}

TEST_CASE("correctness judgments work on programs and relation literals alike") {
    CHECK(run({"correct", "--program", cf("pprime.prog"), "--spec",
               cf("add.spec")})
              .code == 0);
    CHECK(run({"correct", "--program", cf("p.prog"), "--spec", cf("add.spec"),
               "--partial"})
              .code == 0);

    RunResult up = run({"correct", "--program", cf("walk_up.rel"), "--spec",
                        cf("walk_r.rel"), "--space", cf("walk.space")});
    CHECK(up.code == 1);
    // The climb serves 5 with an output the spec disallows there.
    CHECK(up.out.find("disagrees at: (5) -> (6)") != std::string::npos);

    RunResult down = run({"correct", "--program", cf("walk_down.rel"), "--spec",
                          cf("walk_r.rel"), "--space", cf("walk.space")});
    CHECK(down.code == 0);

    RunResult comp = run({"competence", "--program", cf("walk_up.rel"), "--spec",
                          cf("walk_r.rel"), "--space", cf("walk.space"),
                          "--format", "structured"});
    CHECK(comp.code == 0);
    auto rec = nlohmann::json::parse(comp.out);
    CHECK(rec["count"] == 4);
    CHECK(rec["states"] == nlohmann::json::parse("[[1],[2],[3],[4]]"));
}

TEST_CASE("exit codes distinguish usage, falsity, and inconclusiveness") {
    CHECK(run({"refines", "--lhs", cf("pprime.prog")}).code == 2);  // missing --rhs
    CHECK(run({"unknown-command"}).code == 2);
    CHECK(run({"correct", "--program", cf("missing.prog"), "--spec",
               cf("add.spec")})
              .code == 2);
    CHECK(run({"refines", "--lhs", cf("pprime.prog"), "--rhs", cf("p.prog"),
               "--space", cf("s12.space"), "--format", "yaml"})
              .code == 2);

    RunResult starved = run({"interpret", "--program", cf("p.prog"), "--space",
                             cf("s12.space"), "--state", "(3, 2)", "--fuel", "1"});
    CHECK(starved.code == 3);
    CHECK(starved.out.find("fuel-exhausted") != std::string::npos);

    // The full-scale space is far past the exhaustive cap.
    RunResult huge = run({"denote", "--program", cf("p1.prog"), "--spec",
                          cf("fermat.spec")});
    CHECK(huge.code == 3);
    CHECK(huge.err.find("cap") != std::string::npos);

    RunResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify-chain") != std::string::npos);
}

TEST_CASE("denote output round-trips through the relation literal parser") {
    RunResult lit = run({"denote", "--program", cf("pprime.prog"), "--space",
                         cf("s12.space")});
    CHECK(lit.code == 0);
    SpacePtr sp = parse_space("space s12\nvar x : 0..6\nvar y : 0..6\n");
    Relation parsed = parse_relation_literal(lit.out, sp);
    std::ifstream in(cf("pprime.prog"));
    std::ostringstream buf;
    buf << in.rdbuf();
    Relation direct = denote(bind_program(parse_program(buf.str()), sp));
    CHECK(parsed == direct);

    RunResult fin = run({"interpret", "--program", cf("p.prog"), "--space",
                         cf("s12.space"), "--state", "(3, 2)", "--fuel", "10"});
    CHECK(fin.code == 0);
    CHECK(fin.out.find("final (5,0)") != std::string::npos);
}

TEST_CASE("cross-validation subcommands succeed on the bundled corpus") {
    RunResult agree = run({"agreement", "--program", cf("p.prog"), "--space",
                           cf("s12.space"), "--fuel", "50"});
    CHECK(agree.code == 0);
    CHECK(agree.out.find("states checked: 49") != std::string::npos);

    // The rescan variant extends the space with a block local past the
    // default cap; --cap admits it.
    RunResult rescan = run({"agreement", "--program", cf("p3_rescan_small.prog"),
                            "--spec", cf("fermat_small.spec"), "--fuel", "500",
                            "--cap", "400000"});
    CHECK(rescan.code == 0);
    CHECK(rescan.out.find("mismatches: 0") != std::string::npos);

    RunResult vdom = run({"validate-domain", "--spec", cf("add.spec")});
    CHECK(vdom.code == 0);
    CHECK(vdom.out.find("consistent") != std::string::npos);

    RunResult rel = run({"reliability", "--program", cf("p1_small.prog"),
                         "--spec", cf("fermat_small.spec"), "--region",
                         "n = 0..24, x = 0, y = 0, r = 0", "--fuel", "500"});
    CHECK(rel.code == 0);
    CHECK(rel.out.find("reliability: 0.2222") != std::string::npos);
    CHECK(rel.out.find("4 of 18") != std::string::npos);
}

TEST_CASE("the default-range flag fills in rangeless locals") {
    auto dir = std::filesystem::temp_directory_path() / "relcheck_cli_defrange";
    std::filesystem::create_directories(dir);
    auto prog = dir / "d.prog";
    {
        std::ofstream f(prog);
        f << "program D over s12 { nat t; t = x; y = t; }\n";
    }
    RunResult without = run({"denote", "--program", prog.string(), "--space",
                             cf("s12.space")});
    CHECK(without.code == 2);
    RunResult with_range = run({"denote", "--program", prog.string(), "--space",
                                cf("s12.space"), "--default-range", "0..6"});
    CHECK(with_range.code == 0);
    CHECK(with_range.out.find("(0,0) -> (0,0)") != std::string::npos);
    std::filesystem::remove_all(dir);
}
