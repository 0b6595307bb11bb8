// End-to-end tests for the command-line driver. Each case shells out to the
// binary named by MONLOG_BIN, feeds it small input files, and compares the
// whole standard-output document byte for byte. Diagnostics on standard
// error are not pinned down; exit codes are.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string g_everything;  // all captured stdout, scanned at the end

std::string bin() {
  const char* path = std::getenv("MONLOG_BIN");
  REQUIRE_MESSAGE(path != nullptr, "MONLOG_BIN must name the driver binary");
  return std::string("\"") + path + "\"";
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs `prefix monlog args` through the shell with stderr dropped.
RunResult run_prefixed(const std::string& prefix, const std::string& args) {
  std::string cmd = prefix + bin() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  g_everything += r.out;
  return r;
}

RunResult run(const std::string& args) { return run_prefixed("", args); }

// Writes `content` into the scratch directory and returns the quoted path.
std::string file(const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "monlog_cli_tests";
  fs::create_directories(dir);
  fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  return std::string("\"") + path.string() + "\"";
}

const char* kProgram = "p(a).\np(f(X)) :- not p(X).\n";
const char* kLanguage = "#constant a.\n#function f.\n#predicate p.\n";
const char* kModel = R"g({
  "signature": {"constants": ["a"], "functions": ["f"], "predicates": ["p"]},
  "extra_components": [{"type": "nonroot", "prefix": [], "period": [1], "count": 1}],
  "predicates": {"p": "01* | 0011*"}
}
)g";

}  // namespace

TEST_CASE("complete prints one definition per line") {
  auto r = run("complete --program " + file("two.mlp", kProgram));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "forall X1. p(X1) <-> X1 = a | (exists X. X1 = f(X) & ~p(X))\n");
}

TEST_CASE("complete emits the structured document with freeness axioms") {
  auto r = run("complete --program " + file("two.mlp", kProgram) + " --language " +
               file("p.mll", kLanguage) + " --cet-depth 2 --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out == R"g({
  "language": {
    "constants": [
      "a"
    ],
    "functions": [
      "f"
    ],
    "predicates": [
      "p"
    ]
  },
  "head_variable": "X1",
  "definitions": [
    {
      "predicate": "p",
      "formula": "forall X1. p(X1) <-> X1 = a | (exists X. X1 = f(X) & ~p(X))"
    }
  ],
  "cet_depth": 2,
  "cet": [
    "forall X. f(X) != a",
    "forall X, Y. f(X) = f(Y) -> X = Y",
    "forall X. f(X) != X",
    "forall X. f(f(X)) != X"
  ]
}
)g");
}

TEST_CASE("simplify flattens and normalizes") {
  auto r = run("simplify --formula " + file("closure.mlf", "forall X. p(X) -> p(f(X))\n") +
               " --language " + file("p.mll", kLanguage));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "~(exists X. ~(~p(X) | (exists _v0, _v1. ~(_v0 != X | "
        "~~(_v1 != f(_v0) | ~p(_v1))))))\n");
}

TEST_CASE("emit-sns prints the successor-logic sentence") {
  auto r = run("emit-sns --formula " + file("ex.mlf", "exists X. p(X)\n") +
               " --language " + file("p.mll", kLanguage));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "(ex2 X (ex2 Y1 (and (and (in (s0 Lam) X) (all1 x (-> (in x X) (xor (in "
        "(s1 x) X) (ex1 y (and (in y X) (= x (b1 y))))))) (not (in (b1 (s0 Lam)) "
        "X)) (all1 x (-> (and (in x X) (in (s1 x) X)) (not (in (b1 (s1 x)) X)))) "
        "(all1 x (not false))) (all1 x (-> (in x Y1) (in x X))) (ex1 x0 (and (in "
        "x0 X) (in x0 Y1))))))\n");
}

TEST_CASE("check-domain accepts an embedded presentation") {
  auto r = run("check-domain --model " + file("m.json", kModel));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "true\n");

  auto rj = run("check-domain --model " + file("m.json", kModel) + " --format json");
  CHECK(rj.exit_code == 0);
  CHECK(rj.out == R"g({
  "language": {
    "constants": [
      "a"
    ],
    "functions": [
      "f"
    ],
    "predicates": [
      "p"
    ]
  },
  "domain_holds": true
}
)g");
}

TEST_CASE("eval decides sentences in a model file") {
  std::string model = file("m.json", kModel);
  auto yes = run("eval --model " + model + " --formula " +
                 file("closure.mlf", "forall X. p(X) -> p(f(X))\n"));
  CHECK(yes.exit_code == 0);
  CHECK(yes.out == "true\n");

  auto no = run("eval --model " + model + " --formula " +
                file("allp.mlf", "forall X. p(X)\n"));
  CHECK(no.exit_code == 0);
  CHECK(no.out == "false\n");
}

TEST_CASE("solve reports a witness document") {
  std::string args = "solve --formula " +
                     file("sat.mlf",
                          "(forall X. p(X) -> p(f(X))) & (exists X. p(X))\n") +
                     " --language " + file("p.mll", kLanguage) +
                     " --max-prefix 1 --max-period 1 --format json";
  auto r = run(args);
  CHECK(r.exit_code == 0);
  CHECK(r.out == R"g({
  "language": {
    "constants": [
      "a"
    ],
    "functions": [
      "f"
    ],
    "predicates": [
      "p"
    ]
  },
  "verdict": "sat",
  "candidates": 7,
  "budget_exhausted": false,
  "witness": {
    "signature": {
      "constants": [
        "a"
      ],
      "functions": [
        "f"
      ],
      "predicates": [
        "p"
      ]
    },
    "extra_components": [],
    "predicates": {
      "p": "011*"
    }
  },
  "bounds": {
    "max_extra_roots": 1,
    "max_extra_nonroots": 1,
    "max_prefix": 1,
    "max_period": 1,
    "max_multiplicity": 1,
    "granularity": 2,
    "budget_seconds": 60.0
  }
}
)g");

  // Same inputs, same bytes.
  auto again = run(args);
  CHECK(again.exit_code == 0);
  CHECK(again.out == r.out);
}

TEST_CASE("entail reports both search directions") {
  auto r = run("entail --program " + file("tiny.mlp", "p(a).\n") + " --query " +
               file("tiny.mlq", "?- p(a).\n") + " --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.out == R"g({
  "language": {
    "constants": [
      "a"
    ],
    "functions": [],
    "predicates": [
      "p"
    ]
  },
  "query": "?- p(a).",
  "against_query": {
    "verdict": "no_model_within_bounds",
    "candidates": 6,
    "budget_exhausted": false,
    "bounds": {
      "max_extra_roots": 1,
      "max_extra_nonroots": 1,
      "max_prefix": 2,
      "max_period": 2,
      "max_multiplicity": 1,
      "granularity": 2,
      "budget_seconds": 60.0
    }
  },
  "against_negation": {
    "verdict": "sat",
    "candidates": 2,
    "budget_exhausted": false,
    "witness": {
      "signature": {
        "constants": [
          "a"
        ],
        "functions": [],
        "predicates": [
          "p"
        ]
      },
      "extra_components": [],
      "predicates": {
        "p": "0"
      }
    },
    "bounds": {
      "max_extra_roots": 1,
      "max_extra_nonroots": 1,
      "max_prefix": 2,
      "max_period": 2,
      "max_multiplicity": 1,
      "granularity": 2,
      "budget_seconds": 60.0
    }
  }
}
)g");
}

TEST_CASE("programs can arrive on standard input") {
  auto r = run_prefixed("printf 'p(a).\\n' | ", "complete --program -");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "forall X1. p(X1) <-> X1 = a\n");
}

TEST_CASE("exit codes separate parse errors from validation errors") {
  auto parse = run("complete --program " + file("bad.mlp", "p(a\n"));
  CHECK(parse.exit_code == 2);
  CHECK(parse.out.empty());

  auto open = run("emit-sns --formula " + file("open.mlf", "p(X)\n") +
                  " --language " + file("p.mll", kLanguage));
  CHECK(open.exit_code == 3);
  CHECK(open.out.empty());

  auto missing = run("eval --model /no/such/file --formula /no/such/file");
  CHECK(missing.exit_code == 3);
  CHECK(missing.out.empty());

  auto usage = run("frobnicate");
  CHECK(usage.exit_code == 2);
}

TEST_CASE("no output ever contains the forbidden verdict word") {
  REQUIRE(!g_everything.empty());
  std::string lowered = g_everything;
  for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::string forbidden = std::string("un") + "sat";
  CHECK(lowered.find(forbidden) == std::string::npos);
}
