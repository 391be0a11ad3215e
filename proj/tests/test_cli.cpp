#include "catch2/catch_amalgamated.hpp"

#include "rotval/io/documents.hpp"

#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

using namespace rotval;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto err_path = dir / ("rotval_cli_err_" + std::to_string(::getpid()));
  std::string cmd = quote(ROTVAL_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>" + quote(err_path.string());
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = io::read_text_file(err_path.string());
  std::filesystem::remove(err_path);
  return r;
}

const std::string kSquare = R"({"dim":2,"vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]})";

std::string square_file() {
  const auto path = std::filesystem::temp_directory_path() / "rotval_cli_square.json";
  std::FILE* f = std::fopen(path.c_str(), "w");
  std::fputs(kSquare.c_str(), f);
  std::fclose(f);
  return path.string();
}

}  // namespace

TEST_CASE("documented examples", "[cli]") {
  const std::string sq = square_file();
  SECTION("eval prints 8") {
    const auto r = run({"eval", "--body", sq, "--val", R"({"kind":"xi","p":2,"q":0})"});
    REQUIRE(r.code == 0);
    const auto doc = io::value_document_from_json(io::parse_json(r.out));
    REQUIRE(doc.value == Catch::Approx(8.0).epsilon(1e-12));
    const auto csv = run({"eval", "--body", sq, "--val", R"({"kind":"xi","p":2,"q":0})", "--format", "csv"});
    REQUIRE(csv.out == "descriptor,value\nxi(2,0),8.0\n");
  }
  SECTION("dims contains ten") {
    const auto r = run({"dims", "--group", "O", "--dmax", "3", "--lmax", "2"});
    REQUIRE(r.code == 0);
    const auto t = io::dimension_table_from_json(io::parse_json(r.out));
    REQUIRE(t.consistent());
    REQUIRE(t.at(3, 2).cumulative == 10);
  }
  SECTION("verify additivity") {
    const auto r = run({"verify", "additivity", "--trials", "200", "--seed", "7", "--dim", "2"});
    REQUIRE(r.code == 0);
    const auto reports = io::array_from_json<FitReport>(io::parse_json(r.out), "reports", io::fit_report_from_json);
    REQUIRE(!reports.empty());
    for (const auto& x : reports) REQUIRE(x.pass);
  }
}

TEST_CASE("reproducible output", "[cli]") {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "minkowski", "--trials", "6", "--seed", "11"},
      {"crofton", "--dim", "2", "--k", "1", "--planes", "4000", "--bodies", "5", "--seed", "5"},
      {"project-formula", "--dim", "3", "--k", "1", "--planes", "3000", "--bodies", "5", "--seed", "5", "--j", "1"},
      {"ineq", "--theorem", "6.1", "--q", "1", "--trials", "30", "--seed", "9"},
      {"ineq", "--theorem", "monotonicity", "--dim", "2", "--trials", "10", "--seed", "9"},
      {"fit", "--val", R"({"kind":"moment","m":1})", "--seed", "2"},
      {"oracle", "--body", kSquare, "--val", R"({"kind":"moment","m":1})", "--samples", "20000", "--seed", "3"},
  };
  for (const auto& c : commands) {
    INFO(c[0]);
    const auto a = run(c);
    const auto b = run(c);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);
    auto threaded = c;
    threaded.insert(threaded.end(), {"--threads", "3"});
    REQUIRE(run(threaded).out == a.out);
  }
  const auto path = std::filesystem::temp_directory_path() / "rotval_cli_out.json";
  const auto r = run({"ineq", "--theorem", "6.2", "--trials", "20", "--zonotope-trials", "5", "--seed", "4", "--out", path.string()});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.empty());
  REQUIRE(io::read_text_file(path.string()) == run({"ineq", "--theorem", "mixed", "--trials", "20", "--zonotope-trials", "5", "--seed", "4"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("every output validates against its schema", "[cli]") {
  const std::string sq = square_file();
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"value", {"eval", "--body", sq, "--val", R"({"kind":"psi","p":1,"q":1})"}},
      {"steiner", {"steiner", "--body", sq, "--val", R"({"kind":"xi","p":1,"q":1})"}},
      {"translation", {"translate", "--body", sq, "--val", R"({"kind":"xi","p":2,"q":1})", "--j", "1"}},
      {"fit_reports", {"verify", "degree", "--trials", "2", "--seed", "1"}},
      {"dimension_table", {"dims", "--group", "SO", "--dmax", "2", "--lmax", "4"}},
      {"fit_report", {"fit", "--val", R"({"kind":"xi","p":2,"q":0})", "--eps", "1", "--seed", "2"}},
      {"mixed_report", {"ineq", "--theorem", "6.2", "--seed", "1", "--body", sq, "--body", sq, "--body", sq, "--body", sq}},
      {"monotonicity_report", {"ineq", "--theorem", "monotonicity", "--j", "2", "--dim", "1", "--trials", "20", "--seed", "1"}},
      {"experiment_report", {"ineq", "--theorem", "search", "--count", "3", "--trials", "2", "--seed", "1"}},
  };
  for (const auto& [kind, args] : cases) {
    INFO(kind);
    const auto r = run(args);
    REQUIRE(r.code == 0);
    REQUIRE(io::dump(io::revalidate(kind, io::parse_json(r.out))) == r.out);
  }
}

TEST_CASE("exit codes", "[cli]") {
  const std::string sq = square_file();
  const auto bad_json = run({"eval", "--body", sq, "--val", "{\"kind\":\"xi\",\n\"p\":2 \"q\":0}"});
  REQUIRE(bad_json.code == 2);
  REQUIRE(bad_json.err.find("<argument>:2:9") != std::string::npos);
  REQUIRE(run({"eval", "--body", sq, "--val", R"({"kind":"xi","p":2})"}).code == 2);
  REQUIRE(run({"eval", "--body", "/nonexistent.json", "--val", R"({"kind":"xi","p":2,"q":0})"}).code == 2);
  REQUIRE(run({"frobnicate"}).code == 2);
  REQUIRE(run({}).code == 2);
  REQUIRE(run({"dims", "--bogus"}).code == 2);
  REQUIRE(run({"verify", "additivity"}).code == 2);
  REQUIRE(run({"verify", "sideways", "--seed", "1"}).code == 2);
  REQUIRE(run({"dims", "--format", "xml"}).code == 2);
  REQUIRE(run({"dims", "--tol", "x=1"}).code == 2);
  REQUIRE(run({"steiner", "--body", sq, "--val", R"({"kind":"xi","p":2,"q":0})", "--tol", "steiner=abc"}).code == 2);
  REQUIRE(run({"crofton", "--dim", "3", "--k", "3", "--seed", "1"}).code == 2);
  // an impossible tolerance turns a passing verdict into a failure
  REQUIRE(run({"translate", "--body", sq, "--val", R"({"kind":"moment","m":1})"}).code == 0);
  REQUIRE(run({"translate", "--body", sq, "--val", R"({"kind":"moment","m":1})", "--tol", "translation=1e-300"}).code == 1);
  // moment(2) has degree 4 and is not in the degree-2 span
  REQUIRE(run({"fit", "--val", R"({"kind":"moment","m":2})", "--ell", "2", "--seed", "3"}).code == 1);
}

TEST_CASE("help documents every flag", "[cli]") {
  const auto top = run({"--help"});
  REQUIRE(top.code == 0);
  for (const char* s : {"eval", "steiner", "translate", "verify", "dims", "fit", "crofton", "project-formula", "ineq", "oracle"}) REQUIRE(top.out.find(s) != std::string::npos);
  const auto all = run({"--help-all"});
  REQUIRE(all.code == 0);
  for (const char* f : {"--body", "--val", "--seed", "--threads", "--tol", "--out", "--format", "--theorem", "--planes", "--archive", "--samples", "--group", "--dmax", "--lmax"}) {
    INFO(f);
    REQUIRE(all.out.find(f) != std::string::npos);
  }
  const auto sub = run({"ineq", "--help"});
  REQUIRE(sub.code == 0);
  REQUIRE(sub.out.find("monotonicity") != std::string::npos);
}
