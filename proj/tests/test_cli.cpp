#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "cli.hpp"
#include "critgroup/pipeline.hpp"

using namespace critgroup::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "critgroup");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << contents;
  return p;
}

}  // namespace

TEST_CASE("group command, human output") {
  const Run a = run_args({"group", "2,3", "--method", "closed"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("K(G) = Z/2 ⊕ Z/6") != std::string::npos);
  CHECK(a.out.find("trees: 12") != std::string::npos);

  const Run b = run_args({"group", "2,2,2,2", "--method", "snf"});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("K(G) = Z/4 ⊕ Z/8 ⊕ Z/8") != std::string::npos);
  CHECK(b.out.find("trees: 256") != std::string::npos);

  for (const char* m : {"snf", "pipeline", "closed"}) {
    const Run c = run_args({"group", "2,2", "--method", m});
    CHECK(c.code == kExitOk);
    CHECK(c.out.find("K(G) = Z/4\n") != std::string::npos);
    CHECK(c.out.find("trees: 4") != std::string::npos);
  }
}

TEST_CASE("group command, errors and refusals") {
  CHECK(run_args({"group", "2,x"}).code == kExitUsage);
  CHECK(run_args({"group", "2"}).code == kExitUsage);
  CHECK(run_args({"group", "2,2", "--method", "magic"}).code == kExitUsage);
  const Run r = run_args({"group", "3,1,3", "--method", "closed"});
  CHECK(r.code == kExitRefused);
  CHECK(r.err.find("refused") != std::string::npos);
  CHECK(run_args({"group", "3,1,3", "--method", "pipeline"}).code == kExitRefused);
  CHECK(run_args({"group", "2,2,2,2,2,2,2", "--method", "closed"}).code == kExitRefused);
  CHECK(run_args({"group", "3,1,3"}).code == kExitOk);
  CHECK(run_args({}).code == kExitUsage);
}

TEST_CASE("group command, JSON") {
  const Run a = run_args({"group", "2,2,2,2,2", "--method", "pipeline", "--json"});
  REQUIRE(a.code == kExitOk);
  auto j = nlohmann::json::parse(a.out);
  for (const char* key : {"spec", "method", "free_rank", "invariant_factors", "tree_count",
                          "elapsed_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["tree_count"] == 2048);
  CHECK(j["free_rank"] == 0);
  CHECK(j["method"] == "pipeline");
  CHECK(j["stages"].size() == 4);

  const Run b = run_args({"group", "2,2,2,2,2", "--method", "pipeline", "--json"});
  auto k = nlohmann::json::parse(b.out);
  j.erase("elapsed_ms");
  k.erase("elapsed_ms");
  CHECK(j.dump() == k.dump());

  const Run big = run_args({"group", "9,9,9,9,9,9", "--json"});
  auto g = nlohmann::json::parse(big.out);
  CHECK(g["tree_count"].is_string());
  CHECK(g["spec"] == "9,9,9,9,9,9");
}

TEST_CASE("verify command") {
  const Run a = run_args({"verify", "2,2,2,2,2"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("PASS  2,2,2,2,2") != std::string::npos);
  CHECK(a.out.find("sigma1=2 sigma2=4") != std::string::npos);

  const Run b = run_args({"verify", "3,1,3"});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("refused") != std::string::npos);

  const Run c = run_args({"verify", "--grid", "k=2..3", "n=2..3", "--threads", "3"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.find("12 specs, 12 passed, 0 failed") != std::string::npos);
  // sorted by k, then by parts, whatever the thread count
  CHECK(c.out == run_args({"verify", "--grid", "k=2..3", "n=2..3", "--threads", "1"}).out);
  CHECK(c.out.find("PASS  2,2 ") < c.out.find("PASS  3,3 "));
  CHECK(c.out.find("PASS  3,3 ") < c.out.find("PASS  2,2,2 "));

  CHECK(run_args({"verify", "--grid", "k=2..8", "n=1..4"}).code == kExitUsage);
  CHECK(run_args({"verify", "--grid", "k=3..2", "n=1..4"}).code == kExitUsage);
  CHECK(run_args({"verify"}).code == kExitUsage);
}

TEST_CASE("snf command") {
  const auto diag = temp_file("critgroup_diag.txt", "2 2\n4 0\n0 6\n");
  const Run a = run_args({"snf", diag.string()});
  CHECK(a.code == kExitOk);
  CHECK(a.out == "1: 2\n2: 12\n");

  const auto id = temp_file("critgroup_id.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n");
  CHECK(run_args({"snf", id.string()}).out == "1: 1\n2: 1\n3: 1\n");

  const auto l3 = temp_file("critgroup_l3.txt",
                            critgroup::to_text(critgroup::extract_L3(critgroup::LayeredSpec({2, 2})).l3));
  const Run t = run_args({"snf", l3.string(), "--transforms"});
  CHECK(t.code == kExitOk);
  CHECK(t.out.find("1: 1\n2: 1\n3: 4\n4: 0\n") == 0);
  CHECK(t.out.find("P:\n4 4\n") != std::string::npos);
  CHECK(t.out.find("Q:\n4 4\n") != std::string::npos);

  const auto bad = temp_file("critgroup_bad.txt", "2 2\n1 2\n3\n");
  CHECK(run_args({"snf", bad.string()}).code == kExitUsage);
  CHECK(run_args({"snf", "/nonexistent/matrix.txt"}).code == kExitUsage);
}

TEST_CASE("export command") {
  const auto path = std::filesystem::temp_directory_path() / "critgroup_fig.dot";
  const Run a = run_args({"export", "6,4,5,3,4", "--dot", path.string()});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("22 nodes, 71 edges") != std::string::npos);
  std::ifstream in(path);
  const std::string dot((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(dot.find("cluster_p5") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '-') == 2 * 71);

  CHECK(run_args({"export", "1,1", "--dot", path.string()}).out.find("2 nodes, 1 edges") !=
        std::string::npos);
  CHECK(run_args({"export", "2,2", "--dot", "/nonexistent/dir/x.dot"}).code == kExitUsage);
  CHECK(run_args({"export", "2;2", "--dot", path.string()}).code == kExitUsage);
}
