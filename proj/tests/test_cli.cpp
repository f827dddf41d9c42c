#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "umt/newick.hpp"
#include "umt/tree.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = umt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("umtree_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& text) const {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("build") {
  Scratch s;
  const auto a = s.file("a.nwk", "((((a,b),c),d),e);\n");
  const auto b = s.file("b.nwk", "((((a,b),c),f),e);\n");
  auto r = run({"build", a, b});
  REQUIRE(r.code == 0);
  auto stats = nlohmann::json::parse(r.err);
  CHECK(stats["result"] == "compatible");
  CHECK(stats["search_nodes"] == 0);
  CHECK(stats["n"] == 6);
  for (const char* key : {"variables", "propagators", "wakes", "build_ms", "solve_ms"}) CHECK(stats.contains(key));

  const auto super = s.file("super.nwk", r.out);
  CHECK(run({"check", super, a, b}).code == 0);

  const auto out = s.path("out.nwk");
  auto w = run({"build", a, b, "-o", out});
  CHECK(w.code == 0);
  CHECK(w.out.empty());
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line + "\n" == r.out);
}

TEST_CASE("build exit codes") {
  Scratch s;
  const auto p = s.file("p.nwk", "((a,b),c);\n");
  const auto q = s.file("q.nwk", "((a,c),b);\n");
  auto r = run({"build", p, q});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(r.err)["result"] == "incompatible");

  auto bad = run({"build", s.file("bad.nwk", "((a,b),c\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("at 9") != std::string::npos);
  CHECK(run({"build", s.path("missing.nwk")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("build with constraints and taxa") {
  Scratch s;
  const auto t1 = s.file("t1.nwk", "((a,c),x);\n");
  const auto t2 = s.file("t2.nwk", "(b,x);\n");
  const auto side = s.file("side.txt", "predates a c a b\n");
  auto r = run({"build", t1, t2, "--constraints", side});
  REQUIRE(r.code == 0);
  CHECK(umt::isomorphic(umt::parse_newick(r.out), umt::parse_newick("(((a,b),c),x);")));
  CHECK(run({"build", t1, "--constraints", s.file("bad.txt", "later a b\n")}).code == 2);

  const auto n1 = s.file("n1.nwk", "((a,b)P,c);\n");
  const auto n2 = s.file("n2.nwk", "(P,(d,e));\n");
  auto n = run({"build", n1, n2});
  REQUIRE(n.code == 0);
  auto tree = umt::parse_newick(n.out);
  CHECK(tree.find("P"));
  CHECK(umt::perfectly_displays(tree, umt::parse_newick("((a,b)P,c);")));
}

TEST_CASE("greedy, necessity, explain") {
  Scratch s;
  const auto p = s.file("p.nwk", "((a,b),c);\n");
  const auto q = s.file("q.nwk", "((a,c),b);\n");

  auto g = run({"greedy", p, q});
  CHECK(g.code == 0);
  auto report = nlohmann::json::parse(g.err);
  CHECK(report["accepted"] == nlohmann::json::array({"(a,b)c"}));
  CHECK(report["rejected"] == nlohmann::json::array({"(a,c)b"}));

  auto n = run({"necessity", p, "--soft", "--atom", "(a,b)c"});
  CHECK(n.code == 0);
  CHECK(n.out == "necessary\n");
  CHECK(run({"necessity", p, "--atom", "(a,c)b"}).out == "not-necessary\n");
  CHECK(run({"necessity", p, q, "--atom", "(a,b)c"}).code == 3);
  CHECK(run({"necessity", p, "--atom", "(a,b"}).code == 2);
  CHECK(run({"necessity", p}).code == 2);

  auto e = run({"explain", p, q});
  CHECK(e.code == 0);
  CHECK(nlohmann::json::parse(e.out) == nlohmann::json::array({"(a,b)c", "(a,c)b"}));
  CHECK(run({"explain", p}).code == 3);
}

TEST_CASE("breakup and check") {
  Scratch s;
  const auto t = s.file("t.nwk", "((a,b),c);\n");
  auto r = run({"breakup", "--soft", t});
  CHECK(r.code == 0);
  CHECK(r.out == "(a,b)c\n");
  CHECK(run({"breakup", s.file("f.nwk", "(a,b,c,d);\n")}).out == "(a,b,c)\n(a,b,d)\n(a,c,d)\n(b,c,d)\n");
  CHECK(run({"check", t, t}).code == 0);
  CHECK(run({"check", t, s.file("u.nwk", "((a,c),b);\n")}).code == 1);
  CHECK(run({"check", t, s.file("v.nwk", "((a,z),b);\n")}).code == 1);
  CHECK(run({"check", t}).code == 2);
}

TEST_CASE("enumerate") {
  Scratch s;
  auto r = run({"enumerate", "--soft", s.file("f.nwk", "(a,b,c);\n"), "--limit", "10"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  auto one = run({"enumerate", "--soft", s.file("f2.nwk", "(a,b,c);\n"), "--limit", "1"});
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == 1);
}

TEST_CASE("gen pipeline") {
  Scratch s;
  auto a = run({"gen", "--leaves", "6", "--trees", "3", "--seed", "7"});
  auto b = run({"gen", "--leaves", "6", "--trees", "3", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 3);
  CHECK(run({"gen", "--prune", "1.5"}).code == 2);

  for (int seed = 1; seed <= 10; ++seed) {
    auto g = run({"gen", "--leaves", "25", "--trees", "4", "--prune", "0.4", "--seed", std::to_string(seed)});
    const auto forest = s.file("g.nwk", g.out);
    auto built = run({"build", forest});
    REQUIRE(built.code == 0);
    CHECK(run({"check", s.file("s.nwk", built.out), forest}).code == 0);
  }
}

TEST_CASE("bench") {
  auto r = run({"bench", "--sizes", "10,20"});
  REQUIRE(r.code == 0);
  auto rows = nlohmann::json::parse(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["result"] == "compatible");
  CHECK(rows[1]["result"] == "incompatible");
}

}
