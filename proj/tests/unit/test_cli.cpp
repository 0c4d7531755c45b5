#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "io.hpp"

using namespace espo;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory removed at scope exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("espo_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& contents) const {
    io::write_file(dir / name, contents);
    return (dir / name).string();
  }
};

io::Json report(const Run& r) { return io::parse_json(r.out, "report"); }

}  // namespace

TEST_CASE("usage errors exit with 64") {
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"counterexample", "--nope"}).code == cli::kExitUsage);
  CHECK(run({"--format", "xml", "sumprod"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("counterexample report") {
  const Run r = run({"counterexample", "--N", "2", "--samples", "10", "--skip-cgp"});
  REQUIRE(r.code == 0);
  const io::Json j = report(r);
  CHECK(j["tool"] == "espo");
  CHECK(j["seed"] == 0);
  CHECK(j["inputs_digest"].get<std::string>().size() == 16);
  CHECK(j["result"]["count"] == 408);
  CHECK(j["result"]["size"] == 32);
  CHECK(j["result"]["ratio_to_square"] == "51/128");
  CHECK(j["result"]["z22"]["residual_b"] == "0");
  CHECK_FALSE(j.contains("advisory (floating)"));
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  const std::vector<std::string> base{"sumprod", "--construction", "elliptic", "--size", "12"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> a = extra;
    a.insert(a.end(), base.begin(), base.end());
    return run(a).out;
  };
  const std::string once = with({"--threads", "1"});
  CHECK(once == with({"--threads", "1"}));
  CHECK(once == with({"--threads", "4"}));
  CHECK(with({"--seed", "5"}) != once);
}

TEST_CASE("count over files") {
  Scratch s;
  const std::string v = s.file("v.json", R"({"arity": 4, "mode": "lattice", "group": "multiplicative:1:2",
                                              "constraints": [[1,0,1,1],[0,1,2,2]]})");
  std::string pts;
  for (int k = -10; k <= 10; ++k) pts += std::to_string(k) + "\n";
  const std::string x = s.file("x.pts", "# 2^k\n" + pts);
  const Run r = run({"count", "--variety", v, "--sets", x, "--strategy", "brute"});
  REQUIRE(r.code == 0);
  const io::Json j = report(r);
  CHECK(j["result"]["count"] == 201);
  CHECK(j["result"]["N"] == 21);
  CHECK(j["result"]["bound"] == 441);
  CHECK(j["result"]["ratio"] == "67/147");

  const Run csv = run({"--format", "csv", "count", "--variety", v, "--sets", x});
  CHECK(csv.out == "N,count,bound,ratio\n21,201,441,67/147\n");

  CHECK(run({"count", "--variety", v, "--sets", x, x}).code == cli::kExitValidation);
  CHECK(run({"count", "--variety", v, "--sets", x, "--strategy", "brute", "--budget", "5"}).code == cli::kExitBudget);
  CHECK(run({"count", "--variety", (s.dir / "missing.json").string(), "--sets", x}).code == cli::kExitValidation);
  const std::string broken = s.file("b.json", "{\"arity\": ");
  CHECK(run({"count", "--variety", broken, "--sets", x}).code == cli::kExitValidation);
  const std::string bad_pts = s.file("bad.pts", "1\nfoo\n");
  const Run e = run({"count", "--variety", v, "--sets", bad_pts});
  CHECK(e.code == cli::kExitValidation);
  CHECK(e.err.find(":2:") != std::string::npos);
}

TEST_CASE("poly and graph varieties from JSON") {
  Scratch s;
  const std::string poly = s.file("p.json", R"({"arity": 4, "mode": "poly", "dim": 2, "ambient": "multiplicative:1:2",
      "constraints": [[[1,[1,0,1,1]],[-1,[0,0,0,0]]], [[1,[0,1,2,2]],["-1",[0,0,0,0]]]]})");
  const std::string graph = s.file("g.json", R"({"arity": 4, "mode": "graph", "group": "multiplicative:1:2",
      "constraints": [{"target": 0, "terms": [[2,-1],[3,-1]]}, {"target": 1, "terms": [[2,-2],[3,-2]]}]})");
  std::string pts;
  for (int k = -10; k <= 10; ++k) pts += std::to_string(k) + "\n";
  const std::string x = s.file("x.pts", pts);
  for (const auto& v : {poly, graph}) {
    const Run r = run({"count", "--variety", v, "--sets", x});
    REQUIRE(r.code == 0);
    CHECK(report(r)["result"]["count"] == 201);
  }
}

TEST_CASE("fit CSV header") {
  const Run r = run({"--format", "csv", "fit", "--family", "geometric", "--values", "8", "16"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("N,count,bound,ratio\n17,133,289,133/289\n", 0) == 0);
  const Run j = run({"fit", "--family", "geometric", "--values", "8", "16"});
  CHECK(report(j)["advisory (floating)"].contains("slope"));
  CHECK(run({"fit", "--family", "geometric", "--values", "8"}).code == cli::kExitValidation);
}

TEST_CASE("cgp, incidences and matroid reports") {
  Scratch s;
  const Run c = run({"cgp", "--grid", "2", "--C", "1", "--tau", "6"});
  REQUIRE(c.code == 0);
  CHECK(report(c)["result"]["passed"] == false);
  CHECK(report(c)["result"]["worst_count"] == 16);

  const std::string lines = s.file("l.txt", "1,0,0\n0,1,0\n1,0,-1\n0,1,-1\n1,0,-2\n0,1,-2\n1,-1,0\n1,1,-2\n");
  const Run i = run({"incidences", "--grid", "3", "--lines", lines});
  REQUIRE(i.code == 0);
  CHECK(report(i)["result"]["count"] == 24);

  const Run m = run({"matroid", "--matroid", s.file("f.json", R"({"preset": "fano"})")});
  REQUIRE(m.code == 0);
  const io::Json fano = report(m)["result"];
  CHECK(fano["pregeometry"]["holds"] == true);
  CHECK(fano["modularity"]["holds"] == true);
  CHECK(fano["projective_space"]["status"] == "recognized");
  CHECK(fano["projective_space"]["q"] == 2);

  const Run a = run({"matroid", "--matroid", s.file("a.json", R"({"preset": "affine_plane", "q": 3})")});
  REQUIRE(a.code == 0);
  CHECK(report(a)["result"]["modularity"]["holds"] == false);
  CHECK_FALSE(report(a)["result"].contains("decomposition"));

  const Run t = run({"matroid", "--matroid", s.file("t.json", R"({"n": 2, "backend": "table", "ranks": [0,2,1,2]})")});
  REQUIRE(t.code == 0);
  CHECK(report(t)["result"]["pregeometry"]["failed_axiom"] == "unit_increase");
}

TEST_CASE("construct writes point files") {
  Scratch s;
  const std::string path = (s.dir / "q.pts").string();
  const Run r = run({"construct", "--kind", "quaternion", "--N", "1", "--points-out", path});
  REQUIRE(r.code == 0);
  CHECK(report(r)["result"]["size"] == 81);
  const PointSet back = io::parse_points(quaternion_torus(), io::read_file(path), path);
  CHECK(back.size() == 81);

  const Run f = run({"--format", "csv", "construct", "--kind", "filtration", "--filtration", "base", "--check-max", "2"});
  CHECK(f.out == "n,level_size\n0,3\n1,5\n2,9\n");
  CHECK(run({"construct", "--kind", "quaternion", "--generator", "2,2,2,2"}).code == cli::kExitValidation);
}

TEST_CASE("unwritable output path is an I/O error") {
  const Run r = run({"--out", "/nonexistent-dir/report.json", "sumprod", "--size", "3"});
  CHECK(r.code == cli::kExitValidation);
}

TEST_CASE("config files set defaults that flags override") {
  Scratch s;
  const std::string cfg = s.file("c.toml", "[sumprod]\nsize = 5\n");
  CHECK(report(run({"--config", cfg, "sumprod"}))["result"]["size"] == 5);
  CHECK(report(run({"--config", cfg, "sumprod", "--size", "7"}))["result"]["size"] == 7);
}
