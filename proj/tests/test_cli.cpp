#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "bergman_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string("\"") + BERGMAN_CLI + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                          (scratch() / "stderr.txt").string() + "\"";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  return r;
}

}  // namespace

TEST_CASE("transform report") {
  const Run r = run("transform --domain halfplane --fn rational:0,-1 --points list:0,-2 --tol 1e-10");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "bergman-report/1");
  CHECK(j.at("command") == "transform");
  CHECK(j.at("config").at("tol") == 1e-10);
  const auto& v = j.at("data").at("values").at(0).at("value");
  CHECK(std::abs(v.at(0).get<double>() - 3.14159265358979 / 9.0) < 1e-8);
  CHECK(std::abs(v.at(1).get<double>()) < 1e-8);

  SUBCASE("repeated runs are byte-identical") {
    CHECK(run("transform --domain sector --fn kernel:0.5,0.5 --points gen:random:3 --seed 5").out ==
          run("transform --domain sector --fn kernel:0.5,0.5 --points gen:random:3 --seed 5").out);
  }
  SUBCASE("csv output") {
    const Run c = run("transform --domain halfplane --fn rational:0,-1 --points list:0,-2 --format csv");
    CHECK(c.status == 0);
    CHECK(c.out.rfind("check_id,domain,kind,value,expected,tol,pass,converged\n", 0) == 0);
  }
}

TEST_CASE("exit codes") {
  SUBCASE("point inside the domain is a failed check") {
    const Run r = run("transform --domain halfplane --fn rational:0,-1 --points list:0,2");
    CHECK(r.status == 1);
    CHECK(r.out.find("xi-inside-domain") != std::string::npos);
  }
  SUBCASE("malformed domain file") {
    const fs::path bad = scratch() / "bad_domain.json";
    std::ofstream(bad) << R"({"variant": "sector", "parameters": {"opening": )";
    CHECK(run("transform --domain \"" + bad.string() + "\" --fn rational:0,-1 --points list:0,-2").status == 2);
  }
  SUBCASE("unknown variant and bad flags") {
    const fs::path bad = scratch() / "triangle.json";
    std::ofstream(bad) << R"({"variant": "triangle", "parameters": {}})";
    CHECK(run("reflect --domain \"" + bad.string() + "\" --points list:0,-2").status == 2);
    CHECK(run("transform --no-such-flag").status == 2);
    CHECK(run("transform --domain halfplane --fn rational:0,-1 --points list:0,-2 --norm counting").status == 2);
  }
  SUBCASE("exhausted cell budget") {
    // the Gram of (., .)_1 is always assembled by quadrature
    const Run r = run("operators build --domain halfplane --points gen:annulus:3 --max-cells 4");
    CHECK(r.status == 3);
    CHECK(nlohmann::json::parse(r.out).at("config").at("quad").at("max_cells") == 4);
  }
  SUBCASE("half-plane acceptance battery passes") {
    CHECK(run("suite --domain halfplane").status == 0);
  }
}

TEST_CASE("schema") {
  const Run r = run("schema");
  CHECK(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("acceptance").size() == 13);
  CHECK(j.at("check_entry").contains("check_id"));
}
