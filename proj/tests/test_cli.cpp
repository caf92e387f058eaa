#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fdi/instance_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "fdi_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("FDI_CLI");
  REQUIRE(bin != nullptr);
  fs::path out = work_dir() / "run_output.txt";
  std::string cmd = std::string(bin) + " " + args + " > " + out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = status;
#else
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  std::ifstream in(out);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
  fs::path p = work_dir() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("dfd command") {
  fs::path inst = write_file("pts.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"points","items":[[3,4]]}})");
  RunResult r = run_cli("dfd --input " + inst.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("F = 5") != std::string::npos);

  fs::path cut = write_file("cut.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"points","items":[[100,0],[0,0]]}})");
  RunResult rc = run_cli("dfd --shortcuts --input " + cut.string());
  CHECK(rc.exit_code == 0);
  CHECK(rc.output.find("F_c = 0") != std::string::npos);

  fs::path balls = write_file("balls.json", R"({"dim":2,
    "U":{"type":"balls","items":[{"center":[0,0],"radius":1}]},
    "W":{"type":"points","items":[[3,4]]}})");
  CHECK(run_cli("dfd --input " + balls.string()).exit_code == 2);

  CHECK(run_cli("dfd --input " + (work_dir() / "missing.json").string())
            .exit_code == 2);
}

TEST_CASE("upper command") {
  fs::path inst = write_file("one_sided.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"balls","items":[{"center":[3,4],"radius":2},
                                 {"center":[0,0],"radius":0.5}]}})");
  RunResult dp = run_cli("upper --mode one-sided --algo dp --input " + inst.string());
  CHECK(dp.exit_code == 0);
  CHECK(dp.output.find("F_max1 = 0.5") != std::string::npos);

  RunResult chk = run_cli("upper --mode one-sided --algo search --check --input " +
                          inst.string());
  CHECK(chk.exit_code == 0);
  CHECK(chk.output.find("agree") != std::string::npos);

  fs::path single = write_file("single.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"balls","items":[{"center":[3,4],"radius":2}]}})");
  RunResult dec = run_cli("upper --mode one-sided --delta 7 --input " + single.string());
  CHECK(dec.exit_code == 0);
  CHECK(dec.output.find("Yes, S=[(1,1)]") != std::string::npos);
  RunResult dec_no = run_cli("upper --mode one-sided --delta 6 --input " + single.string());
  CHECK(dec_no.exit_code == 0);
  CHECK(dec_no.output.find("No") != std::string::npos);

  fs::path both = write_file("both.json", R"({"dim":2,
    "U":{"type":"balls","items":[{"center":[0,0],"radius":1}]},
    "W":{"type":"balls","items":[{"center":[0,0],"radius":1}]}})");
  RunResult bc = run_cli("upper --mode both --algo monge --check --input " + both.string());
  CHECK(bc.exit_code == 0);
  CHECK(bc.output.find("F_max1 = 2") != std::string::npos);
  CHECK(bc.output.find("agree") != std::string::npos);

  // wrong type combination
  CHECK(run_cli("upper --mode both --algo monge --input " + inst.string())
            .exit_code == 2);
  CHECK(run_cli("upper --mode sideways --input " + inst.string()).exit_code == 2);
}

TEST_CASE("reduce command and JSON round trip") {
  fs::path cnf = write_file("f32.cnf", "p cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
  fs::path out = work_dir() / "red32.json";
  RunResult r = run_cli("reduce --cnf " + cnf.string() + " --epsilon 1 --out " +
                        out.string() + " --art");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("grid 8x12") != std::string::npos);
  CHECK(r.output.find("|H|=12") != std::string::npos);

  std::ifstream in(out);
  json doc = json::parse(in);
  fdi::ReductionInstance inst = fdi::reduction_from_json(doc);
  CHECK(fdi::reduction_to_json(inst) == doc);

  CHECK(run_cli("reduce --cnf " + cnf.string() + " --epsilon 0 --out " +
                out.string()).exit_code == 2);
  fs::path wide = write_file("wide.cnf", "p cnf 4 1\n1 2 3 4 0\n");
  CHECK(run_cli("reduce --cnf " + wide.string() + " --epsilon 1 --out " +
                out.string()).exit_code == 2);
}

TEST_CASE("verify command") {
  fs::path sat = write_file("sat.cnf", "p cnf 1 1\n1 0\n");
  RunResult rs = run_cli("verify --cnf " + sat.string() + " --epsilon 1");
  CHECK(rs.exit_code == 0);
  CHECK(rs.output.find("all checks pass") != std::string::npos);

  fs::path unsat = write_file("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  RunResult ru = run_cli("verify --cnf " + unsat.string() + " --epsilon 1");
  CHECK(ru.exit_code == 0);
  CHECK(ru.output.find("no blocking") != std::string::npos);

  // too many colors to enumerate
  std::string big = "p cnf 8 8\n";
  for (int i = 1; i <= 8; ++i) big += std::to_string(i) + " 0\n";
  fs::path huge = write_file("huge.cnf", big);
  CHECK(run_cli("verify --cnf " + huge.string() + " --epsilon 1").exit_code == 2);
}

TEST_CASE("oracle command") {
  fs::path inst = write_file("oracle.json", R"({"dim":2,
    "U":{"type":"rects","items":[{"center":[0,0],"axis":[1,0],"length":2,"width":2}]},
    "W":{"type":"points","items":[[0,0]]}})");
  RunResult r = run_cli("oracle --input " + inst.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1.41421356237") != std::string::npos);

  fs::path sc = write_file("oracle_sc.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"balls","items":[{"center":[3,4],"radius":0}]}})");
  RunResult rs = run_cli("oracle --shortcuts --K 16 --input " + sc.string());
  CHECK(rs.exit_code == 0);
  CHECK(rs.output.find(">= 5") != std::string::npos);

  // without --shortcuts, W must be precise points
  fs::path bad = write_file("oracle_bad.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"balls","items":[{"center":[3,4],"radius":1}]}})");
  CHECK(run_cli("oracle --input " + bad.string()).exit_code == 2);
}

TEST_CASE("instance JSON round trip and json-out") {
  fdi::InstanceDocument doc;
  doc.dim = 2;
  doc.u_type = "balls";
  doc.u = {fdi::Ball(fdi::Point(0.1, -2.25), 1.0 / 3.0)};
  doc.w_type = "rects";
  doc.w = {fdi::OrientedRect(fdi::Point(1, 2), 0.6, 0.8, 0.75, 0.3)};
  doc.epsilon = 1.5;
  json j = fdi::instance_to_json(doc);
  fdi::InstanceDocument back = fdi::parse_instance(j);
  CHECK(fdi::instance_to_json(back) == j);

  fs::path inst = write_file("jo.json", R"({"dim":2,
    "U":{"type":"points","items":[[0,0]]},
    "W":{"type":"points","items":[[3,4]]}})");
  fs::path report = work_dir() / "report.json";
  RunResult r = run_cli("--json-out " + report.string() + " dfd --input " +
                        inst.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(report);
  json rep = json::parse(in);
  CHECK(rep["value"].get<double>() == 5.0);
  CHECK(rep["witness"].size() == 1u);
}

TEST_CASE("usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("dfd").exit_code == 2);  // missing required --input
}
