// Command-line front end: instance I/O, algorithm dispatch, verification
// reports. Exit codes: 0 ok, 2 usage/input error, 3 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fdi/both_sided.hpp"
#include "fdi/frechet.hpp"
#include "fdi/instance_io.hpp"
#include "fdi/one_sided.hpp"
#include "fdi/oracle.hpp"
#include "fdi/reduction.hpp"

namespace {

int g_verbosity = [] {
  const char* env = std::getenv("FDI_LOG");
  return env ? std::atoi(env) : 0;
}();

void logv(const std::string& msg) {
  if (g_verbosity > 0) std::cerr << "[fdi] " << msg << "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fdi::InstanceDocument load_instance(const std::string& path) {
  return fdi::parse_instance(fdi::json::parse(read_file(path)));
}

fdi::PointSeq as_points(const fdi::RegionSeq& regions) {
  fdi::PointSeq out;
  for (const auto& r : regions) out.push_back(std::get<fdi::Point>(r));
  return out;
}

fdi::BallSeq as_balls(const fdi::RegionSeq& regions) {
  fdi::BallSeq out;
  for (const auto& r : regions) out.push_back(std::get<fdi::Ball>(r));
  return out;
}

std::string path_to_string(const std::vector<fdi::Match>& matches) {
  std::string s;
  for (const auto& m : matches) {
    if (!s.empty()) s += " ";
    s += "(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")";
  }
  return s;
}

void write_json_out(const std::string& path, const fdi::json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int cmd_dfd(const std::string& input, bool shortcuts,
            const std::string& json_out) {
  fdi::InstanceDocument doc = load_instance(input);
  if (doc.u_type != "points" || doc.w_type != "points")
    throw UsageError("dfd requires both sides of type points");
  fdi::PointSeq a = as_points(doc.u), b = as_points(doc.w);
  fdi::FrechetResult res = shortcuts ? fdi::dfd_shortcut(a, b) : fdi::dfd(a, b);
  std::cout << (shortcuts ? "F_c" : "F") << " = " << fmt(res.value) << "\n";
  std::cout << "witness: " << path_to_string(res.witness.matches) << "\n";
  fdi::json j = {{"value", res.value}, {"shortcuts", shortcuts}};
  fdi::json path = fdi::json::array();
  for (const auto& m : res.witness.matches)
    path.push_back(fdi::json::array({m.i, m.j}));
  j["witness"] = path;
  write_json_out(json_out, j);
  return 0;
}

int cmd_upper(const std::string& input, const std::string& mode,
              const std::string& algo, double delta, bool has_delta,
              bool check, int directions, std::uint64_t seed,
              const std::string& json_out) {
  fdi::InstanceDocument doc = load_instance(input);
  fdi::json j;
  if (mode == "one-sided") {
    if (doc.u_type != "points" || doc.w_type != "balls")
      throw UsageError("one-sided mode requires U points and W balls");
    if (algo != "search" && algo != "dp")
      throw UsageError("one-sided algorithms: search | dp");
    fdi::PointSeq u = as_points(doc.u);
    fdi::BallSeq w = as_balls(doc.w);
    if (has_delta) {
      fdi::DecisionTrace tr = fdi::decide_one_sided(u, w, delta);
      if (tr.yes)
        std::cout << "Yes, S=[" << path_to_string(tr.matches) << "]\n";
      else
        std::cout << "No, fail_row=" << tr.fail_row << "\n";
      j = {{"yes", tr.yes}};
      write_json_out(json_out, j);
      return 0;
    }
    double value = algo == "dp" ? fdi::optimize_one_sided_dp(u, w).value
                                : fdi::optimize_one_sided_search(u, w);
    std::cout << "F_max1 = " << fmt(value) << "\n";
    j = {{"value", value}, {"algo", algo}};
    if (check) {
      double other = algo == "dp" ? fdi::optimize_one_sided_search(u, w)
                                  : fdi::optimize_one_sided_dp(u, w).value;
      fdi::RegionSeq ur, wr;
      for (const auto& p : u) ur.emplace_back(p);
      for (const auto& b : w) wr.emplace_back(b);
      fdi::RealizationScheme scheme;
      scheme.directions = directions;
      scheme.seed = seed;
      double oracle = fdi::oracle_fmax_shortcut(ur, wr, scheme);
      double rmax = 0.0;
      for (const auto& b : w) rmax = std::max(rmax, b.radius);
      double tol = 2.0 * rmax * std::sin(3.14159265358979 / (2.0 * directions));
      bool agree = other == value;
      bool sandwich = oracle <= value + 1e-9 && oracle >= value - tol - 1e-9;
      std::cout << (agree ? "agree (" + fmt(other - value) + ")"
                          : "DISAGREE (" + fmt(other - value) + ")")
                << ", oracle " << fmt(oracle)
                << (sandwich ? " within tolerance" : " OUT OF TOLERANCE")
                << "\n";
      j["cross_check"] = {{"other", other}, {"oracle", oracle},
                          {"agree", agree}, {"sandwich", sandwich}};
      write_json_out(json_out, j);
      return agree && sandwich ? 0 : 3;
    }
  } else if (mode == "both") {
    if (doc.u_type != "balls" || doc.w_type != "balls" || doc.dim != 2)
      throw UsageError("both mode requires U and W balls with dim 2");
    if (algo != "naive" && algo != "monge")
      throw UsageError("both-side algorithms: naive | monge");
    fdi::BallSeq u = as_balls(doc.u), w = as_balls(doc.w);
    if (has_delta) {
      fdi::DecisionTrace tr = fdi::decide_both(u, w, delta);
      if (tr.yes)
        std::cout << "Yes, S=[" << path_to_string(tr.matches) << "]\n";
      else
        std::cout << "No, fail_row=" << tr.fail_row << "\n";
      write_json_out(json_out, {{"yes", tr.yes}});
      return 0;
    }
    double value = algo == "naive" ? fdi::optimize_both_naive(u, w)
                                   : fdi::optimize_both_monge(u, w);
    std::cout << "F_max1 = " << fmt(value) << "\n";
    j = {{"value", value}, {"algo", algo}};
    if (check) {
      double other = algo == "naive" ? fdi::optimize_both_monge(u, w)
                                     : fdi::optimize_both_naive(u, w);
      bool agree = other == value;
      std::cout << (agree ? "agree (" : "DISAGREE (") << fmt(other - value)
                << ")\n";
      j["cross_check"] = {{"other", other}, {"agree", agree}};
      write_json_out(json_out, j);
      return agree ? 0 : 3;
    }
  } else {
    throw UsageError("mode must be one-sided or both");
  }
  write_json_out(json_out, j);
  return 0;
}

int cmd_reduce(const std::string& cnf_path, double epsilon,
               const std::string& out, bool art) {
  if (epsilon <= 0.0) throw UsageError("epsilon must be positive");
  fdi::CnfFormula f = fdi::parse_cnf(read_file(cnf_path));
  fdi::ReductionInstance inst = fdi::realize_geometry(f, epsilon);
  std::ofstream os(out);
  if (!os) throw UsageError("cannot write " + out);
  os << fdi::reduction_to_json(inst).dump(2) << "\n";
  std::cout << "grid " << inst.intended.rows << "x" << inst.intended.cols
            << ", |H|=" << inst.h.size() << ", |Q|=" << inst.q.size() << "\n";
  std::cout << "N=" << inst.layout.big_n << " theta=" << fmt(inst.layout.theta)
            << " eps'=" << fmt(inst.layout.eps_prime)
            << " eps''=" << fmt(inst.layout.eps_dprime) << "\n";
  if (art) std::cout << fdi::grid_to_art(inst.intended);
  return 0;
}

int cmd_verify(const std::string& cnf_path, double epsilon, int samples,
               std::uint64_t seed) {
  if (epsilon <= 0.0) throw UsageError("epsilon must be positive");
  fdi::CnfFormula f = fdi::parse_cnf(read_file(cnf_path));
  fdi::ChainReport rep = fdi::verify_chain(f, epsilon, samples, seed);
  std::cout << "(a) SAT=" << (rep.satisfiable ? "yes" : "no")
            << " ISCPCS-blocking=" << (rep.iscpcs_blocking ? "yes" : "no")
            << " grid-blocking=" << (rep.grid_blocking ? "yes" : "no")
            << " => " << (rep.equivalence_ok ? "consistent" : "MISMATCH")
            << "\n";
  std::cout << "(b) classified grid "
            << (rep.grid_match ? "matches" : "DIFFERS FROM")
            << " the intended grid\n";
  if (rep.grid_blocking) {
    std::cout << "(c) witness realization dfd=" << fmt(rep.witness_dfd)
              << (rep.witness_ok ? " > " : " NOT > ") << fmt(epsilon) << "\n";
  } else {
    std::cout << "(d) no blocking (UNSAT side); max sampled dfd="
              << fmt(rep.max_sampled_dfd)
              << (rep.sampled_ok ? " <= " : " NOT <= ") << fmt(epsilon) << "\n";
  }
  for (const auto& issue : rep.issues) std::cout << "issue: " << issue << "\n";
  std::cout << (rep.pass() ? "all checks pass" : "verification FAILED") << "\n";
  return rep.pass() ? 0 : 3;
}

int cmd_oracle(const std::string& input, bool shortcuts, int directions,
               std::uint64_t cap, std::uint64_t seed) {
  fdi::InstanceDocument doc = load_instance(input);
  fdi::RealizationScheme scheme;
  scheme.directions = directions;
  scheme.combo_cap = cap;
  scheme.seed = seed;
  double value;
  if (shortcuts) {
    value = fdi::oracle_fmax_shortcut(doc.u, doc.w, scheme);
  } else {
    if (doc.w_type != "points")
      throw UsageError("oracle without --shortcuts requires W of type points");
    value = fdi::oracle_fmax(doc.u, as_points(doc.w), scheme);
  }
  std::cout << "oracle " << (shortcuts ? "F_max1" : "F_max")
            << " >= " << fmt(value) << " (K=" << directions << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete Frechet distance upper bounds for imprecise input"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string json_out;
  app.add_option("--seed", seed, "seed for randomized components");
  app.add_option("--json-out", json_out, "write a JSON report to this path");

  std::string input, cnf_path, out_path, mode = "one-sided", algo = "dp";
  double delta = 0.0, epsilon = 1.0;
  bool shortcuts = false, check = false, art = false;
  int directions = 16, samples = 100;
  std::uint64_t cap = 50'000'000;

  auto* c_dfd = app.add_subcommand("dfd", "discrete Frechet distance of precise sequences");
  c_dfd->add_option("--input", input)->required();
  c_dfd->add_flag("--shortcuts", shortcuts, "allow shortcuts on side B (F_c)");

  auto* c_upper = app.add_subcommand("upper", "F_max1 upper-bound algorithms");
  c_upper->add_option("--input", input)->required();
  c_upper->add_option("--mode", mode, "one-sided | both");
  c_upper->add_option("--algo", algo, "search | dp | naive | monge");
  auto* delta_opt = c_upper->add_option("--delta", delta, "run the decision procedure");
  c_upper->add_flag("--check", check, "cross-run the alternate algorithm and oracle");
  c_upper->add_option("--K", directions, "oracle directions per ball");

  auto* c_reduce = app.add_subcommand("reduce", "build a hardness-reduction instance");
  c_reduce->add_option("--cnf", cnf_path)->required();
  c_reduce->add_option("--epsilon", epsilon)->required();
  c_reduce->add_option("--out", out_path)->required();
  c_reduce->add_flag("--art", art, "print the grid as text art");

  auto* c_verify = app.add_subcommand("verify", "verify the full reduction chain");
  c_verify->add_option("--cnf", cnf_path)->required();
  c_verify->add_option("--epsilon", epsilon)->required();
  c_verify->add_option("--samples", samples, "realizations sampled on the UNSAT side");

  auto* c_oracle = app.add_subcommand("oracle", "brute-force realization oracle");
  c_oracle->add_option("--input", input)->required();
  c_oracle->add_flag("--shortcuts", shortcuts, "maximize F_c instead of F");
  c_oracle->add_option("--K", directions, "directions per ball");
  c_oracle->add_option("--cap", cap, "realization enumeration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_dfd->parsed()) return cmd_dfd(input, shortcuts, json_out);
    if (c_upper->parsed())
      return cmd_upper(input, mode, algo, delta, delta_opt->count() > 0, check,
                       directions, seed, json_out);
    if (c_reduce->parsed()) return cmd_reduce(cnf_path, epsilon, out_path, art);
    if (c_verify->parsed()) return cmd_verify(cnf_path, epsilon, samples, seed);
    if (c_oracle->parsed())
      return cmd_oracle(input, shortcuts, directions, cap, seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_variant_access&) {
    std::cerr << "error: region type does not match the command\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  logv("no subcommand dispatched");
  return 2;
}
