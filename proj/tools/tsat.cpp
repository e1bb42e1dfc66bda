// tsat: certify the first-moment bound, emit curves, empirical and oracle reports.
#include <CLI11.hpp>
#include <boost/version.hpp>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tsat/certificate.hpp"
#include "tsat/errors.hpp"
#include "tsat/oracle.hpp"
#include "tsat/reports.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 2;
constexpr int kExitConfig = 3;

struct Options {
  double c = 4.506;
  int x_max = 56;
  double eps = 1e-15;
  std::string mode = "float";
  std::uint64_t seed = 20240601;
  std::string out = "run";
  double width = 1e-7;
  int density = 200;
  int n = 100000;
  int formulas = 50;
  int oracle_n = 2;
  int oracle_m = 1;
  bool serial = false;
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

void append_manifest(const Options& o, const std::string& command, const std::vector<std::string>& outputs,
                     int argc, char** argv) {
  std::ofstream f(fs::path(o.out) / "manifest.txt", std::ios::app);
  f << "[" << command << "]\n";
  f << "args:";
  for (int i = 0; i < argc; ++i) f << ' ' << argv[i];
  f << "\nseed: " << o.seed << "\n";
  f << "versions: tsat " << tsat::kVersion << ", schema " << tsat::kSchemaVersion << ", boost "
    << BOOST_VERSION / 100000 << '.' << BOOST_VERSION / 100 % 1000 << ", compiler " << __VERSION__ << ", openmp "
    << _OPENMP << "\n";
  f << "outputs:";
  for (const auto& s : outputs) f << ' ' << s;
  f << "\n\n";
}

tsat::Arithmetic parse_mode(const std::string& m) {
  if (m == "float") return tsat::Arithmetic::float_mode;
  if (m == "interval") return tsat::Arithmetic::interval_mode;
  throw tsat::ConfigError("--mode must be float or interval");
}

int run_certify(const Options& o) {
  auto cert = tsat::certify(o.c, o.x_max, o.eps, parse_mode(o.mode), o.width);
  write_file(fs::path(o.out) / "certificate.json", tsat::to_json(cert).dump(2) + "\n");
  std::cout.precision(12);
  for (const auto& s : cert.stages) std::cout << (s.ok ? "ok   " : "FAIL ") << s.name << ": " << s.message << "\n";
  std::cout << "rate " << cert.rate << " verdict " << (cert.verdict ? "true" : "false") << "\n";
  return cert.verdict ? kExitOk : kExitFalse;
}

int run_curves(const Options& o) {
  auto params = tsat::ModelParams::make(o.c, o.x_max, o.eps);
  write_file(fs::path(o.out) / "curves.csv", tsat::curves_csv(tsat::emit_curves(params, o.density)));
  return kExitOk;
}

int run_empirical(const Options& o) {
  auto exec = o.serial ? tsat::Exec::serial : tsat::Exec::parallel;
  auto r = tsat::empirical_report(o.n, o.c, o.formulas, o.seed, exec);
  write_file(fs::path(o.out) / "empirical.csv", r.csv());
  std::cout << r.summary();
  bool ok = r.within_budget && r.pps.satisfiable_without_pps == 0 && r.pps.flip_failures == 0 &&
            r.pps.pure_negative_violations == 0;
  return ok ? kExitOk : kExitFalse;
}

int run_oracle(const Options& o) {
  auto r = tsat::counting_oracle(o.oracle_n, o.oracle_m);
  std::ostringstream os;
  os << "n,m,signature,count,bound,holds\n";
  for (const auto& row : r.rows)
    os << r.n << ',' << r.m << ",\"" << row.signature << "\"," << row.count << ',' << row.bound << ','
       << (tsat::BigInt(row.count) <= row.bound ? 1 : 0) << '\n';
  write_file(fs::path(o.out) / "oracle.csv", os.str());
  std::cout << "formulas " << r.formulas << ", PPS pairs " << r.pps_pairs << " (by assignment "
            << r.pps_pairs_by_assignment << "), type-consistent " << r.type_consistent_pairs << ", signatures "
            << r.rows.size() << ", violations " << r.violations << ", max count/bound " << r.max_ratio << "\n";
  return r.ok() ? kExitOk : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify the first-moment upper bound on the random 3-SAT threshold"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--c", o.c, "clause density")->capture_default_str();
  app.add_option("--xmax", o.x_max, "truncation degree (even)")->capture_default_str();
  app.add_option("--eps", o.eps, "accuracy radius")->capture_default_str();
  app.add_option("--mode", o.mode, "float or interval")->capture_default_str();
  app.add_option("--seed", o.seed, "root seed for random experiments")->capture_default_str();
  app.add_option("--out", o.out, "run directory")->capture_default_str();

  auto* certify = app.add_subcommand("certify", "run the full certificate pipeline");
  certify->add_option("--width", o.width, "target rectangle width")->capture_default_str();
  auto* curves = app.add_subcommand("curves", "emit the eq1 = 0 and eq2 = 0 loci");
  curves->add_option("--density", o.density, "samples per curve")->capture_default_str();
  auto* empirical = app.add_subcommand("empirical", "occurrence statistics and PPS corpus checks");
  empirical->add_option("--n", o.n, "variables per formula")->capture_default_str();
  empirical->add_option("--formulas", o.formulas, "number of formulas")->capture_default_str();
  empirical->add_flag("--serial", o.serial, "use the serial kernels");
  auto* oracle = app.add_subcommand("oracle", "brute-force comparison with the counting bound");
  oracle->add_option("--n", o.oracle_n, "variables (<= 3)")->capture_default_str();
  oracle->add_option("--m", o.oracle_m, "clauses (<= 2)")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(o.out);
    int code = kExitOk;
    std::vector<std::string> outputs;
    if (*certify) {
      code = run_certify(o);
      outputs = {"certificate.json"};
    } else if (*curves) {
      code = run_curves(o);
      outputs = {"curves.csv"};
    } else if (*empirical) {
      code = run_empirical(o);
      outputs = {"empirical.csv"};
    } else if (*oracle) {
      code = run_oracle(o);
      outputs = {"oracle.csv"};
    }
    append_manifest(o, app.get_subcommands().front()->get_name(), outputs, argc, argv);
    return code;
  } catch (const tsat::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const tsat::GuardError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitConfig;
  }
}
