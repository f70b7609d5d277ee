#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intertwine/suites.hpp"

using namespace intertwine;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

using Row = std::vector<std::pair<std::string, nlohmann::json>>;

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return num(v.get<double>());
  return v.dump();
}

void emit(const std::vector<Row>& rows, const std::string& format) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json o = nlohmann::json::object();
      for (const auto& [k, v] : r) o[k] = v;
      arr.push_back(o);
    }
    std::cout << arr.dump(2) << "\n";
    return;
  }
  if (rows.empty()) return;
  for (std::size_t j = 0; j < rows[0].size(); ++j) std::cout << (j ? "," : "") << rows[0][j].first;
  std::cout << "\n";
  for (const auto& r : rows) {
    for (std::size_t j = 0; j < r.size(); ++j) std::cout << (j ? "," : "") << csv_cell(r[j].second);
    std::cout << "\n";
  }
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t seed) {
  if (opt->count() > 0) return seed;
  if (const char* env = std::getenv("INTERTWINE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("INTERTWINE_SEED is not an unsigned integer");
    }
  }
  return 1;
}

MultChar make_char(std::int64_t p, int level, std::int64_t exponent, bool allow_p2) {
  if (level == 0) return MultChar::trivial(p);
  if (p == 2) {
    if (!allow_p2) throw UnsupportedPrime("p = 2 requires --allow-p2");
    throw DomainError("p = 2 characters are available through the gauss table only");
  }
  return MultChar::from_exponent(p, level, exponent);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local and global intertwining eigenvalues: verification suites and tables"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::string json_out;
  bool show_tol = false, timing = false;
  std::vector<std::string> tol_over;
  std::vector<std::string> choices{"all"};
  for (const auto& s : suite_names()) choices.push_back(s);
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(choices));
  auto* seed_opt = verify->add_option("--seed", seed, "RNG seed (fallback: INTERTWINE_SEED)");
  verify->add_option("--json", json_out, "write the report as JSON");
  verify->add_flag("--tolerances", show_tol, "print default tolerances and exit");
  verify->add_option("--tol", tol_over, "override a tolerance, suite=value");
  verify->add_flag("--timing", timing, "include wall_time in the JSON report");

  auto* mu = app.add_subcommand("mu", "tabulate local eigenvalues on the unitary axis");
  std::string place, format = "csv";
  int n0 = 0;
  double mu_exp = 0.0, sigma = 0.0;
  std::vector<int> ns{0};
  std::vector<double> ys{0.0};
  std::int64_t p = 3;
  int psi_c = 0, xi_level = 0, eta_level = 0;
  std::int64_t xi_exp = 1, eta_exp = 1;
  bool allow_p2 = false;
  mu->add_option("--place", place, "real | complex | finite")->required()->check(
      CLI::IsMember({"real", "complex", "finite"}));
  mu->add_option("--n0", n0, "archimedean n0");
  mu->add_option("--mu", mu_exp, "twist exponent");
  mu->add_option("--n", ns, "K-type indices (finite: levels)")->expected(1, -1);
  mu->add_option("--y", ys, "imaginary parts of s")->expected(1, -1);
  mu->add_option("--sigma", sigma, "real part of s");
  mu->add_option("--p", p, "prime (finite place)");
  mu->add_option("--psi-c", psi_c, "conductor exponent of psi");
  mu->add_option("--xi-level", xi_level, "conductor of xi (0 = trivial)");
  mu->add_option("--xi-exp", xi_exp, "exponent of xi on the generator");
  mu->add_option("--eta-level", eta_level, "conductor of omega xi^{-1} (0 = trivial)");
  mu->add_option("--eta-exp", eta_exp, "exponent of omega xi^{-1} on the generator");
  mu->add_flag("--allow-p2", allow_p2, "permit p = 2");
  mu->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* gauss = app.add_subcommand("gauss", "tabulate normalized Gauss sums");
  std::int64_t gp = 3;
  int m_max = 1, gpsi_c = 0;
  bool gallow_p2 = false;
  std::string gformat = "csv";
  gauss->add_option("--p", gp, "prime")->required();
  gauss->add_option("--m-max", m_max, "largest conductor exponent");
  gauss->add_option("--psi-c", gpsi_c, "conductor exponent of psi");
  gauss->add_flag("--allow-p2", gallow_p2, "permit p = 2");
  gauss->add_option("--format", gformat, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      auto tol = default_tolerances();
      for (const auto& o : tol_over) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || tol.find(o.substr(0, eq)) == tol.end())
          throw DomainError("bad --tol value: " + o);
        tol[o.substr(0, eq)] = std::stod(o.substr(eq + 1));
      }
      if (show_tol) {
        for (const auto& [k, v] : tol) std::cout << k << " " << num(v) << "\n";
        return 0;
      }
      const auto s = resolve_seed(seed_opt, seed);
      const Report r = run_suite(suite, s, tol);
      std::cout << r.suite << ": " << r.cases.size() << " cases, " << r.failures() << " failed, max diff "
                << num(r.max_diff()) << ", " << (r.passed() ? "PASS" : "FAIL") << "\n";
      for (const auto& c : r.cases)
        if (!c.pass) std::cout << "  FAIL " << c.key << " diff " << num(c.abs_diff) << "\n";
      std::cerr << "wall time " << r.wall_time << " s\n";
      if (!json_out.empty()) {
        std::ofstream os(json_out);
        if (!os) throw DomainError("cannot write " + json_out);
        os << r.dump(timing) << "\n";
      }
      return r.passed() ? 0 : kExitFail;
    }

    if (mu->parsed()) {
      std::vector<Row> rows;
      for (int n : ns)
        for (double y : ys) {
          const cplx s(sigma, y);
          cplx v, d;
          if (place == "finite") {
            padic::check_prime(p, allow_p2);
            FiniteParams f{p, s, mu_exp, make_char(p, xi_level, xi_exp, allow_p2),
                           make_char(p, eta_level, eta_exp, allow_p2), AddChar{p, psi_c}};
            v = mu_finite(f, n);
            d = mu_finite_derivative(f, n).exact;
          } else {
            const ArchParams a{place == "real" ? Place::RealPlace : Place::ComplexPlace, mu_exp, n0, s};
            v = mu_arch(a, n).value;
            d = mu_arch_derivative(a, n).exact;
          }
          rows.push_back({{"place", place},
                          {"n", n},
                          {"y", y},
                          {"re", v.real()},
                          {"im", v.imag()},
                          {"modulus", std::abs(v)},
                          {"dmu_re", d.real()},
                          {"dmu_im", d.imag()}});
        }
      emit(rows, format);
      return 0;
    }

    if (gauss->parsed()) {
      padic::check_prime(gp, gallow_p2);
      if (m_max < 1) throw RangeError("--m-max must be >= 1");
      std::vector<Row> rows;
      const AddChar psi{gp, gpsi_c};
      for (const auto& chi : MultChar::all_mod(gp, m_max, gallow_p2)) {
        if (chi.is_trivial()) continue;
        const cplx g = gauss_normalized(chi, psi);
        rows.push_back({{"character", chi.label()},
                        {"conductor", chi.conductor()},
                        {"re", g.real()},
                        {"im", g.imag()},
                        {"modulus", std::abs(g)}});
      }
      emit(rows, gformat);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
