// Batch CLI exposing the library's quantities with machine-readable output.
//
// Exit codes: 0 success, 1 verification failure or internal error,
// 2 usage/config error, 3 desk-scale guard violation.

#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "dirsum/charsums.hpp"
#include "dirsum/format.hpp"
#include "dirsum/pi2.hpp"
#include "dirsum/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dirsum;

namespace {

struct GlobalOptions {
  int threads = 0;
  std::string mode = "fast";
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 12345;
};

SumMode parse_mode(const std::string& mode) {
  if (mode == "fast") return SumMode::kComplexDouble;
  if (mode == "exact") return SumMode::kExactHistogram;
  throw CLI::ValidationError("--mode", "must be 'fast' or 'exact'");
}

Kernel parse_kernel(const std::string& kernel) {
  if (kernel == "von-mangoldt") return Kernel::kVonMangoldt;
  if (kernel == "prime-indicator") return Kernel::kPrimeIndicator;
  throw CLI::ValidationError("--kernel", "must be 'von-mangoldt' or 'prime-indicator'");
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Buffers everything and writes in one shot, so a failed run leaves no
// partial output file behind.
class OutputSink {
 public:
  explicit OutputSink(std::string path) : path_(std::move(path)) {}

  std::ostringstream& stream() { return buf_; }

  void commit() {
    if (path_.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path_);
    out << buf_.str();
    if (!out) throw std::runtime_error("short write to output file: " + path_);
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

std::vector<std::uint64_t> units_of(std::uint64_t q) {
  std::vector<std::uint64_t> units;
  for (std::uint64_t r = 0; r < q; ++r)
    if (q == 1 || std::gcd(r == 0 ? q : r, q) == 1) units.push_back(r);
  return units;
}

std::string csv_header_sum() { return "quantity,q,x,parameters,value,elapsed_ms\n"; }

void csv_sum_row(std::ostream& os, const std::string& quantity, std::uint64_t q, std::uint64_t x,
                 const std::string& params, double value, double elapsed_ms) {
  os << quantity << ',' << q << ',' << x << ',' << csv_escape(params) << ',' << format_real(value) << ','
     << format_real(elapsed_ms) << '\n';
}

void json_sum_row(std::ostream& os, const std::string& quantity, std::uint64_t q, std::uint64_t x,
                  const std::string& params, double value, double elapsed_ms) {
  os << "{\"quantity\": \"" << quantity << "\", \"q\": " << q << ", \"x\": " << x << ", \"parameters\": \""
     << params << "\", \"value\": " << format_real(value) << ", \"elapsed_ms\": " << format_real(elapsed_ms)
     << "}\n";
}

std::string pi2_csv_header() {
  return "quantity,q,x1,x2,a,l,exact,main_term,M2,R2_re,R2_im,ratio,window_ok,theta,delta_budget\n";
}

void pi2_csv_row(std::ostream& os, const char* quantity, const Pi2Instance& inst, const Pi2Report& rep) {
  os << quantity << ',' << inst.m.q << ',' << inst.x1 << ',' << inst.x2 << ',' << inst.a << ',' << inst.l
     << ',' << rep.exact << ',' << format_real(rep.main.value) << ',' << format_real(rep.decomp.M2) << ','
     << format_real(rep.decomp.R2.real()) << ',' << format_real(rep.decomp.R2.imag()) << ','
     << format_real(rep.ratio) << ',' << (rep.window_ok ? "true" : "false") << ',' << to_string(rep.theta)
     << ',' << format_real(rep.delta_budget) << '\n';
}

int run_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<PropertyResult> results;
  if (suite == "identities") results = verify_identities(seed);
  else if (suite == "oracles") results = verify_oracles(seed);
  else if (suite == "inequalities") results = verify_inequalities(seed);
  else if (suite == "all") results = verify_all(seed);
  else throw CLI::ValidationError("suite", "must be identities|oracles|inequalities|all");

  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << '\n';
    if (!r.pass) {
      all_pass = false;
      std::cout << "       counterexample: " << r.counterexample << '\n';
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character sums, shifted-prime counts and progression statistics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file (flags override)");

  GlobalOptions g;
  app.add_option("--threads", g.threads, "worker threads (0 = hardware default)")->envname("DIRSUM_THREADS");
  app.add_option("--mode", g.mode, "accumulator mode: fast|exact")->envname("DIRSUM_MODE");
  app.add_option("--out", g.out, "output path (default stdout)")->envname("DIRSUM_OUT");
  app.add_option("--format", g.format, "output format: csv|json")->envname("DIRSUM_FORMAT");
  app.add_flag_callback("--json", [&g]() { g.format = "json"; }, "shorthand for --format json");
  app.add_option("--seed", g.seed, "seed for sampled grids")->envname("DIRSUM_SEED");

  // ---- pi2 / decomp ----
  std::string opt_q = "1", opt_x1 = "100", opt_x2 = "100", opt_l = "all";
  std::int64_t opt_a = 1;
  std::string opt_eps = "1/100";
  double opt_A = 1.0;

  auto add_pi2_options = [&](CLI::App* cmd) {
    cmd->add_option("--q", opt_q, "modulus list or range (e.g. 3,5,7 or 3..50)");
    cmd->add_option("--x1", opt_x1, "x1 list");
    cmd->add_option("--x2", opt_x2, "x2 list");
    cmd->add_option("--a", opt_a, "shift a with gcd(a,q)=1");
    cmd->add_option("--l", opt_l, "target classes: list or 'all' units");
    cmd->add_option("--eps", opt_eps, "epsilon as an exact fraction");
    cmd->add_option("--A", opt_A, "log power A in the error target");
  };
  CLI::App* cmd_pi2 = app.add_subcommand("pi2", "exact pair count, main term and decomposition");
  add_pi2_options(cmd_pi2);
  CLI::App* cmd_decomp = app.add_subcommand("decomp", "character decomposition M2 + R2 only");
  add_pi2_options(cmd_decomp);

  // ---- t-sum / T-sum ----
  std::string opt_x = "1e4";
  std::string opt_kernel = "von-mangoldt";
  CLI::App* cmd_tsum = app.add_subcommand("t-sum", "t(x;q): sum over chi of max prefix |sum|");
  cmd_tsum->add_option("--q", opt_q, "modulus list or range");
  cmd_tsum->add_option("--x", opt_x, "upper limit list");
  cmd_tsum->add_option("--kernel", opt_kernel, "von-mangoldt|prime-indicator");

  std::uint64_t opt_Q = 4;
  CLI::App* cmd_Tsum = app.add_subcommand("T-sum", "T(x;Q): primitive-character average");
  cmd_Tsum->add_option("--x", opt_x, "upper limit list");
  cmd_Tsum->add_option("--Q", opt_Q, "modulus cap");

  // ---- shifted-sum ----
  std::string opt_chi = "all";
  CLI::App* cmd_shift = app.add_subcommand("shifted-sum", "T(chi,x) = sum chi(p+a) over p <= x");
  cmd_shift->add_option("--q", opt_q, "modulus (used with --chi all)");
  cmd_shift->add_option("--chi", opt_chi, "character 'q:exps=[..]' or 'all'");
  cmd_shift->add_option("--x", opt_x, "upper limit list");
  cmd_shift->add_option("--a", opt_a, "shift a with gcd(a,q)=1");

  // ---- bv ----
  std::uint64_t opt_qcap = 10;
  CLI::App* cmd_bv = app.add_subcommand("bv", "averaged progression error sum");
  cmd_bv->add_option("--x", opt_x, "upper limit list");
  cmd_bv->add_option("--qcap", opt_qcap, "modulus cap (the Bombieri-Vinogradov threshold is printed alongside)");
  cmd_bv->add_option("--A", opt_A, "log power A for the printed threshold");

  // ---- brun-titchmarsh ----
  std::string opt_as = "all";
  CLI::App* cmd_bt = app.add_subcommand("brun-titchmarsh", "pi(x;q,a) against 2x/(phi ln(2x/q))");
  cmd_bt->add_option("--q", opt_q, "modulus list or range");
  cmd_bt->add_option("--x", opt_x, "x list");
  cmd_bt->add_option("--a", opt_as, "class list or 'all' units");

  // ---- goldbach ----
  CLI::App* cmd_gb = app.add_subcommand("goldbach", "least Goldbach number per progression");
  cmd_gb->add_option("--q", opt_q, "modulus list or range");
  cmd_gb->add_option("--l", opt_l, "class list or 'all' units");

  // ---- nontriviality ----
  std::string opt_exps = "0.5,1,1.5";
  CLI::App* cmd_nt = app.add_subcommand("nontriviality", "max |T(chi,x)|/x at x = ceil(q^e)");
  cmd_nt->add_option("--q", opt_q, "modulus list or range");
  cmd_nt->add_option("--a", opt_a, "shift a");
  cmd_nt->add_option("--e", opt_exps, "exponent list (reals)");

  // ---- verify ----
  std::string opt_suite = "all";
  CLI::App* cmd_verify = app.add_subcommand("verify", "run a property suite; exit 0 iff all pass");
  cmd_verify->add_option("suite", opt_suite, "identities|oracles|inequalities|all");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();      // global flags may follow the subcommand
    sub->configurable();     // subcommand options live in INI sections
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif

  try {
    if (g.format != "csv" && g.format != "json")
      throw CLI::ValidationError("--format", "must be 'csv' or 'json'");
    bool json = g.format == "json";
    SumMode mode = parse_mode(g.mode);
    OutputSink sink(g.out);
    std::ostringstream& os = sink.stream();

    if (*cmd_verify) return run_verify(opt_suite, g.seed);

    if (*cmd_pi2 || *cmd_decomp) {
      const char* quantity = *cmd_pi2 ? "pi2" : "decomp";
      Rational eps = parse_rational(opt_eps);
      auto qs = parse_count_range_or_list(opt_q);
      auto x1s = parse_count_list(opt_x1);
      auto x2s = parse_count_list(opt_x2);
      if (qs.empty() || x1s.empty() || x2s.empty())
        throw CLI::ValidationError("grid", "empty parameter grid");

      // validate the whole grid before computing anything
      std::vector<Pi2Instance> grid;
      for (std::uint64_t q : qs) {
        Modulus m(q);
        std::vector<std::uint64_t> ls =
            opt_l == "all" ? units_of(q) : parse_count_list(opt_l);
        if (ls.empty()) throw CLI::ValidationError("--l", "empty class list");
        for (std::uint64_t x1 : x1s)
          for (std::uint64_t x2 : x2s)
            for (std::uint64_t l : ls) grid.emplace_back(m, x1, x2, opt_a, l);
      }
      if (!json) os << pi2_csv_header();
      for (const auto& inst : grid) {
        Pi2Report rep = pi2_report(inst, opt_A, eps, mode);
        if (json) os << pi2_report_json(inst, rep) << '\n';
        else pi2_csv_row(os, quantity, inst, rep);
      }
      sink.commit();
      return 0;
    }

    if (*cmd_tsum) {
      auto qs = parse_count_range_or_list(opt_q);
      auto xs = parse_count_list(opt_x);
      if (qs.empty() || xs.empty()) throw CLI::ValidationError("grid", "empty parameter grid");
      Kernel kernel = parse_kernel(opt_kernel);
      if (!json) os << csv_header_sum();
      for (std::uint64_t q : qs) {
        Modulus m(q);
        for (std::uint64_t x : xs) {
          Timer timer;
          double value = t_sum(x, m, kernel);
          std::string params = "kernel=" + opt_kernel;
          if (json) json_sum_row(os, "t-sum", q, x, params, value, timer.elapsed_ms());
          else csv_sum_row(os, "t-sum", q, x, params, value, timer.elapsed_ms());
        }
      }
      sink.commit();
      return 0;
    }

    if (*cmd_Tsum) {
      auto xs = parse_count_list(opt_x);
      if (xs.empty() || opt_Q < 1) throw CLI::ValidationError("grid", "empty parameter grid");
      if (!json) os << csv_header_sum();
      for (std::uint64_t x : xs) {
        Timer timer;
        double value = T_sum(x, opt_Q);
        if (json) json_sum_row(os, "T-sum", opt_Q, x, "", value, timer.elapsed_ms());
        else csv_sum_row(os, "T-sum", opt_Q, x, "", value, timer.elapsed_ms());
      }
      sink.commit();
      return 0;
    }

    if (*cmd_shift) {
      auto xs = parse_count_list(opt_x);
      if (xs.empty()) throw CLI::ValidationError("grid", "empty parameter grid");
      std::vector<DirichletCharacter> chis;
      if (opt_chi == "all") {
        auto qs = parse_count_range_or_list(opt_q);
        if (qs.empty()) throw CLI::ValidationError("grid", "empty parameter grid");
        for (std::uint64_t q : qs)
          for (auto& chi : all_characters(Modulus(q))) chis.push_back(std::move(chi));
      } else {
        chis.push_back(parse_character(opt_chi));
      }
      if (!json) os << csv_header_sum();
      for (const auto& chi : chis) {
        for (std::uint64_t x : xs) {
          Timer timer;
          std::complex<double> value = shifted_char_sum(chi, x, opt_a, mode);
          std::string params = "a=" + std::to_string(opt_a) + ";chi=" + chi.serialize() +
                               ";re=" + format_real(value.real()) + ";im=" + format_real(value.imag());
          if (json) json_sum_row(os, "shifted-sum", chi.q(), x, params, std::abs(value), timer.elapsed_ms());
          else csv_sum_row(os, "shifted-sum", chi.q(), x, params, std::abs(value), timer.elapsed_ms());
        }
      }
      sink.commit();
      return 0;
    }

    if (*cmd_bv) {
      auto xs = parse_count_list(opt_x);
      if (xs.empty() || opt_qcap < 1) throw CLI::ValidationError("grid", "empty parameter grid");
      if (!json) os << csv_header_sum();
      for (std::uint64_t x : xs) {
        Timer timer;
        double value = bv_error_sum(x, opt_qcap);
        std::string params = "A=" + format_real(opt_A) +
                             ";bv_threshold=" + format_real(bv_threshold(static_cast<double>(x), opt_A));
        if (json) json_sum_row(os, "bv", opt_qcap, x, params, value, timer.elapsed_ms());
        else csv_sum_row(os, "bv", opt_qcap, x, params, value, timer.elapsed_ms());
      }
      sink.commit();
      return 0;
    }

    if (*cmd_bt) {
      auto qs = parse_count_range_or_list(opt_q);
      auto xs = parse_count_list(opt_x);
      if (qs.empty() || xs.empty()) throw CLI::ValidationError("grid", "empty parameter grid");
      if (!json) os << csv_header_sum();
      for (std::uint64_t q : qs) {
        Modulus m(q);
        auto as = opt_as == "all" ? units_of(q) : parse_count_list(opt_as);
        if (as.empty()) throw CLI::ValidationError("--a", "empty class list");
        for (std::uint64_t x : xs) {
          Timer timer;
          ResidueCountTable table = residue_counts(x, q);
          for (std::uint64_t a : as) {
            BrunTitchmarsh bt = brun_titchmarsh_check(table, m, a);
            std::string params = "a=" + std::to_string(a) + ";rhs=" + format_real(bt.rhs) +
                                 ";holds=" + (bt.holds ? "true" : "false");
            if (json) json_sum_row(os, "brun-titchmarsh", q, x, params, static_cast<double>(bt.lhs), timer.elapsed_ms());
            else csv_sum_row(os, "brun-titchmarsh", q, x, params, static_cast<double>(bt.lhs), timer.elapsed_ms());
          }
        }
      }
      sink.commit();
      return 0;
    }

    if (*cmd_gb) {
      auto qs = parse_count_range_or_list(opt_q);
      if (qs.empty()) throw CLI::ValidationError("grid", "empty parameter grid");
      if (!json) os << csv_header_sum();
      for (std::uint64_t q : qs) {
        Modulus m(q);
        auto ls = opt_l == "all" ? units_of(q) : parse_count_list(opt_l);
        if (ls.empty()) throw CLI::ValidationError("--l", "empty class list");
        for (std::uint64_t l : ls) {
          Timer timer;
          GoldbachResult r = least_goldbach(m, l);
          const char* status = r.status == GoldbachStatus::kFound          ? "found"
                               : r.status == GoldbachStatus::kCapExhausted ? "cap-exhausted"
                                                                           : "no-even-candidates";
          std::string params = "l=" + std::to_string(l) + ";p=" + std::to_string(r.p) +
                               ";p2=" + std::to_string(r.pp) + ";status=" + status +
                               ";cap=" + std::to_string(r.cap);
          if (json) json_sum_row(os, "goldbach", q, 0, params, static_cast<double>(r.n), timer.elapsed_ms());
          else csv_sum_row(os, "goldbach", q, 0, params, static_cast<double>(r.n), timer.elapsed_ms());
        }
      }
      sink.commit();
      return 0;
    }

    if (*cmd_nt) {
      auto qs = parse_count_range_or_list(opt_q);
      if (qs.empty()) throw CLI::ValidationError("grid", "empty parameter grid");
      std::vector<double> exps;
      {
        std::stringstream ss{opt_exps};
        std::string item;
        while (std::getline(ss, item, ',')) exps.push_back(std::stod(item));
      }
      if (exps.empty()) throw CLI::ValidationError("--e", "empty exponent list");
      if (!json) os << csv_header_sum();
      for (std::uint64_t q : qs) {
        Modulus m(q);
        Timer timer;
        auto rows = nontriviality_report(m, opt_a, exps);
        for (const auto& row : rows) {
          std::string params = "e=" + format_real(row.exponent) + ";a=" + std::to_string(opt_a);
          if (row.below_range) {
            params += ";below_range=true";
          } else {
            params += ";argmax_chi=" + row.argmax_chi + ";theta=" + to_string(row.theta) +
                      ";above_theta=" + (row.above_theta ? "true" : "false");
          }
          if (json) json_sum_row(os, "nontriviality", q, row.x, params, row.max_ratio, timer.elapsed_ms());
          else csv_sum_row(os, "nontriviality", q, row.x, params, row.max_ratio, timer.elapsed_ms());
        }
      }
      sink.commit();
      return 0;
    }

    throw CLI::ValidationError("subcommand", "no subcommand selected");
  } catch (const GuardError& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return 3;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
