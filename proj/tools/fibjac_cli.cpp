// fibjac: command-line front end for the k-Fibonacci / Jacobi criterion toolkit.
//
// Exit codes: 0 success, 1 a verified claim failed, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibjac/arith.hpp"
#include "fibjac/criterion.hpp"
#include "fibjac/curves.hpp"
#include "fibjac/kernels.hpp"
#include "fibjac/recurrences.hpp"
#include "fibjac/sieve.hpp"
#include "fibjac/verify.hpp"

namespace {

using namespace fibjac;

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  throw std::invalid_argument("sign must be '+' or '-', got '" + s + "'");
}

Integer parse_integer(const std::string& s, const char* what) {
  Integer v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument(std::string(what) + ": not an integer: '" + s + "'");
  return v;
}

std::string signed_symbol(JacobiSign s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

struct Options {
  std::uint64_t k = 1;
  std::int64_t n = 0;
  std::uint64_t m = 0;
  std::string upper, lower;
  std::string a = "1", b = "0", c = "3", d = "3";
  std::string sign = "+";
  std::string parity = "even";
  std::int64_t x_min = -10, x_max = 10;
  std::string plan;
  std::vector<std::uint64_t> primes;
  std::uint64_t auto_bound = 0;
  std::string profile = "quick";
  std::string out;
  bool jsonl = false;
};

int cmd_fib(const Options& o, bool modular) {
  const RecurrenceParams params(o.k);
  if (modular) {
    if (o.n < 0) throw std::invalid_argument("modular evaluation needs n >= 0");
    const ResiduePair r = fib_lucas_mod(params, static_cast<std::uint64_t>(o.n), o.m);
    std::cout << "F=" << r.f << " L=" << r.l << '\n';
  } else {
    const PairFL p = fib_lucas(params, o.n);
    std::cout << "F=" << p.f << " L=" << p.l << '\n';
  }
  return kExitOk;
}

int cmd_pisano(const Options& o) {
  std::cout << pisano_period(RecurrenceParams(o.k), o.m) << '\n';
  return kExitOk;
}

int cmd_jacobi(const Options& o) {
  std::cout << signed_symbol(jacobi(parse_integer(o.upper, "a"), parse_integer(o.lower, "n"))) << '\n';
  return kExitOk;
}

int cmd_criterion(const Options& o) {
  if (o.n < 0) throw std::invalid_argument("n must be positive");
  const CriterionInstance inst{parse_integer(o.a, "a"), parse_integer(o.d, "d"), o.k,
                               static_cast<std::uint64_t>(o.n), parse_sign(o.sign)};
  const CriterionResult r = criterion_sides(inst);
  std::cout << "lhs=" << signed_symbol(r.lhs) << " rhs=" << signed_symbol(-r.rhs_inner) << ' '
            << (r.proper ? "PROPER" : "IMPROPER");
  if (r.holds) std::cout << (*r.holds ? " HOLDS" : " FAILS");
  std::cout << '\n';
  return r.holds.value_or(true) ? kExitOk : kExitClaimFailure;
}

int cmd_sieve(const Options& o) {
  std::vector<std::uint64_t> primes = o.primes;
  if (!o.plan.empty()) {
    std::ifstream in(o.plan);
    if (!in) throw std::invalid_argument("cannot open plan file '" + o.plan + "'");
    const auto from_file = parse_plan(in);
    primes.insert(primes.begin(), from_file.begin(), from_file.end());
  }
  const SquareCondition cond{parse_integer(o.a, "a"), parse_integer(o.d, "d"), parse_sign(o.sign),
                             RecurrenceParams(o.k)};
  const PipelineResult run = run_pipeline(cond, primes);
  for (const TraceRecord& t : run.trace) {
    std::cout << "Q=" << t.prime << " period=" << t.period << " excluded=" << t.excluded
              << " removed=" << t.removed << " modulus=" << t.modulus << " allowed=" << t.allowed << '\n';
  }
  std::cout << describe(run.state) << '\n';
  if (o.auto_bound > 0) {
    for (const SearchHit& h : auto_search(cond, o.auto_bound, run.state))
      std::cout << "candidate Q=" << h.prime << " gain=" << h.gain << '\n';
  }
  return kExitOk;
}

int cmd_curve_points(const Options& o) {
  Parity parity;
  if (o.parity == "even") parity = Parity::even;
  else if (o.parity == "odd") parity = Parity::odd;
  else throw std::invalid_argument("parity must be 'even' or 'odd'");
  const QuarticCurve curve{parse_integer(o.a, "a"), parse_integer(o.b, "b"), parse_integer(o.c, "c"),
                           RecurrenceParams(o.k), parity};
  if (curve.a == 0) throw std::invalid_argument("a must be nonzero");
  for (const IntegerPointRecord& p : brute_points(curve, o.x_min, o.x_max))
    std::cout << "x=" << p.x << " y=" << (p.both_signs ? "±" : "") << p.y << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o) {
  Profile profile;
  if (o.profile == "quick") profile = Profile::quick;
  else if (o.profile == "full") profile = Profile::full;
  else throw std::invalid_argument("profile must be 'quick' or 'full'");

  const VerificationReport report = verify_paper(profile);
  const std::string jsonl = to_jsonl(report);
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) throw std::invalid_argument("cannot write '" + o.out + "'");
    file << jsonl;
  }
  std::cout << (o.jsonl ? jsonl : summary_table(report));
  return report.passed() ? kExitOk : kExitClaimFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-Fibonacci / k-Lucas Jacobi criterion toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fibjac::toolkit_version());
  Options o;

  auto* fib = app.add_subcommand("fib", "F(n) and L(n), optionally modulo m");
  fib->add_option("-k", o.k, "recurrence multiplier")->check(CLI::PositiveNumber);
  fib->add_option("-n", o.n, "index (negative allowed for k = 1)")->required();
  auto* fib_mod = fib->add_option("-m", o.m, "modulus")->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));

  auto* pisano = app.add_subcommand("pisano", "period of (F, L) modulo m");
  pisano->add_option("-k", o.k, "recurrence multiplier")->check(CLI::PositiveNumber);
  pisano->add_option("-m", o.m, "modulus")->required()->check(CLI::Range(std::uint64_t{2}, UINT64_MAX));

  auto* jac = app.add_subcommand("jacobi", "Jacobi symbol (a | n)");
  jac->add_option("-a", o.upper, "upper argument")->required();
  jac->add_option("-n", o.lower, "odd positive lower argument")->required();

  auto* crit = app.add_subcommand("criterion", "evaluate both sides of the Jacobi criterion");
  crit->add_option("-a", o.a, "a > 0");
  crit->add_option("-d", o.d, "odd d with d^2 > 8a");
  crit->add_option("-k", o.k, "odd multiplier k");
  crit->add_option("-n", o.n, "index n = +-2 (mod 6)")->required();
  crit->add_option("--sign", o.sign, "+ or -");

  auto* sieve = app.add_subcommand("sieve", "square-exclusion sieve for sign*4a F(n) + d^2");
  sieve->add_option("--plan", o.plan, "plan file: one odd prime per line, '#' comments");
  sieve->add_option("--primes", o.primes, "inline primes")->delimiter(',');
  sieve->add_option("-a", o.a, "a > 0");
  sieve->add_option("-d", o.d, "d > 0");
  sieve->add_option("-k", o.k, "recurrence multiplier")->check(CLI::PositiveNumber);
  sieve->add_option("--sign", o.sign, "+ or -");
  sieve->add_option("--auto", o.auto_bound, "also list primes up to this bound that refine further");

  auto* curve = app.add_subcommand("curve-points", "integer points on y^2 = a^2(k^2+4)(x+b)^2(x+c)^2 +- 4");
  curve->add_option("-a", o.a, "a != 0");
  curve->add_option("-b", o.b, "b");
  curve->add_option("-c", o.c, "c");
  curve->add_option("-k", o.k, "recurrence multiplier")->check(CLI::PositiveNumber);
  curve->add_option("--parity", o.parity, "even (+4) or odd (-4)");
  curve->add_option("--xmin", o.x_min, "smallest x");
  curve->add_option("--xmax", o.x_max, "largest x");

  auto* verify = app.add_subcommand("verify-paper", "replay every lemma and theorem");
  verify->add_option("--profile", o.profile, "quick or full");
  verify->add_option("--out", o.out, "write the JSON-lines report to this path");
  verify->add_flag("--jsonl", o.jsonl, "print JSON lines instead of the summary table");

  app.add_flag_callback("--scalar", [] { fibjac::kernels::set_active_isa(fibjac::kernels::Isa::scalar); },
                        "disable SIMD kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*fib) return cmd_fib(o, fib_mod->count() > 0);
    if (*pisano) return cmd_pisano(o);
    if (*jac) return cmd_jacobi(o);
    if (*crit) return cmd_criterion(o);
    if (*sieve) return cmd_sieve(o);
    if (*curve) return cmd_curve_points(o);
    if (*verify) return cmd_verify(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
