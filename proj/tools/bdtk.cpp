// bdtk command-line front end.  Elements are read as JSON from files or
// standard input ("-") and results are written as JSON.
//
// Exit codes: 0 success, 1 mathematical failure, 2 malformed input.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "bdtk/calculus.hpp"
#include "bdtk/derivations.hpp"
#include "bdtk/error.hpp"
#include "bdtk/index.hpp"
#include "bdtk/json_io.hpp"
#include "bdtk/verify.hpp"

using namespace bdtk;
using io::Json;

namespace {

struct Options {
  std::string S = "2:inf,3:1";
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return io::parse(text);
}

void emit(const Json& j, const Options& opt) {
  const std::string text = j.dump(2) + "\n";
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt.out);
  f << text;
}

BdtElement as_bdt(const Json& j, const Supernatural& S) { return io::bdt_from_json(j, S); }

Json multiply(const Json& x, const Json& y, const Supernatural& S) {
  using io::ElementKind;
  const ElementKind kx = io::classify(x), ky = io::classify(y);
  if (kx == ElementKind::Bd && ky == ElementKind::Bd) return io::to_json(bd_mul(io::bd_from_json(x, S), io::bd_from_json(y, S)));
  if (kx == ElementKind::Compact && ky == ElementKind::Compact)
    return io::to_json(io::compact_from_json(x) * io::compact_from_json(y));
  if (kx == ElementKind::Bd || ky == ElementKind::Bd)
    throw Error(ErrorCode::InvalidArgument, "BD elements multiply only with BD elements (use toeplitz first)");
  const BdtElement a = as_bdt(x, S), b = as_bdt(y, S);
  if (a.S() != b.S()) throw Error(ErrorCode::InvalidArgument, "operands live over different S");
  return io::to_json(bdt_mul(a, b));
}

Json adjoint(const Json& x, const Supernatural& S) {
  switch (io::classify(x)) {
    case io::ElementKind::Bd: return io::to_json(bd_adjoint(io::bd_from_json(x, S)));
    case io::ElementKind::Compact: return io::to_json(k_adjoint(io::compact_from_json(x)));
    case io::ElementKind::Bdt: break;
  }
  return io::to_json(bdt_adjoint(as_bdt(x, S)));
}

std::vector<std::int64_t> parse_schedule(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "bad schedule entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and certified computation in smooth Bunce-Deddens-Toeplitz algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--S", opt.S, "supernatural number, e.g. 2:inf,3:1 (used when an input has no \"S\")")
      ->capture_default_str();
  app.add_option("--tol", opt.tol, "target tolerance")->capture_default_str();
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--out", opt.out, "output file (default standard output)");
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json"}))->capture_default_str();

  std::string in1 = "-", in2 = "-";
  auto two_inputs = [&](CLI::App* sub) {
    sub->add_option("a", in1, "first operand (file or -)")->required();
    sub->add_option("b", in2, "second operand (file or -)")->required();
  };
  auto one_input = [&](CLI::App* sub) { sub->add_option("a", in1, "operand (file or -)")->capture_default_str(); };

  auto* mul = app.add_subcommand("mul", "product of two elements");
  two_inputs(mul);
  auto* adj = app.add_subcommand("adjoint", "adjoint of an element");
  one_input(adj);

  auto* norm = app.add_subcommand("norm", "P-norm of a BD element or MN-norm of a compact");
  one_input(norm);
  std::optional<unsigned> P, M, N;
  norm->add_option("--P", P, "P-norm order");
  norm->add_option("--M", M, "MN-norm derivative order");
  norm->add_option("--N", N, "MN-norm weight order");

  auto* toe = app.add_subcommand("toeplitz", "T(b) for a BD element b");
  one_input(toe);
  auto* tau_cmd = app.add_subcommand("tau", "symbol tau(a) of a BDT element");
  one_input(tau_cmd);
  auto* corr = app.add_subcommand("correction", "T(b1) T(b2) - T(b1 b2)");
  two_inputs(corr);

  auto* four = app.add_subcommand("fourier", "n-th Fourier component");
  one_input(four);
  std::int64_t fourier_n = 0;
  four->add_option("--n", fourier_n, "component index")->required();

  std::int64_t max_band = kDefaultMaxBand;
  auto* inv = app.add_subcommand("invert", "certified inverse");
  one_input(inv);
  inv->add_option("--max-band", max_band, "largest band kept (BD inverses)")->capture_default_str();

  auto* exp_cmd = app.add_subcommand("exp", "certified e^{itb} or e^{ita} for self-adjoint input");
  one_input(exp_cmd);
  double t = 1.0;
  exp_cmd->add_option("--t", t, "time parameter")->capture_default_str();
  exp_cmd->add_option("--max-band", max_band, "largest band kept")->capture_default_str();

  auto* calc = app.add_subcommand("calc", "f(a) = sum_n f_n exp(2 pi i n a / L) for self-adjoint a");
  one_input(calc);
  std::string coeffs_text;
  double L = 1.0, tail = 0.0;
  calc->add_option("--coeffs", coeffs_text, "JSON list [[n, re, im], ...]")->required();
  calc->add_option("--L", L, "period of f")->capture_default_str();
  calc->add_option("--tail", tail, "bound for the neglected coefficients")->capture_default_str();

  auto* der = app.add_subcommand("derivation", "derivations d = gamma d_K + [T(b) + c, .]");
  der->require_subcommand(1);
  auto* der_apply_cmd = der->add_subcommand("apply", "d(a)");
  two_inputs(der_apply_cmd);
  auto* der_comp = der->add_subcommand("component", "n-th Fourier component of d");
  one_input(der_comp);
  der_comp->add_option("--n", fourier_n, "component index")->required();
  auto* der_rec = der->add_subcommand("reconstruct", "recover c from d as a black box");
  one_input(der_rec);
  std::int64_t band_limit = 8;
  der_rec->add_option("--band-limit", band_limit, "largest component index probed")->capture_default_str();

  auto* idx = app.add_subcommand("index", "Fredholm index from truncations");
  one_input(idx);
  std::string schedule_text;
  double threshold = kDefaultSvdThreshold;
  idx->add_option("--schedule", schedule_text, "comma-separated truncation sizes (default 64,128,256,512)");
  idx->add_option("--threshold", threshold, "singular values below count as zero")->capture_default_str();

  auto* gs = app.add_subcommand("gs", "G_S arithmetic and the K-theory demo");
  std::string q_text;
  std::vector<std::string> add_args;
  bool demo = false;
  gs->add_option("--q", q_text, "membership test for k/l");
  gs->add_option("--add", add_args, "sum of two members")->expected(2);
  gs->add_flag("--demo", demo, "K_0 / index report for S");

  auto* ver = app.add_subcommand("verify", "seeded property suite");
  std::string suite;
  std::optional<std::size_t> cases;
  bool list = false;
  ver->add_option("suite", suite, "suite name");
  ver->add_option("--cases", cases, "number of cases");
  ver->add_flag("--list", list, "list the suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const Supernatural S = Supernatural::parse(opt.S);
    if (mul->parsed()) {
      emit(multiply(read_json(in1), read_json(in2), S), opt);
    } else if (adj->parsed()) {
      emit(adjoint(read_json(in1), S), opt);
    } else if (norm->parsed()) {
      const Json x = read_json(in1);
      if (io::classify(x) == io::ElementKind::Bd) {
        if (M || N) throw Error(ErrorCode::InvalidArgument, "BD elements take --P");
        const NormEstimate e = bd_p_norm(io::bd_from_json(x, S), P.value_or(0), opt.tol);
        emit(Json{{"value", e.value}, {"error_bound", e.error_bound}}, opt);
      } else {
        if (P) throw Error(ErrorCode::InvalidArgument, "compact elements take --M and --N");
        const BdtElement a = as_bdt(x, S);
        if (!a.symbol.is_zero()) throw Error(ErrorCode::InvalidArgument, "MN-norms need a compact element");
        emit(Json{{"value", k_mn_norm(a.compact, M.value_or(0), N.value_or(0))}}, opt);
      }
    } else if (toe->parsed()) {
      emit(io::to_json(toeplitz(io::bd_from_json(read_json(in1), S))), opt);
    } else if (tau_cmd->parsed()) {
      emit(io::to_json(tau(as_bdt(read_json(in1), S))), opt);
    } else if (corr->parsed()) {
      emit(io::to_json(correction(io::bd_from_json(read_json(in1), S), io::bd_from_json(read_json(in2), S))), opt);
    } else if (four->parsed()) {
      const Json x = read_json(in1);
      if (io::classify(x) == io::ElementKind::Bd)
        emit(Json{{"n", fourier_n}, {"coefficient", io::to_json(bd_fourier(io::bd_from_json(x, S), fourier_n))}}, opt);
      else
        emit(io::to_json(bdt_fourier(as_bdt(x, S), fourier_n)), opt);
    } else if (inv->parsed()) {
      const Json x = read_json(in1);
      if (io::classify(x) == io::ElementKind::Bd)
        emit(io::to_json(bd_invert(io::bd_from_json(x, S), opt.tol, max_band)), opt);
      else
        emit(io::to_json(bdt_invert(as_bdt(x, S), opt.tol)), opt);
    } else if (exp_cmd->parsed()) {
      const Json x = read_json(in1);
      if (io::classify(x) == io::ElementKind::Bd)
        emit(io::to_json(bd_exp(io::bd_from_json(x, S) * Scalar::from_double(t), opt.tol, max_band)), opt);
      else
        emit(io::to_json(bdt_exp(as_bdt(x, S), t, opt.tol, max_band)), opt);
    } else if (calc->parsed()) {
      std::map<std::int64_t, std::complex<double>> coeffs;
      const Json cj = io::parse(coeffs_text);
      if (!cj.is_array()) throw Error(ErrorCode::Parse, "--coeffs must be a JSON array");
      for (const Json& e : cj) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number() || !e[2].is_number())
          throw Error(ErrorCode::Parse, "coefficients are [n, re, im]");
        coeffs[e[0].get<std::int64_t>()] += std::complex<double>(e[1].get<double>(), e[2].get<double>());
      }
      emit(io::to_json(smooth_calc(as_bdt(read_json(in1), S), coeffs, L, opt.tol, tail)), opt);
    } else if (der_apply_cmd->parsed()) {
      const DerivationSpec d = io::derivation_from_json(read_json(in1), S);
      emit(io::to_json(der_apply(d, as_bdt(read_json(in2), d.S()))), opt);
    } else if (der_comp->parsed()) {
      emit(io::to_json(der_component(io::derivation_from_json(read_json(in1), S), fourier_n)), opt);
    } else if (der_rec->parsed()) {
      const DerivationSpec d = io::derivation_from_json(read_json(in1), S);
      std::vector<CovariantComponent> comps;
      const CompactMatrix c = der_reconstruct(der_closure(d), d.S(), band_limit, &comps);
      Json cj = Json::array();
      for (const auto& comp : comps) cj.push_back(io::to_json(comp));
      emit(Json{{"c", io::to_json(c)}, {"components", std::move(cj)}}, opt);
    } else if (idx->parsed()) {
      const auto schedule = schedule_text.empty() ? default_index_schedule() : parse_schedule(schedule_text);
      emit(io::to_json(fredholm_index(as_bdt(read_json(in1), S), schedule, threshold)), opt);
    } else if (gs->parsed()) {
      if (demo) {
        emit(io::to_json(k0_demo(S)), opt);
      } else if (!add_args.empty()) {
        const GsRational sum = gs_add(GsRational(Rational::parse(add_args[0]), S),
                                      GsRational(Rational::parse(add_args[1]), S), S);
        emit(Json{{"sum", io::to_json(sum.value())}}, opt);
      } else if (!q_text.empty()) {
        emit(Json{{"member", gs_contains(Rational::parse(q_text), S)}}, opt);
      } else {
        throw Error(ErrorCode::InvalidArgument, "gs needs --q, --add or --demo");
      }
    } else if (ver->parsed()) {
      if (list) {
        Json out = Json::array();
        for (const auto& s : suites())
          out.push_back(Json{{"name", s.name}, {"description", s.description}, {"default_cases", s.default_cases}});
        emit(out, opt);
        return 0;
      }
      if (suite.empty()) throw Error(ErrorCode::InvalidArgument, "verify needs a suite name (see --list)");
      const VerifyReport report = run_suite(suite, opt.seed, cases);
      emit(to_json(report), opt);
      return report.all_passed() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "bdtk: " << e.what() << "\n";
    return e.is_input_error() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "bdtk: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
