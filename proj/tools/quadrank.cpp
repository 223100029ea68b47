// quadrank: generate correlation-polytope slack matrices and certify lower
// bounds on their square root rank.
//
// Exit status: 0 success, 1 certificate refused, 2 input or spec error,
// 3 brute-force budget exceeded.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "quadrank/acceptance.hpp"
#include "quadrank/certify.hpp"
#include "quadrank/gen.hpp"
#include "quadrank/matrix_io.hpp"
#include "quadrank/oracle.hpp"
#include "quadrank/sigma.hpp"

namespace {

using namespace quadrank;

constexpr int kOk = 0;
constexpr int kRefused = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

struct Input {
  RationalMatrix matrix;
  std::optional<MatrixSpec> spec;
  std::string label;
};

/// A path to an existing matrix file, otherwise a family spec such as "P:6".
Input load_input(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    return {read_matrix_file(arg).to_rational(), std::nullopt, arg};
  }
  MatrixSpec spec = parse_spec(arg);
  return {generate(spec), spec, spec.to_string()};
}

ReportFormat parse_format(const std::string& f) {
  if (f == "kv") return ReportFormat::Kv;
  if (f == "text") return ReportFormat::Text;
  throw Error(Errc::SpecError, "unknown format '" + f + "' (text|kv)");
}

bool is_refusal(Errc c) {
  switch (c) {
    case Errc::DiagonalNotConstant:
    case Errc::DiagonalNotPrimeForm:
    case Errc::OffdiagEscapesSubfield:
    case Errc::NonIntegerEntry:
    case Errc::NegativeEntry:
    case Errc::NotSquare:
    case Errc::DecompositionInvalid:
    case Errc::DiagonalBlockNotUnit:
    case Errc::BadDiagonal:
      return true;
    default:
      return false;
  }
}

std::string family_line(const MatrixSpec& spec, const RationalMatrix& m) {
  const std::string dims = std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  switch (spec.family) {
    case Family::P:
      return "P_" + std::to_string(spec.n) + ": N=" + std::to_string(m.rows()) + " p=" +
             std::to_string(nearest_prime(spec.n));
    case Family::fawziQ: return "fawziQ: " + dims;
    case Family::corB: return "corB_" + std::to_string(spec.n) + ": " + dims;
    case Family::corM: return "corM_" + std::to_string(spec.n) + ": " + dims;
    case Family::corF: return "corF_" + std::to_string(spec.n) + ": " + dims;
    case Family::IP: return "IP_" + std::to_string(spec.n) + ": " + dims;
    case Family::lowrankA: return "lowrankA_" + std::to_string(spec.n) + ": " + dims;
  }
  return dims;
}

int cmd_gen(const std::string& spec_text, const std::string& out) {
  const MatrixSpec spec = parse_spec(spec_text);
  const RationalMatrix m = generate(spec);
  const std::string text = format_matrix(m);
  if (out.empty()) {
    std::cerr << family_line(spec, m) << "\n";
    std::cout << text;
  } else {
    write_matrix_file(out, text);
    std::cout << family_line(spec, m) << "\n";
  }
  return kOk;
}

int cmd_certify(const std::string& input, int crosscheck, ReportFormat fmt, int digits) {
  const Input in = load_input(input);
  SqrtRankCertificate cert;
  try {
    cert = structural_certificate(in.matrix);
  } catch (const Error& e) {
    if (!is_refusal(e.code())) throw;
    if (fmt == ReportFormat::Kv) {
      std::cout << "status: REFUSED\nreason: " << errc_name(e.code()) << "\ndetail: " << e.what() << "\n";
    } else {
      std::cout << "REFUSED " << e.what() << "\n";
    }
    return kRefused;
  }
  std::vector<std::pair<std::string, std::string>> extra;
  if (in.spec && in.spec->family == Family::P) {
    const SizeBound sb = size_bound_check(in.spec->n);
    extra.emplace_back("size_bound", "ceil(N/2)=" + sb.half_size.get_str() + " >= 3^(n/3-1) (floor " +
                                         sb.exp_lower_floor.get_str() + "): " + (sb.exp_holds ? "holds" : "fails"));
    extra.emplace_back("bertrand", "N=" + sb.size.get_str() + " vs C(n,ceil(n/3))=" + sb.bertrand_lower.get_str() +
                                       ": " + (sb.bertrand_holds ? "holds" : "fails"));
  }
  if (digits > 0) {
    const PrimeBasis b = PrimeBasis::make({static_cast<long long>(cert.p)});
    extra.emplace_back("sqrt_p", approximate(sqrt_of_integer(b, cert.p), static_cast<unsigned>(digits)));
  }
  if (crosscheck > 0) {
    rnd::Engine g(1);
    std::size_t min_rank = cert.N;
    for (int s = 0; s < crosscheck; ++s) {
      min_rank = std::min(min_rank, rank_crosscheck(in.matrix, rnd::signs(g, cert.N, cert.N), cert.p));
    }
    extra.emplace_back("crosscheck", std::to_string(crosscheck) + " samples, min sampled rank " +
                                         std::to_string(min_rank) + (min_rank >= cert.bound ? " >= " : " < ") +
                                         std::to_string(cert.bound));
    if (min_rank < cert.bound) {
      std::cout << format_certificate(cert, fmt, extra);
      throw Error(Errc::InconsistentEvidence, "sampled rank below certified bound");
    }
  }
  std::cout << format_certificate(cert, fmt, extra);
  return kOk;
}

int cmd_brute(const std::string& input, std::uint64_t budget, ReportFormat fmt) {
  const Input in = load_input(input);
  try {
    const auto res = sqrt_rank_bruteforce(in.matrix, budget);
    const std::string wit = format_witness(res.witness, in.matrix);
    if (fmt == ReportFormat::Kv) {
      std::string rows = wit;
      std::replace(rows.begin(), rows.end(), '\n', '/');
      if (!rows.empty()) rows.pop_back();
      std::cout << "min_rank: " << res.min_rank << "\nclasses_enumerated: " << res.classes_enumerated
                << "\nexhausted: " << (res.exhausted ? "true" : "false") << "\nwitness: " << rows << "\n";
    } else {
      std::cout << "min sqrt-rank = " << res.min_rank << (res.exhausted ? " (exhausted)" : "") << "\n"
                << "sign classes enumerated: " << res.classes_enumerated << "\nwitness:\n"
                << wit;
    }
    return kOk;
  } catch (const BudgetExceededError& e) {
    std::cout << "budget exceeded: required " << e.required() << " sign patterns";
    if (e.free_signs() < 64) std::cout << " (2^" << e.free_signs() << ")";
    std::cout << ", budget " << budget << "\n";
    return kBudget;
  }
}

int cmd_sigma(int ell, const std::string& out, ReportFormat fmt) {
  const SigmaFamily fam = build_sigma(static_cast<unsigned>(std::max(ell, 0)));
  std::string body;
  for (std::size_t j = 0; j < fam.matrices.size(); ++j) {
    body += "sigma_" + std::to_string(j + 1) + " (" + std::to_string(fam.size()) + "x" + std::to_string(fam.size()) +
            ")\n" + format_int_matrix(fam.matrices[j]);
  }
  if (out.empty()) {
    if (fmt == ReportFormat::Text) std::cout << body;
  } else {
    write_matrix_file(out, body);
  }
  const SigmaCheck chk = verify_sigma(fam);
  if (fmt == ReportFormat::Kv) {
    std::cout << "ell: " << fam.ell << "\nsize: " << fam.size() << "\nanticommutation: "
              << (chk.anticommute_ok ? "ok" : "failed") << "\nsquares: " << (chk.squares_ok ? "ok" : "failed")
              << "\nentries: " << (chk.entries_ok ? "ok" : "failed") << "\n";
  } else {
    std::cout << "anticommutation " << (chk.anticommute_ok ? "OK" : "FAILED") << ", squares "
              << (chk.squares_ok ? "OK" : "FAILED") << "\n";
  }
  return chk.ok() ? kOk : kRefused;
}

std::vector<RationalMatrix> read_decomposition(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::vector<RationalMatrix> out;
  std::string line, block;
  auto flush = [&] {
    if (!quadrank::detail::strip(block).empty()) out.push_back(parse_matrix(block).to_rational());
    block.clear();
  };
  while (std::getline(f, line)) {
    if (quadrank::detail::strip(line).rfind("field:", 0) == 0) flush();
    block += line + "\n";
  }
  flush();
  return out;
}

int cmd_extension(const std::string& input, int d, const std::string& decomposition, bool exact, ReportFormat fmt) {
  const Input in = load_input(input);
  if (d < 1) throw Error(Errc::SpecError, "--d must be positive");
  const auto cert = [&] {
    try {
      return structural_certificate(in.matrix);
    } catch (const Error& e) {
      std::cout << "REFUSED " << e.what() << "\n";
      throw;
    }
  }();
  const auto bs = decomposition.empty() ? canonical_decomposition(in.matrix, static_cast<std::size_t>(d))
                                        : read_decomposition(decomposition);
  ExtensionReport rep = extension_certify(bs, in.matrix, cert.p, exact);
  if (in.spec && in.spec->family == Family::P) rep.n = in.spec->n;
  std::cout << format_extension(rep, fmt);
  return rep.conclusion ? kOk : kRefused;
}

int cmd_bounds(const std::string& input, ReportFormat fmt) {
  const Input in = load_input(input);
  Evidence ev;
  try {
    ev.certificate = structural_certificate(in.matrix);
  } catch (const Error& e) {
    if (!is_refusal(e.code())) throw;
  }
  ev.witness = SignMatrix(in.matrix.rows(), in.matrix.cols());
  if (in.spec && in.spec->family == Family::corF && in.spec->n <= 10) ev.factorization = nonneg_factorization_F(in.spec->n);
  std::cout << format_bounds(bounds_report(in.matrix, ev), fmt);
  return kOk;
}

int cmd_selftest() {
  int failed = 0;
  acceptance::run_acceptance([&](const acceptance::CriterionResult& r) {
    if (!r.passed) ++failed;
    std::cout << acceptance::format_result(r) << std::endl;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? kOk : kRefused;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadrank: exact square root rank certificates for correlation-polytope slack matrices"};
  app.require_subcommand(1);

  std::string target, out, format = "text", decomposition;
  std::uint64_t budget = kDefaultBudget;
  int crosscheck = 0, d = 2, digits = 0, ell = 0;
  bool exact = false;

  auto* gen = app.add_subcommand("gen", "generate a matrix from a family spec (corM:5, P:10, fawziQ:2,3,4, ...)");
  gen->add_option("spec", target, "family spec")->required();
  gen->add_option("-o,--output", out, "output matrix file (default stdout)");

  auto* cert = app.add_subcommand("certify", "structural square-root-rank certificate");
  cert->add_option("input", target, "matrix file or family spec")->required();
  cert->add_option("--crosscheck", crosscheck, "also sample K random sign patterns");
  cert->add_option("--digits", digits, "print sqrt(p) to D significant digits");

  auto* brute = app.add_subcommand("brute", "exhaustive square root rank over reduced sign classes");
  brute->add_option("input", target, "matrix file or family spec")->required();
  brute->add_option("--budget", budget, "maximum number of sign patterns");

  auto* sigma = app.add_subcommand("sigma", "build and verify an anticommuting sigma family");
  sigma->add_option("ell", ell, "family size (1..10)")->required();
  sigma->add_option("-o,--output", out, "write the matrices to a file");

  auto* ext = app.add_subcommand("extension", "extension certificate for a decomposition into entrywise squares");
  ext->add_option("input", target, "matrix file or family spec")->required();
  ext->add_option("--d", d, "decomposition width d (d^2 terms)");
  ext->add_option("--decomposition", decomposition, "file of d^2 rational matrices B_j");
  ext->add_flag("--exact-rank", exact, "also compute rank(C) exactly");

  auto* bounds = app.add_subcommand("bounds", "rank, PSD-rank and square root rank bounds table");
  bounds->add_option("input", target, "matrix file or family spec")->required();

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

  for (auto* sub : {gen, cert, brute, sigma, ext, bounds}) {
    sub->add_option("--format", format, "report format: text|kv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    const ReportFormat fmt = parse_format(format);
    if (*gen) return cmd_gen(target, out);
    if (*cert) return cmd_certify(target, crosscheck, fmt, digits);
    if (*brute) return cmd_brute(target, budget, fmt);
    if (*sigma) return cmd_sigma(ell, out, fmt);
    if (*ext) return cmd_extension(target, d, decomposition, exact, fmt);
    if (*bounds) return cmd_bounds(target, fmt);
    if (*selftest) return cmd_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == Errc::BudgetExceeded) return kBudget;
    return is_refusal(e.code()) ? kRefused : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
