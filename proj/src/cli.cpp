#include "normgen/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "normgen/corpus.hpp"
#include "normgen/json_io.hpp"

namespace normgen {

namespace {

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(v);
    }
    const long long p = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    const std::string den = text.substr(slash + 1);
    const long long q = std::stoll(den, &used);
    if (used != den.size() || q <= 0) throw std::invalid_argument(text);
    return Rational(p, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "expected an integer or a fraction p/q, got '" + text + "'");
  }
}

// diag(w, w*) -> w, or Validation.
UnitaryRep block_form_corner(const UnitaryRep& target) {
  const int n = target.n();
  if (n % 2 != 0) throw Error(ErrorKind::Validation, "broise target must have even size");
  const int k = n / 2;
  const Matrix& t = target.matrix();
  const Matrix w = t.topLeftCorner(k, k);
  const double off = std::max(t.topRightCorner(k, k).cwiseAbs().maxCoeff(), t.bottomLeftCorner(k, k).cwiseAbs().maxCoeff());
  const double mirror = (t.bottomRightCorner(k, k) - w.adjoint()).cwiseAbs().maxCoeff();
  if (off > kTol.unitarity || mirror > kTol.unitarity) {
    throw Error(ErrorKind::Validation, "broise target must have the block form diag(w, w*)");
  }
  return UnitaryRep::from_matrix(w);
}

struct GenerateArgs {
  std::string u_path, v_path, mode = "rank-dep", s_text = "1", out_path;
  int m = 1;
  std::uint64_t seed = kDefaultSeed;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  Certificate cert;
  const GenOptions opts{a.seed};
  if (a.mode == "pipeline") {
    cert = pipeline_generate(decode_rational(read_json_file(a.u_path)), decode_rational(read_json_file(a.v_path)), a.m,
                             parse_fraction(a.s_text));
  } else if (a.mode == "broise") {
    const UnitaryRep target = decode_unitary_or_spectrum(read_json_file(a.u_path));
    const UnitaryRep w = block_form_corner(target);
    const Symmetry ref = a.v_path.empty() ? Symmetry::reference(w.n())
                                          : Symmetry::from_matrix(decode_matrix(read_json_file(a.v_path)));
    cert = broise_kernel_certificate(w, ref);
  } else {
    const UnitaryRep u = decode_unitary_or_spectrum(read_json_file(a.u_path));
    const UnitaryRep v = decode_unitary_or_spectrum(read_json_file(a.v_path));
    if (a.mode == "rank-dep") {
      cert = generate_rank_dependent(u, v, a.m, opts);
    } else if (a.mode == "rank-indep") {
      const Rational s = parse_fraction(a.s_text);
      if (s.denominator() != 1) throw Error(ErrorKind::Parse, "--s must be an integer window for rank-indep");
      cert = generate_rank_independent(u, v, a.m, static_cast<int>(s.numerator()), opts);
    } else if (a.mode == "full") {
      cert = generate_full(u, v, opts);
    } else {
      throw Error(ErrorKind::Parse, "unknown mode " + a.mode);
    }
  }
  const VerifyReport r = verify_certificate(cert);
  if (!a.out_path.empty()) write_json_file(a.out_path, encode(cert));
  out << "k=" << r.length << " budget=" << cert.claimed_budget << " residual=" << r.residual << '\n';
  return r.pass ? kExitOk : kExitVerifyFail;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
      return kExitParse;
    case ErrorKind::BudgetInfeasible:
      return kExitHypothesis;
    default:
      return kExitValidation;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Projective s-numbers and bounded normal generation certificates"};
  app.name("normgen");
  app.require_subcommand(1);

  std::string input;
  std::string kind = "ell";
  bool one_norm = false, rank = false;
  auto* lengths = app.add_subcommand("lengths", "s-number profile of a unitary or spectrum file");
  lengths->add_option("input", input, "UnitaryRep or CircleSpectrum JSON")->required();
  lengths->add_option("--kind", kind, "mu (singular values of 1 - u) or ell")->check(CLI::IsMember({"mu", "ell"}));
  lengths->add_flag("--one-norm", one_norm, "also report the projective one-norm");
  lengths->add_flag("--rank", rank, "also report the projective rank");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "emit a certificate writing u as conjugates of v^{+-1}");
  generate->add_option("--u", gen.u_path, "target file")->required();
  generate->add_option("--v", gen.v_path, "base file (optional for broise)");
  generate->add_option("--mode", gen.mode)->check(CLI::IsMember({"rank-dep", "rank-indep", "full", "pipeline", "broise"}));
  generate->add_option("--m", gen.m)->check(CLI::PositiveNumber);
  generate->add_option("--s", gen.s_text, "window: integer, or fraction p/q for pipeline");
  generate->add_option("--seed", gen.seed);
  generate->add_option("--out", gen.out_path, "certificate output file");

  std::string cert_path;
  double tol = kTol.eq_per_step;
  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("cert", cert_path)->required();
  verify->add_option("--tol", tol, "projective tolerance per step")->check(CLI::PositiveNumber);

  CorpusOptions corpus_opts;
  std::string sizes = "2:10", report_path;
  auto* corpus = app.add_subcommand("corpus", "run the seeded certificate and diagnostic suites");
  corpus->add_option("--seed", corpus_opts.seed);
  corpus->add_option("--sizes", sizes, "size range lo:hi");
  corpus->add_option("--cases", corpus_opts.cases, "instances per suite")->check(CLI::NonNegativeNumber);
  corpus->add_option("--threads", corpus_opts.threads);
  corpus->add_option("--report", report_path, "write the report here instead of stdout");

  int cx_n = 0;
  auto* counter = app.add_subcommand("counterexample", "rank obstruction for the diagonal pair");
  counter->add_option("--n", cx_n)->required();

  BudgetQuery bq;
  std::optional<double> ell_opt;
  auto* budgets = app.add_subcommand("budgets", "published budget formulas");
  budgets->add_option("--m", bq.m);
  budgets->add_option("--s", bq.s, "fraction in (0, 1]");
  budgets->add_option("--s-index", bq.s_index);
  budgets->add_option("--n", bq.n);
  budgets->add_option("--ell", ell_opt);
  budgets->add_option("--c", bq.c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*lengths) {
      const UnitaryRep u = decode_unitary_or_spectrum(read_json_file(input));
      json j;
      if (kind == "mu") {
        j = encode(mu_profile(Matrix::Identity(u.n(), u.n()) - u.matrix()));
      } else {
        j = encode(ell_profile(u));
      }
      if (one_norm) j["one_norm"] = ell_one_norm(u);
      if (rank) j["rank"] = projective_rank(u);
      out << j.dump(2) << '\n';
      return kExitOk;
    }
    if (*generate) return cmd_generate(gen, out);
    if (*verify) {
      const Certificate c = decode_certificate(read_json_file(cert_path));
      const VerifyReport r = verify_certificate(c, VerifyOptions{tol});
      out << encode(r).dump(2) << '\n';
      return r.pass ? kExitOk : kExitVerifyFail;
    }
    if (*corpus) {
      const auto colon = sizes.find(':');
      try {
        corpus_opts.n_min = std::stoi(sizes.substr(0, colon));
        corpus_opts.n_max = colon == std::string::npos ? corpus_opts.n_min : std::stoi(sizes.substr(colon + 1));
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "--sizes expects lo:hi");
      }
      const json report = run_corpus(corpus_opts);
      if (report_path.empty()) {
        out << report.dump(2) << '\n';
      } else {
        write_json_file(report_path, report);
        out << "suites=" << report["suites"].size() << " all_passed=" << report["all_passed"] << '\n';
      }
      return report["all_passed"].get<bool>() ? kExitOk : kExitVerifyFail;
    }
    if (*counter) {
      if (cx_n < 2) {
        err << "counterexample: --n must be at least 2\n";
        return kExitParse;
      }
      const CounterexampleReport r = counterexample_pair(cx_n, unit(1.0), unit(std::sqrt(2.0)));
      out << encode(r).dump(2) << '\n';
      return kExitOk;
    }
    if (*budgets) {
      bq.ell = ell_opt;
      out << encode(theorem_budgets(bq)).dump(2) << '\n';
      return kExitOk;
    }
  } catch (const HypothesisError& e) {
    err << encode(e.report()).dump(2) << '\n';
    return kExitHypothesis;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitParse;
}

}  // namespace normgen
