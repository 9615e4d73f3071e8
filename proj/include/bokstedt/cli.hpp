#pragma once

// Command-line front end: `bok verify`, `bok search`, `bok emit`.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 a check failed,
// 3 a resource budget was exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/report.hpp"
#include "bokstedt/simplicial.hpp"
#include "bokstedt/sl2.hpp"
#include "bokstedt/verify.hpp"

namespace bok {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_check_failed = 2, exit_budget = 3 };

struct RunConfig {
  std::vector<int> primes;
  int ext = 1;
  std::string solver = "auto";
  std::size_t budget = 400'000'000;  // stored matrix entries
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  bool big = false;
  bool huge = false;
  bool timings = false;
  bool negate_h = false;
};

inline Backend parse_backend(const std::string& s) {
  if (s == "dense") return Backend::dense;
  if (s == "sparse") return Backend::sparse;
  if (s == "auto") return Backend::automatic;
  throw Error(ErrorKind::parse_error, "unknown solver " + s);
}

/// Prime list after defaults and the --big / --huge gates.
inline std::vector<int> resolve_primes(const RunConfig& c) {
  std::vector<int> primes = c.primes;
  if (primes.empty()) {
    primes = {3, 5, 7};
    if (c.big) primes.push_back(11);
    if (c.huge) primes.push_back(13);
  }
  for (int p : primes) {
    make_field(static_cast<std::uint32_t>(std::max(p, 0)), 1);  // NotPrime / EvenCharacteristic
    if (p >= 13 && !c.huge) throw Error(ErrorKind::precondition_violated, "p >= 13 needs --huge");
    if (p >= 11 && !c.big && !c.huge) throw Error(ErrorKind::precondition_violated, "p = 11 needs --big");
  }
  if (c.budget == 0) throw Error(ErrorKind::precondition_violated, "budget must be positive");
  if (c.format != "json" && c.format != "csv") throw Error(ErrorKind::parse_error, "format must be json or csv");
  return primes;
}

inline VerifyOptions verify_options(const RunConfig& c) {
  VerifyOptions o;
  o.search.boundary.backend = parse_backend(c.solver);
  o.search.boundary.nnz_budget = c.budget;
  o.search.threads = c.threads;
  o.search.negate_h = c.negate_h;
  o.record_timings = c.timings;
  return o;
}

namespace detail {

inline void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty() || c.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::precondition_violated, "cannot open " + c.out);
  f << text;
}

inline std::string render_reports(const RunConfig& c, const std::vector<std::pair<Field, VerificationReport>>& reps) {
  if (c.format == "csv") {
    std::string s = verdicts_csv_header();
    for (const auto& [f, r] : reps) s += verdicts_csv_rows(f, r);
    return s;
  }
  json j;
  if (reps.size() == 1) {
    j = to_json(reps.front().first, reps.front().second);
  } else {
    j = json::array();
    for (const auto& [f, r] : reps) j.push_back(to_json(f, r));
  }
  return j.dump(2) + "\n";
}

}  // namespace detail

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err, bool lemmas) {
  const auto primes = resolve_primes(c);
  std::vector<std::pair<Field, VerificationReport>> reps;
  bool ok = true;
  for (int p : primes) {
    const Field field = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(c.ext));
    VerifyOptions o = verify_options(c);
    o.lemmas = lemmas;
    VerificationReport r = run_verification(field, o);
    if (lemmas && !r.lemmas_pass()) {
      ok = false;
      for (const auto& [name, l] : r.lemmas)
        if (!l.passed) err << "p=" << p << ": check " << name << " failed\n";
    }
    if (r.witnesses.empty()) {
      ok = false;
      err << "p=" << p << ": no witness lambda over " << field.describe() << '\n';
    }
    reps.emplace_back(field, std::move(r));
  }
  detail::write_output(c, detail::render_reports(c, reps), out);
  return ok ? exit_ok : exit_check_failed;
}

inline std::string emit_t(const Field& field, const std::string& format, bool negate_h) {
  const CycVector t = element_t(field, TMethod::structural, make_sl2_basis(field, negate_h));
  if (format == "csv") {
    std::string s = "necklace,coefficient\n";
    for (const auto& [i, c] : t.entries()) s += t.space().label(i) + "," + field_elem_text(field, c) + "\n";
    return s;
  }
  return json{{"p", field.characteristic()}, {"t", to_json(field, t)}}.dump(2) + "\n";
}

inline std::string emit_tpoly(const Field& field, const std::string& format, bool negate_h) {
  const TPoly tp = t_poly(field, make_sl2_basis(field, negate_h));
  if (format == "csv") {
    std::string s = "necklace,degree,coefficient\n";
    for (const auto& [i, poly] : tp.coeffs)
      for (std::size_t k = 0; k < poly.coefficients().size(); ++k)
        if (poly.coefficient(k).value != 0)
          s += tp.space->label(i) + "," + std::to_string(k) + "," + field_elem_text(field, poly.coefficient(k)) + "\n";
    return s;
  }
  json coeffs = json::object();
  for (const auto& [i, poly] : tp.coeffs) {
    json a = json::array();
    for (auto c : poly.coefficients()) a.push_back(to_json(field, c));
    coeffs[tp.space->label(i)] = a;
  }
  return json{{"p", field.characteristic()}, {"t_lambda", coeffs}}.dump(2) + "\n";
}

struct PnRow {
  std::size_t degree, moore_dim, homology;
  bool is_free;
};

inline std::vector<PnRow> pn_table(const Field& field, std::size_t n, std::size_t budget) {
  const std::size_t p = field.characteristic();
  const std::size_t top = p * n + 1;
  const SphereModule x(n, top);
  const SimplicialLevels levels = tensor_power_cyclic(field, x, p, top, std::min<std::size_t>(budget, 5'000'000));
  const EquivariantComplex c = moore_complex(field, levels);
  const auto h = homology_dims(field, c);
  std::vector<PnRow> rows;
  // the top level only feeds the image into degree p n
  for (std::size_t m = 0; m < top; ++m) rows.push_back({m, c.dims[m], h[m], projectivity_check(field, c.sigma[m])});
  return rows;
}

inline std::string emit_pn(const Field& field, std::size_t n, const std::string& format, std::size_t budget) {
  const auto rows = pn_table(field, n, budget);
  if (format == "csv") {
    std::string s = "degree,moore_dim,homology,free\n";
    for (const auto& r : rows)
      s += std::to_string(r.degree) + "," + std::to_string(r.moore_dim) + "," + std::to_string(r.homology) + "," +
           (r.is_free ? "1" : "0") + "\n";
    return s;
  }
  json a = json::array();
  for (const auto& r : rows)
    a.push_back({{"degree", r.degree}, {"moore_dim", r.moore_dim}, {"homology", r.homology}, {"free", r.is_free}});
  return json{{"p", field.characteristic()}, {"n", n}, {"degrees", a}}.dump(2) + "\n";
}

/// Parses argv and runs one subcommand.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact checks for the sl2 trace construction over finite fields"};
  app.require_subcommand(1);
  RunConfig c;
  std::string what;
  std::size_t n = 1;

  auto common = [&](CLI::App* s) {
    s->add_option("-p,--prime", c.primes, "prime (repeatable)")->envname("BOK_PRIMES")->delimiter(',');
    s->add_option("--ext", c.ext, "extension degree")->envname("BOK_EXT")->check(CLI::PositiveNumber);
    s->add_option("--solver", c.solver, "dense, sparse or auto")
        ->envname("BOK_SOLVER")
        ->check(CLI::IsMember({"dense", "sparse", "auto"}));
    s->add_option("--threads", c.threads, "worker threads")->envname("BOK_THREADS")->check(CLI::PositiveNumber);
    s->add_option("--out", c.out, "output file")->envname("BOK_OUT");
    s->add_option("--format", c.format, "json or csv")->envname("BOK_FORMAT")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--budget", c.budget, "maximum stored matrix entries")->envname("BOK_BUDGET");
    s->add_flag("--big", c.big, "include p = 11");
    s->add_flag("--huge", c.huge, "include p = 13");
    s->add_flag("--timings", c.timings, "record timings in the report");
    s->add_flag("--negate-h", c.negate_h, "use -h in place of h");
  };
  auto* verify = app.add_subcommand("verify", "run every check and the lambda search");
  auto* search = app.add_subcommand("search", "run the lambda search");
  auto* emit = app.add_subcommand("emit", "print t, t_lambda, the face matrices or the P(n) table");
  common(verify);
  common(search);
  common(emit);
  emit->add_option("what", what, "t, tpoly, matrices or pn")
      ->required()
      ->check(CLI::IsMember({"t", "tpoly", "matrices", "pn"}));
  emit->add_option("-n", n, "sphere dimension for pn")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (verify->parsed()) return cmd_verify(c, out, err, true);
    if (search->parsed()) return cmd_verify(c, out, err, false);
    // emit
    if (what == "matrices") {
      detail::write_output(c, face_matrices_text(SphereModule(1, 4)), out);
      return exit_ok;
    }
    const auto primes = resolve_primes(c);
    std::string text;
    for (int p : primes) {
      const Field field = make_field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(c.ext));
      if (what == "t") text += emit_t(field, c.format, c.negate_h);
      if (what == "tpoly") text += emit_tpoly(field, c.format, c.negate_h);
      if (what == "pn") text += emit_pn(field, n, c.format, c.budget);
    }
    detail::write_output(c, text, out);
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::budget_exceeded ? exit_budget : exit_usage;
  }
}

}  // namespace bok
