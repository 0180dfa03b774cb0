#include "normgen/json_io.hpp"

#include <fstream>
#include <sstream>

namespace normgen {

namespace {

json encode_cplx(cplx z) { return json::array({z.real(), z.imag()}); }

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

json encode_optional(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json encode(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array(), c = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"n", m.rows()}, {"re", re}, {"im", im}};
}

json encode(const UnitaryRep& u) { return encode(u.matrix()); }

json encode(const CircleSpectrum& s) { return {{"angles", s.angles}}; }

json encode(const SProfile& p) {
  json j{{"kind", p.kind == SProfile::Kind::Mu ? "mu" : "ell"}, {"values", p.values}};
  if (!p.phases.empty()) {
    json ph = json::array();
    for (cplx z : p.phases) ph.push_back(encode_cplx(z));
    j["phases"] = ph;
  }
  return j;
}

json encode(const OptimalOrdering& o) {
  return {{"angles", o.angles.angles}, {"order", o.order}, {"sigma", o.sigma}, {"diffs", o.diffs},
          {"heuristic", o.heuristic}};
}

json encode(const AngleSumOrdering& o) {
  return {{"angles", o.angles}, {"sigma", o.sigma}, {"prefix_max", o.prefix_max}};
}

json encode(const Certificate& c) {
  json steps = json::array();
  for (const Step& s : c.steps) steps.push_back({{"g", encode(s.g)}, {"e", s.e}});
  json j{{"schema", kCertSchema},
         {"theorem", to_string(c.theorem)},
         {"target", encode(c.target)},
         {"base", encode(c.base)},
         {"steps", steps},
         {"claimed_budget", c.claimed_budget},
         {"params", {{"m", c.params.m}, {"s", c.params.s}, {"n", c.params.n}}},
         {"metadata", c.metadata}};
  if (c.s0) j["s0"] = *c.s0;
  return j;
}

json encode(const VerifyReport& r) {
  return {{"pass", r.pass},
          {"length", r.length},
          {"claimed_budget", r.claimed_budget},
          {"within_budget", r.within_budget},
          {"shapes_ok", r.shapes_ok},
          {"target_unitary", r.target_unitary},
          {"base_unitary", r.base_unitary},
          {"residual", r.residual},
          {"residual_tol", r.residual_tol},
          {"product_ok", r.product_ok},
          {"max_unitarity_defect", r.max_unitarity_defect},
          {"conjugators_unitary", r.conjugators_unitary},
          {"max_spectrum_mismatch", r.max_spectrum_mismatch},
          {"conjugacy_ok", r.conjugacy_ok},
          {"easy_direction_worst", r.easy_direction_worst},
          {"easy_direction_ok", r.easy_direction_ok},
          {"lower_bound_gap", r.lower_bound_gap},
          {"lower_bound_ok", r.lower_bound_ok},
          {"failures", r.failures}};
}

json encode(const HypothesisReport& r) {
  json j{{"m", r.m},         {"s", r.s},         {"ell0_u", r.ell0_u},
         {"ell_v", r.ell_v}, {"slack", r.slack}, {"satisfied", r.satisfied},
         {"max_feasible_s", r.max_feasible_s}};
  j["min_feasible_m"] = r.min_feasible_m ? json(*r.min_feasible_m) : json(nullptr);
  return j;
}

json encode(const BudgetTable& t) {
  json j{{"rank_dependent", t.rank_dependent}, {"rank_independent", t.rank_independent},
         {"pipeline", t.pipeline},             {"main_theorem", t.main_theorem},
         {"bng_ii1", t.bng_ii1}};
  j["full_generation"] = t.full_generation ? json(*t.full_generation) : json(nullptr);
  j["full_generation_raw"] = encode_optional(t.full_generation_raw);
  j["log_budget"] = encode_optional(t.log_budget);
  return j;
}

json encode(const CounterexampleReport& r) {
  return {{"n", r.n},
          {"u", encode(r.u)},
          {"v", encode(r.v)},
          {"lower_bound", r.lower_bound},
          {"rank_distance", r.rank_distance},
          {"max_feasible_s", r.max_feasible_s},
          {"minimal_m", r.minimal_m},
          {"fallback_budget", r.fallback_budget}};
}

json encode(const RationalSpectrum& r) {
  json atoms = json::array();
  for (const RationalAtom& a : r.atoms()) {
    atoms.push_back({{"angle", a.angle}, {"weight", {{"num", a.weight.numerator()}, {"den", a.weight.denominator()}}}});
  }
  return {{"atoms", atoms}};
}

json encode(const Approximation& a) {
  return {{"spectrum", encode(a.spectrum)},
          {"unchanged", a.unchanged},
          {"net_size", a.net_size},
          {"denominator", a.denominator},
          {"remainder", a.remainder},
          {"certified_bound", a.certified_bound},
          {"realized_distance", a.realized_distance}};
}

json encode(const StabilityReport& r) {
  json rows = json::array();
  for (const StabilityRow& row : r.rows) {
    rows.push_back({{"index", row.index}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"holds", row.holds}});
  }
  return {{"distance", r.distance},   {"claimed_eps", r.claimed_eps},
          {"distance_below_eps", r.distance_below_eps},
          {"threshold", encode_optional(r.threshold)},
          {"rows", rows},             {"violations", r.violations},
          {"holds", r.holds}};
}

json encode(const AuxReport& r) {
  json rows = json::array();
  for (const AuxRow& row : r.rows) {
    rows.push_back(
        {{"index", row.index}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"slack", row.slack}, {"pass", row.pass}});
  }
  return {{"rows", rows}, {"pass", r.pass}};
}

json encode(const CageReport& r) {
  json rows = json::array();
  for (const CageRow& row : r.rows) {
    json j{{"index", row.index}, {"ell", row.ell}, {"mid", row.mid}, {"upper", row.upper}, {"pass", row.pass}};
    j["lower"] = row.has_lower ? json(row.lower) : json(nullptr);
    rows.push_back(std::move(j));
  }
  return {{"rows", rows}, {"pass", r.pass}};
}

Matrix decode_matrix(const json& j) {
  return guarded("matrix", [&] {
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
      throw Error(ErrorKind::Parse, "matrix: expected an object with \"re\" and \"im\"");
    }
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    const auto im = j.at("im").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(re.size());
    if (n == 0 || static_cast<Eigen::Index>(im.size()) != n) throw Error(ErrorKind::Parse, "matrix: bad shape");
    if (j.contains("n") && j.at("n").get<long>() != n) throw Error(ErrorKind::Parse, "matrix: n disagrees with rows");
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(re[i].size()) != n || static_cast<Eigen::Index>(im[i].size()) != n) {
        throw Error(ErrorKind::Parse, "matrix: rows must have length n");
      }
      for (Eigen::Index k = 0; k < n; ++k) m(i, k) = cplx(re[i][k], im[i][k]);
    }
    return m;
  });
}

UnitaryRep decode_unitary(const json& j) { return UnitaryRep::from_matrix(decode_matrix(j)); }

CircleSpectrum decode_spectrum(const json& j) {
  return guarded("spectrum", [&] {
    if (!j.is_object() || !j.contains("angles")) throw Error(ErrorKind::Parse, "spectrum: expected \"angles\"");
    auto a = j.at("angles").get<std::vector<double>>();
    if (a.empty()) throw Error(ErrorKind::Validation, "spectrum: no angles");
    return CircleSpectrum::from_angles(std::move(a));
  });
}

UnitaryRep decode_unitary_or_spectrum(const json& j) {
  if (j.is_object() && j.contains("angles")) return UnitaryRep::diagonal(decode_spectrum(j));
  return decode_unitary(j);
}

Certificate decode_certificate(const json& j) {
  return guarded("certificate", [&] {
    if (!j.is_object() || j.value("schema", std::string()) != kCertSchema) {
      throw Error(ErrorKind::Parse, std::string("certificate: schema must be ") + kCertSchema);
    }
    Certificate c;
    c.theorem = theorem_from_string(j.at("theorem").get<std::string>());
    c.target = decode_matrix(j.at("target"));
    c.base = decode_matrix(j.at("base"));
    for (const json& s : j.at("steps")) c.steps.push_back({decode_matrix(s.at("g")), s.at("e").get<int>()});
    c.claimed_budget = j.at("claimed_budget").get<long>();
    const json& p = j.at("params");
    c.params = {p.at("m").get<int>(), p.at("s").get<double>(), p.at("n").get<int>()};
    c.metadata = j.value("metadata", json::object());
    if (j.contains("s0")) c.s0 = j.at("s0").get<long>();
    return c;
  });
}

RationalSpectrum decode_rational(const json& j) {
  return guarded("rational spectrum", [&] {
    std::vector<RationalAtom> atoms;
    for (const json& a : j.at("atoms")) {
      const json& w = a.at("weight");
      const auto den = w.at("den").get<std::int64_t>();
      if (den <= 0) throw Error(ErrorKind::Validation, "weight denominator must be positive");
      atoms.push_back({a.at("angle").get<double>(), Rational(w.at("num").get<std::int64_t>(), den)});
    }
    return RationalSpectrum::from_atoms(std::move(atoms));
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace normgen
