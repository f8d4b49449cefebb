// Command-line front end: reads a problem file (or a catalog entry) and prints reports.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbo/error.hpp"
#include "tbo/verify.hpp"

using namespace tbo;
using nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, Failure = 1, InputError = 2, Unsupported = 3 };

struct Settings {
  std::string file;
  std::string example;
  std::optional<std::int64_t> k;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> specializations;
  std::optional<unsigned> prime_bits;
  std::string format = "human";
  bool run = false;
};

bool machine(const Settings& s) { return s.format == "machine"; }

ProblemFile load(const Settings& s) {
  if (!s.file.empty() && !s.example.empty()) throw Error(ErrorKind::ParseError, "give either a file or --example, not both");
  if (s.file.empty() && s.example.empty()) throw Error(ErrorKind::ParseError, "no problem file and no --example");
  ProblemFile p = s.file.empty() ? catalog_problem(s.example) : load_problem(s.file);
  if (s.seed) p.options.seed = *s.seed;
  if (s.specializations) p.options.specializations = *s.specializations;
  if (s.prime_bits) p.options.prime_bits = *s.prime_bits;
  return p;
}

// ---- JSON helpers

ordered_json js(const Integer& z) { return z.fits_slong_p() ? ordered_json(z.get_si()) : ordered_json(z.get_str()); }
ordered_json js(const Rational& q) {
  if (q.get_den() == 1) return js(Integer(q.get_num()));
  return q.get_str();
}
template <class V>
ordered_json js_vec(const V& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(js(x));
  return a;
}
ordered_json js_set(const Anticone& a) {
  ordered_json out = ordered_json::array();
  for (auto i : a) out.push_back(i + 1);
  return out;
}
ordered_json js_matrix(const FpMatrix& M) {
  ordered_json out = ordered_json::array();
  for (const auto& row : M) out.push_back(row);
  return out;
}

// One-based index list as it appears in the JSON, printed like an anticone.
std::string set_text(const ordered_json& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + a[i].dump();
  return s + "}";
}

std::string join(const std::vector<Integer>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

void print_matrix(std::ostream& out, const FpMatrix& M) {
  for (const auto& row : M) {
    out << "    ";
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
}

// ---- analyze

ordered_json validation_json(const GitDatum& d) {
  const auto v = validate(d);
  ordered_json j;
  j["all_rays_anticone"] = v.all_rays_anticone.pass;
  if (v.all_rays_anticone.witness) j["all_rays_witness"] = js_set(*v.all_rays_anticone.witness);
  j["anticones_span"] = v.anticones_span.pass;
  if (v.anticones_span.witness) j["span_witness"] = js_set(*v.anticones_span.witness);
  if (v.ok()) {
    ordered_json mins = ordered_json::array();
    for (const auto& a : minimal_anticones(d)) mins.push_back(js_set(a));
    j["minimal_anticones"] = mins;
    ordered_json ext = ordered_json::array();
    for (auto i : extended_set(d)) ext.push_back(i + 1);
    j["extended_set"] = ext;
  }
  return j;
}

ordered_json locus_json(const ExceptionalDatum& x) {
  ordered_json j;
  j["rays"] = js_set(x.rays);
  j["weights"] = js_vec(x.weights);
  j["saturation_index"] = js(x.saturation_index);
  j["base_dim"] = x.base_dim;
  j["supported"] = x.supported();
  if (!x.supported()) j["reason"] = x.unsupported_reason();
  return j;
}

int analyze(const Settings& st, std::ostream& out) {
  const ProblemFile p = load(st);
  ordered_json j;
  j["name"] = p.name;
  j["validation"] = {{"plus", validation_json(p.plus())}, {"minus", validation_json(p.minus())}};
  if (!validate(p.plus()).ok() || !validate(p.minus()).ok()) {
    if (machine(st)) out << j.dump(2) << "\n";
    else out << "invalid GIT datum\n" << j["validation"].dump(2) << "\n";
    return InputError;
  }
  const WallCrossing wc = analyze_wall(p.plus(), p.minus());
  ordered_json w;
  w["e"] = js_vec(wc.e);
  w["omega0"] = js_vec(wc.omega0);
  w["pairings"] = js_vec(wc.pairing);
  w["M_plus"] = js_set(wc.M_plus);
  w["M_minus"] = js_set(wc.M_minus);
  w["M_zero"] = js_set(wc.M_zero);
  w["N"] = js(wc.N);
  w["crepant"] = wc.crepant;
  j["wall"] = w;
  if (wc.crepant) {
    const auto ctx = make_context(wc);
    ordered_json chars = ordered_json::array();
    for (const auto& d : ctx.blowup.tilde.D) chars.push_back(js_vec(d));
    ordered_json pts = ordered_json::array();
    for (const auto& t : ctx.tilde_points)
      pts.push_back({{"delta", js_set(t.delta_tilde)},
                     {"kind", t.kind == TildeKind::Flopping ? "flopping" : "nonflopping"},
                     {"plus", js_set(t.image_plus)},
                     {"minus", js_set(t.image_minus)}});
    j["blowup"] = {{"characters", chars}, {"fixed_points", pts}};
    j["loci"] = {{"plus", locus_json(exceptional_data(wc, Side::Plus))},
                 {"minus", locus_json(exceptional_data(wc, Side::Minus))}};
  }
  if (machine(st)) {
    out << j.dump(2) << "\n";
    return Ok;
  }

  out << "problem " << p.name << "\n";
  if (!p.description.empty()) out << "  " << p.description << "\n";
  out << "rank " << p.r << ", " << p.characters.size() << " characters\n";
  for (const char* side : {"plus", "minus"}) {
    const auto& v = j["validation"][side];
    out << side << " side: minimal anticones";
    for (const auto& a : v["minimal_anticones"]) out << " " << set_text(a);
    out << "\n";
  }
  out << "wall: e = " << to_string(wc.e) << ", omega0 = " << to_string(wc.omega0) << "\n";
  out << "  pairings D_i . e = " << join(wc.pairing) << "\n";
  out << "  M+ = " << to_string(wc.M_plus) << ", M- = " << to_string(wc.M_minus) << ", M0 = " << to_string(wc.M_zero)
      << "\n";
  out << "  N = " << wc.N << ", crepant = " << (wc.crepant ? "true" : "false") << "\n";
  if (!wc.crepant) return Ok;
  out << "blow-up characters:";
  for (const auto& c : j["blowup"]["characters"]) out << " " << c.dump();
  out << "\nblow-up fixed points:\n";
  for (const auto& t : j["blowup"]["fixed_points"])
    out << "  " << set_text(t["delta"]) << "  " << t["kind"].get<std::string>() << "  -> "
        << set_text(t["plus"]) << " / " << set_text(t["minus"])
        << "\n";
  for (const char* side : {"plus", "minus"}) {
    const auto& l = j["loci"][side];
    out << side << " locus: weights " << l["weights"].dump() << ", saturation index " << l["saturation_index"].dump()
        << ", base dimension " << l["base_dim"].dump();
    if (l.contains("reason")) out << " (" << l["reason"].get<std::string>() << ")";
    out << "\n";
  }
  return Ok;
}

// ---- fixed points

ordered_json space_json(const ToricSpace& X) {
  ordered_json pts = ordered_json::array();
  for (const auto& fp : X.fixed_points) {
    ordered_json chars = ordered_json::array();
    for (const auto& c : fp.characters) chars.push_back({{"residues", js_vec(c.residues)}, {"lift", js_vec(c.rho_hat)}});
    pts.push_back({{"delta", js_set(fp.delta)},
                   {"order", js(fp.group_order)},
                   {"invariant_factors", js_vec(fp.invariant_factors)},
                   {"characters", chars},
                   {"euler", normal_euler(X, fp).to_string()}});
  }
  return pts;
}

int fixed_points(const Settings& st, std::ostream& out) {
  const ProblemFile p = load(st);
  ordered_json j;
  j["name"] = p.name;
  j["plus"] = space_json(make_space(p.plus()));
  j["minus"] = space_json(make_space(p.minus()));
  if (machine(st)) {
    out << j.dump(2) << "\n";
    return Ok;
  }
  out << "problem " << p.name << "\n";
  out << "restrictions are written in torus exponents: e^(q) means prod_i e^(q_i lambda_i)\n";
  for (const char* side : {"minus", "plus"}) {
    out << side << " side:\n";
    for (const auto& fp : j[side]) {
      out << "  " << set_text(fp["delta"]) << "  |G| = " << fp["order"].dump()
          << "  lifts";
      for (const auto& c : fp["characters"]) out << " " << c["lift"].dump();
      out << "\n    euler " << fp["euler"].get<std::string>() << "\n";
    }
  }
  return Ok;
}

// ---- transforms

struct Prepared {
  ProblemFile problem;
  CrossingContext ctx;
  std::vector<SpecializationPoint> points;
};

Prepared prepare(const Settings& st) {
  ProblemFile p = load(st);
  const WallCrossing wc = analyze_wall(p.plus(), p.minus());
  Prepared out{p, make_context(wc), {}};
  out.points = specializations_for(out.ctx, p.options);
  return out;
}

std::int64_t require_k(const Settings& st) {
  if (!st.k) throw Error(ErrorKind::ParseError, "--k is required");
  return *st.k;
}

std::string label(const ToricSpace& X, const BasisLabel& b) {
  const auto& fp = X.fixed_points[b.point];
  return "e" + to_string(fp.delta) + "[" + to_string(fp.characters[b.character].rho_hat) + "]";
}

ordered_json class_json(const ToricSpace& X, const LocalizedClass& c) {
  ordered_json r = ordered_json::array();
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p)
    r.push_back({{"at", js_set(X.fixed_points[p].delta)}, {"restriction", c.restrictions[p].to_string()}});
  ordered_json j;
  if (c.global) j["global"] = c.global->to_string();
  j["restrictions"] = r;
  j["genuine"] = c.genuine;
  return j;
}

ordered_json point_json(const SpecializationPoint& s) {
  return {{"prime", s.field.modulus()}, {"L", s.L}, {"zeta", s.zeta}, {"y", s.y}};
}

int bo(const Settings& st, std::ostream& out) {
  const std::int64_t k = require_k(st);
  const Prepared pr = prepare(st);
  const auto& ctx = pr.ctx;
  ordered_json imgs = ordered_json::array();
  for (const auto& b : basis_labels(ctx.minus)) {
    auto j = class_json(ctx.plus, bo_apply(ctx, k, b.point, b.character));
    imgs.push_back({{"source", label(ctx.minus, b)}, {"image", j}});
  }
  if (machine(st)) {
    out << ordered_json{{"name", pr.problem.name}, {"k", k}, {"images", imgs}}.dump(2) << "\n";
    return Ok;
  }
  out << "problem " << pr.problem.name << ", BO_" << k << " from the minus side to the plus side\n";
  out << "global classes list r line-bundle exponents then m torus exponents: e^(p, mu) means L(p) e^mu\n";
  for (const auto& im : imgs) {
    out << im["source"].get<std::string>() << " ->\n";
    out << "  global " << im["image"]["global"].get<std::string>() << "\n";
    for (const auto& r : im["image"]["restrictions"])
      out << "  at " << set_text(r["at"]) << ": " << r["restriction"].get<std::string>()
          << "\n";
    out << "  genuine: " << (im["image"]["genuine"].get<bool>() ? "yes" : "NO") << "\n";
  }
  return Ok;
}

int matrix(const Settings& st, std::ostream& out) {
  const std::int64_t k = require_k(st);
  const Prepared pr = prepare(st);
  const auto& ctx = pr.ctx;
  const std::int64_t partner = ctx.wc.N.get_si() - 1 - k;
  ordered_json mats = ordered_json::array();
  bool all = true;
  for (const auto& s : pr.points) {
    const auto M = bo_matrix(ctx, k, Direction::MinusToPlus, s);
    const bool dual = verify_duality(ctx, k, s);
    all = all && dual;
    mats.push_back({{"point", point_json(M.specialization)}, {"entries", js_matrix(M.entries)}, {"duality", dual}});
  }
  ordered_json rows = ordered_json::array(), cols = ordered_json::array();
  for (const auto& b : basis_labels(ctx.plus)) rows.push_back(label(ctx.plus, b));
  for (const auto& b : basis_labels(ctx.minus)) cols.push_back(label(ctx.minus, b));
  if (machine(st)) {
    out << ordered_json{{"name", pr.problem.name}, {"k", k}, {"rows", rows}, {"columns", cols}, {"matrices", mats}}.dump(2)
        << "\n";
    return all ? Ok : Failure;
  }
  out << "problem " << pr.problem.name << ", matrix of BO_" << k << " over F_p\n";
  out << "columns " << cols.dump() << "\nrows    " << rows.dump() << "\n";
  for (const auto& m : mats) {
    out << "p = " << m["point"]["prime"].get<std::uint64_t>() << "\n";
    print_matrix(out, m["entries"].get<FpMatrix>());
    out << "  BO'_" << partner << " BO_" << k << " = identity: " << (m["duality"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  return all ? Ok : Failure;
}

int twist(const Settings& st, std::ostream& out) {
  const std::int64_t k = require_k(st);
  const Prepared pr = prepare(st);
  const auto& ctx = pr.ctx;
  const ExceptionalDatum x = exceptional_data(ctx.wc, Side::Minus);
  if (!x.supported()) {
    const std::string why = x.unsupported_reason();
    if (machine(st)) out << ordered_json{{"name", pr.problem.name}, {"k", k}, {"status", "SKIPPED"}, {"reason", why}}.dump(2) << "\n";
    else out << "problem " << pr.problem.name << ": twist SKIPPED: " << why << "\n";
    return Unsupported;
  }
  const LocalizedClass W = substack_class(ctx, k);
  ordered_json mats = ordered_json::array();
  for (const auto& s : pr.points) {
    const auto T = twist_matrix(ctx, k, s);
    mats.push_back({{"point", point_json(s)},
                    {"chi_WW", euler_pairing(ctx.minus, W, W, s)},
                    {"entries", js_matrix(T.matrix.entries)}});
  }
  if (machine(st)) {
    out << ordered_json{{"name", pr.problem.name}, {"k", k}, {"locus", locus_json(x)}, {"W", class_json(ctx.minus, W)}, {"matrices", mats}}
               .dump(2)
        << "\n";
    return Ok;
  }
  out << "problem " << pr.problem.name << ", twist by O(" << k << ") on the minus-side locus, weights " << join(x.weights) << "\n";
  out << "W global " << W.global->to_string() << "\n";
  for (const auto& m : mats) {
    out << "p = " << m["point"]["prime"].get<std::uint64_t>() << ", chi(W, W) = " << m["chi_WW"].get<std::uint64_t>() << "\n";
    print_matrix(out, m["entries"].get<FpMatrix>());
  }
  return Ok;
}

ordered_json result_json(const VerificationResult& r) {
  ordered_json v = ordered_json::array();
  for (const auto& d : r.verdicts)
    v.push_back({{"criterion", d.criterion}, {"identity", d.identity}, {"status", to_string(d.status)}, {"detail", d.detail}});
  ordered_json pts = ordered_json::array();
  for (const auto& s : r.specializations) pts.push_back(point_json(s));
  return {{"name", r.name}, {"k_min", r.k_min}, {"k_max", r.k_max}, {"specializations", pts}, {"verdicts", v}};
}

void print_result(std::ostream& out, const VerificationResult& r) {
  out << "problem " << r.name << ", k in [" << r.k_min << ", " << r.k_max << "], " << r.specializations.size()
      << " specializations\n";
  for (const auto& d : r.verdicts)
    out << "  [" << d.criterion << "] " << to_string(d.status) << "  " << d.identity << "  (" << d.detail << ")\n";
}

int verify(const Settings& st, std::ostream& out) {
  const ProblemFile p = load(st);
  const VerificationResult r = run_verification(p);
  if (machine(st)) out << result_json(r).dump(2) << "\n";
  else print_result(out, r);
  return r.exit_code();
}

int examples(const Settings& st, std::ostream& out) {
  if (!st.example.empty() && !st.run) {
    out << to_json(catalog_problem(st.example));
    return Ok;
  }
  if (!st.run) {
    if (machine(st)) {
      ordered_json a = ordered_json::array();
      for (const auto& n : catalog_names()) a.push_back({{"name", n}, {"description", catalog_problem(n).description}});
      out << a.dump(2) << "\n";
    } else {
      for (const auto& n : catalog_names()) out << n << "  " << catalog_problem(n).description << "\n";
    }
    return Ok;
  }
  bool failed = false, skipped = false;
  ordered_json all = ordered_json::array();
  for (const auto& n : catalog_names()) {
    if (!st.example.empty() && n != st.example) continue;
    Settings one = st;
    one.example = n;
    const VerificationResult r = run_verification(load(one));
    if (machine(st)) all.push_back(result_json(r));
    else print_result(out, r);
    failed = failed || r.exit_code() == Failure;
    skipped = skipped || r.exit_code() == Unsupported;
  }
  if (machine(st)) out << all.dump(2) << "\n";
  return failed ? Failure : skipped ? Unsupported : Ok;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotCrepant:
    case ErrorKind::SaturationFailure: return Unsupported;
    case ErrorKind::SingularAfterResampling:
    case ErrorKind::DivisionByZeroAtSpecialization:
    case ErrorKind::EulerClassVanishes:
    case ErrorKind::NotAdmissible:
    case ErrorKind::MissingGlobalExpression:
    case ErrorKind::DenominatorNotDividingL: return Failure;
    default: return InputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bondal-Orlov transforms for crepant toric wall crossings, in localized equivariant K-theory"};
  app.require_subcommand(1);
  Settings st;

  auto common = [&](CLI::App* sub, bool wants_k) {
    sub->add_option("file", st.file, "problem file (JSON)");
    sub->add_option("--example", st.example, "built-in catalog entry instead of a file");
    if (wants_k) sub->add_option("--k", st.k, "twist degree")->required();
    sub->add_option("--seed", st.seed, "random seed for specializations");
    sub->add_option("--specializations", st.specializations, "number of F_p points")->check(CLI::Range(1u, 1000u));
    sub->add_option("--prime-bits", st.prime_bits, "size bound of the primes")->check(CLI::Range(8u, 62u));
    sub->add_option("--format", st.format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  };
  using Handler = int (*)(const Settings&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands = {
      {app.add_subcommand("analyze", "validate both sides, find the wall, check crepancy"), analyze},
      {app.add_subcommand("fixed-points", "isotropy groups, characters and Euler classes"), fixed_points},
      {app.add_subcommand("bo", "BO_k image of every basis vector"), bo},
      {app.add_subcommand("matrix", "matrix of BO_k at each specialization"), matrix},
      {app.add_subcommand("twist", "twist by O(k) on the minus-side locus"), twist},
      {app.add_subcommand("verify", "run the full identity suite"), verify},
      {app.add_subcommand("examples", "list the catalog, print an entry, or --run it"), examples},
  };
  for (auto& [sub, h] : commands) {
    const std::string n = sub->get_name();
    common(sub, n == "bo" || n == "matrix" || n == "twist");
    if (n == "examples") sub->add_flag("--run", st.run, "verify every catalog entry");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : InputError;
  }

  try {
    for (auto& [sub, h] : commands)
      if (sub->parsed()) return h(st, std::cout);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return Failure;
  }
  return InputError;
}
