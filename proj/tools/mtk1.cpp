// mtk1: command-line front end for the definable-set, automorphism and
// K_1 libraries. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mtk1/automorphism.hpp"
#include "mtk1/constructions.hpp"
#include "mtk1/formula.hpp"
#include "mtk1/json_io.hpp"
#include "mtk1/k1_symbolic.hpp"
#include "mtk1/suites.hpp"

using namespace mtk1;

namespace {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultElementCap;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FormulaAST load_formula(const std::string& path) {
  try {
    return parse_formula(read_file(path));
  } catch (const ParseError& e) {
    throw DomainError(path + ":" + e.what());
  }
}

PAMap load_pamap(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
  return pamap_from_json(j);
}

void emit(const Options& opt, const Json& j, const std::string& text) {
  if (opt.json) std::cout << j.dump(2) << '\n';
  else std::cout << text << '\n';
}

RingDescriptor parse_ring(const std::string& text) {
  auto parts = [&] {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) out.push_back(item);
    return out;
  }();
  if (parts.empty()) throw CLI::ValidationError("--ring", "empty ring");
  const std::string& head = parts[0];
  try {
    if (head == "fq" && parts.size() == 2) return RingDescriptor::finite_field(std::stoi(parts[1]));
    if (head == "z" && parts.size() == 1) return RingDescriptor::integers();
    if (head == "poly-char0" && parts.size() <= 2)
      return RingDescriptor::poly_char0(parts.size() == 2 ? parts[1] : "F");
    if (head == "field" && parts.size() == 2) return RingDescriptor::infinite_field(parts[1]);
    if (head == "ed" && parts.size() == 3 && (parts[2] == "0" || parts[2] == "1"))
      return RingDescriptor::abstract_ed(parts[1], parts[2] == "1");
  } catch (const std::invalid_argument& e) {
    throw DomainError(e.what());
  }
  throw CLI::ValidationError("--ring", "expected fq:<q>, z, poly-char0[:<F>], field:<F> or ed:<name>:<0|1>, got '" +
                                           text + "'");
}

struct RingArgs {
  std::string ring;
  bool t_closed = false;
  std::optional<bool> cofinal_even;
  int rank = 1;
  int n = 1;
};

void add_ring_options(CLI::App* cmd, RingArgs& args) {
  cmd->add_option("--ring", args.ring, "fq:<q> | z | poly-char0[:<F>] | field:<F> | ed:<name>:<0|1>")->required();
  auto* tc = cmd->add_flag("--t-closed", args.t_closed, "theory closed under products");
  cmd->add_option("--cofinal-even", args.cofinal_even, "cofinal even-indexed subgroups (true/false)")->excludes(tc);
}

TheoryFlags flags_for(const RingDescriptor& ring, const RingArgs& args) {
  if (args.t_closed) return {true, std::nullopt};
  if (args.cofinal_even) return {false, *args.cofinal_even};
  try {
    return derive_flags(ring);
  } catch (const std::invalid_argument& e) {
    throw DomainError(std::string(e.what()) + " (use --t-closed or --cofinal-even)");
  }
}

Json flags_json(const TheoryFlags& f) {
  Json j;
  j["t_closed"] = f.t_closed;
  j["cofinal_even"] = f.cofinal_even ? Json(*f.cofinal_even) : Json(nullptr);
  return j;
}

int cmd_k0(const Options& opt, const std::string& file) {
  K0Class c = k0_class(elaborate(load_formula(file)));
  emit(opt, k0_to_json(c), c.to_string());
  return 0;
}

int cmd_iso(const Options& opt, const std::string& a, const std::string& b) {
  K0Class ca = k0_class(elaborate(load_formula(a)));
  K0Class cb = k0_class(elaborate(load_formula(b)));
  Json j;
  j["isomorphic"] = ca == cb;
  j["k0"] = {k0_to_json(ca), k0_to_json(cb)};
  emit(opt, j, ca == cb ? "isomorphic" : "not-isomorphic");
  return 0;
}

int cmd_dim(const Options& opt, const std::string& file) {
  Dim d = dim(elaborate(load_formula(file)));
  Json j;
  j["dim"] = d ? Json(*d) : Json("-inf");
  emit(opt, j, dim_to_string(d));
  return 0;
}

int cmd_count(const Options& opt, const std::string& file, int p) {
  FormulaAST ast = load_formula(file);
  PointCount pc = count_points_mod_p(to_bool_expr(ast), ast.ambient, p);
  K0Class c = k0_class(elaborate(ast));
  Json j;
  j["prime"] = p;
  j["count"] = pc.count;
  j["good_prime"] = pc.good_prime;
  j["k0_at_p"] = c.evaluate(p);
  std::ostringstream text;
  text << "count " << pc.count << "\ngood-prime " << (pc.good_prime ? "yes" : "no") << "\nk0(" << p
       << ") " << c.evaluate(p);
  emit(opt, j, text.str());
  return 0;
}

int cmd_aut(const Options& opt, const std::string& action, const std::string& file) {
  PAMap f = load_pamap(file);
  AutCheck check = validate(f);
  if (action == "validate") {
    Json j;
    j["valid"] = check.pass;
    j["failures"] = check.failures;
    std::string text = check.pass ? "valid" : "invalid";
    for (const auto& m : check.failures) text += "\n  " + m;
    emit(opt, j, text);
    return check.pass ? 0 : 1;
  }
  if (!check.pass) throw DomainError("invalid map: " + check.failures.front());
  if (action == "support") {
    DefinableSet s = support(f);
    Json j = set_to_json(s);
    j["k0"] = k0_to_json(k0_class(s));
    emit(opt, j, s.to_string() + "\ndim " + dim_to_string(dim(s)));
    return 0;
  }
  if (action == "dim") {
    Dim d = dim_aut(f);
    Json j;
    j["dim"] = d ? Json(*d) : Json("-inf");
    emit(opt, j, dim_to_string(d));
    return 0;
  }
  auto dec = upsilon_decompose(f);
  Json j;
  j["g"] = affine_map_to_json(dec.g);
  j["h"] = pamap_to_json(dec.h);
  Dim dh = dim_aut(dec.h);
  j["dim_h"] = dh ? Json(*dh) : Json("-inf");
  std::ostringstream text;
  text << "g: " << affine_map_to_json(dec.g).dump() << "\nh: " << dec.h.pieces().size()
       << " pieces, support dim " << dim_to_string(dh);
  emit(opt, j, text.str());
  return 0;
}

int cmd_k1(const Options& opt, const RingArgs& args) {
  RingDescriptor ring = parse_ring(args.ring);
  TheoryFlags flags = flags_for(ring, args);
  FormalExpr e = k1_module(ring, flags, args.rank);
  Json j = expr_to_json(e);
  j["ring"] = ring.name();
  j["flags"] = flags_json(flags);
  emit(opt, j, e.pretty());
  return 0;
}

int cmd_omega(const Options& opt, const RingArgs& args) {
  RingDescriptor ring = parse_ring(args.ring);
  TheoryFlags flags = flags_for(ring, args);
  FormalExpr e = omega_nn_ab(ring, flags, args.n);
  Json j = expr_to_json(e);
  j["ring"] = ring.name();
  j["n"] = args.n;
  emit(opt, j, e.pretty());
  return 0;
}

int cmd_verify(const Options& opt, const std::string& suite) {
  auto r = suites::run(suite, opt.seed, opt.cap);
  Json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  std::ostringstream text;
  text << r.suite << ": " << r.passed << "/" << r.cases << " passed";
  for (const auto& f : r.failures) text << "\n  FAIL " << f;
  emit(opt, j, text.str());
  return r.ok() ? 0 : 1;
}

int cmd_abelianize(const Options& opt, const std::string& spec) {
  FiniteGroup g = catalogue_group(spec, opt.cap);
  AbInvariants ab = abelianization(g);
  Json j;
  j["group"] = spec;
  j["order"] = g.order();
  j["invariants"] = ab.factors();
  emit(opt, j, ab.to_string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definable sets, piecewise affine automorphisms and K_1 of modules"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized suites");
  app.add_option("--cap", opt.cap, "element cap for finite group enumeration");
  app.add_flag("--json", opt.json, "machine-readable output");

  std::string file, file2, aut_action, suite, group;
  int prime = 0;
  RingArgs ring_args;

  auto* k0 = app.add_subcommand("k0", "class of a formula file in Z[X]");
  k0->add_option("file", file)->required();
  auto* iso = app.add_subcommand("iso", "compare two formula files up to definable bijection");
  iso->add_option("file1", file)->required();
  iso->add_option("file2", file2)->required();
  auto* dimc = app.add_subcommand("dim", "dimension of a formula file");
  dimc->add_option("file", file)->required();
  auto* count = app.add_subcommand("count", "count points over F_p and compare with the class");
  count->add_option("--prime", prime)->required();
  count->add_option("file", file)->required();
  auto* aut = app.add_subcommand("aut", "piecewise affine automorphisms");
  aut->add_option("action", aut_action)->required()->check(CLI::IsMember({"validate", "support", "dim", "decompose"}));
  aut->add_option("file", file)->required();
  auto* k1 = app.add_subcommand("k1", "K_1 of an infinite free module");
  add_ring_options(k1, ring_args);
  k1->add_option("--rank", ring_args.rank, "rank of the free module (0 = countable)");
  auto* omega = app.add_subcommand("omega-ab", "abelianized n-th truncation");
  add_ring_options(omega, ring_args);
  omega->add_option("--n", ring_args.n)->required()->check(CLI::PositiveNumber);
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suites::names()));
  auto* abel = app.add_subcommand("abelianize", "abelianization of a catalogue group");
  abel->add_option("--group", group)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*k0) return cmd_k0(opt, file);
    if (*iso) return cmd_iso(opt, file, file2);
    if (*dimc) return cmd_dim(opt, file);
    if (*count) return cmd_count(opt, file, prime);
    if (*aut) return cmd_aut(opt, aut_action, file);
    if (*k1) return cmd_k1(opt, ring_args);
    if (*omega) return cmd_omega(opt, ring_args);
    if (*verify) return cmd_verify(opt, suite);
    if (*abel) return cmd_abelianize(opt, group);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
