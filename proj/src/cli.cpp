#include "conlat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "conlat/catalog.hpp"
#include "conlat/duplication.hpp"
#include "conlat/io.hpp"
#include "conlat/lattice.hpp"
#include "conlat/term.hpp"

namespace conlat::cli {

namespace {

struct Bounds {
  long long max_universe = kDefaultMaxUniverse;
  long long max_lattice = kDefaultMaxLattice;
  long long max_con = kDefaultMaxCongruences;
};

void add_bounds(CLI::App* sub, Bounds& b) {
  sub->add_option("--max-universe", b.max_universe, "largest allowed duplicated universe");
  sub->add_option("--max-lattice", b.max_lattice, "largest allowed lattice closure");
  sub->add_option("--max-con", b.max_con, "largest allowed congruence enumeration");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write file: " + path);
  f << content;
}

void maybe_dot(const std::string& path, const FiniteLattice& l, const std::string& name) {
  if (!path.empty()) write_file(path, dot(l, name));
}

void print_lattice(std::ostream& out, const FiniteLattice& l, const std::string& prefix,
                   const std::vector<Congruence>* parts = nullptr) {
  out << prefix << ".size=" << l.size() << "\n";
  for (int e = 0; e < l.size(); ++e) {
    out << prefix << ".elem." << e << "=" << l.label(e) << "\n";
    if (parts) out << prefix << ".part." << e << "=" << format_partition((*parts)[e]) << "\n";
  }
  int i = 0;
  for (auto [a, b] : l.cover_pairs()) out << prefix << ".cover." << i++ << "=" << a << "<" << b << "\n";
}

std::vector<Congruence> parse_partition_list(const std::string& text, int n) {
  std::vector<Congruence> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (!item.empty()) out.push_back(parse_partition(item, n));
  return out;
}

PentagonConfig pick_pentagon(const FiniteAlgebra& a, const std::string& auto_flag,
                             const std::string& gamma, const std::string& alpha,
                             const std::string& beta, const Bounds& b) {
  if (auto_flag == "auto") {
    SearchOptions so;
    so.max_con = b.max_con;
    so.max_results = 1;
    auto found = find_pentagons(a, so);
    if (found.empty()) throw std::invalid_argument("no pentagon sublattice found in Con(A)");
    return found.front();
  }
  if (gamma.empty() || alpha.empty() || beta.empty())
    throw std::invalid_argument("classify needs --pentagon auto or all of --gamma/--alpha/--beta");
  return make_pentagon(a, parse_partition(gamma, a.size), parse_partition(alpha, a.size),
                       parse_partition(beta, a.size));
}

M3Config pick_m3(const FiniteAlgebra& a, const std::string& spec, const Bounds& b) {
  if (spec == "auto") {
    SearchOptions so;
    so.max_con = b.max_con;
    so.max_results = 1;
    auto found = find_m3s(a, so);
    if (found.empty()) throw std::invalid_argument("no diamond sublattice found in Con(A)");
    return found.front();
  }
  auto atoms = parse_partition_list(spec, a.size);
  if (atoms.size() != 3)
    throw std::invalid_argument("--m3 expects 'auto' or three ';'-separated partitions");
  return make_m3(a, atoms[0], atoms[1], atoms[2]);
}

int report_status(std::ostream& out, const Report& r) {
  out << r.to_text();
  return r.ok() ? 0 : 2;
}

int run_con(const std::string& algebra_path, const Bounds& b, const std::string& dot_path,
            std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  auto cons = enumerate_con(a, b.max_con);
  out << "algebra=" << a.name << "\n";
  out << "size=" << a.size << "\n";
  out << "con.count=" << cons.size() << "\n";
  for (size_t i = 0; i < cons.size(); ++i) out << "con." << i << "=" << format_partition(cons[i]) << "\n";
  if (!dot_path.empty()) {
    ConLattice cl = close_partitions(cons, b.max_con);
    maybe_dot(dot_path, cl.lattice, "Con(" + a.name + ")");
  }
  return 0;
}

int run_duplicate(const std::string& algebra_path, const std::string& over, int power,
                  const Bounds& b, const std::string& emit_path, std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  Congruence alpha = parse_partition(over, a.size);
  PowerSubalgebra p = power_subalgebra(a, alpha, power, b.max_universe);
  out << "algebra=" << a.name << "\n";
  out << "size=" << a.size << "\n";
  out << "power=" << power << "\n";
  out << "over=" << format_partition(alpha) << "\n";
  out << "result.size=" << p.algebra.size << "\n";
  for (int e = 0; e < p.algebra.size; ++e) out << "elem." << e + 1 << "=" << p.algebra.elem_name(e) << "\n";
  if (!emit_path.empty()) write_file(emit_path, emit_algebra(p.algebra));
  return 0;
}

int run_classify(const std::string& algebra_path, const std::string& pentagon_auto,
                 const std::string& gamma, const std::string& alpha, const std::string& beta,
                 const std::string& over, bool no_refine, const Bounds& b,
                 const std::string& dot_path, std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  PentagonConfig cfg = pick_pentagon(a, pentagon_auto, gamma, alpha, beta, b);

  ClassifyOptions opts;
  opts.refine = !no_refine;
  opts.max_universe = b.max_universe;
  opts.max_lattice = b.max_lattice;
  opts.max_con = b.max_con;
  if (over == "beta") opts.over = ClassifyOptions::Over::Beta;
  else if (over == "gamma") opts.over = ClassifyOptions::Over::Gamma;
  else if (over == "alpha") opts.over = ClassifyOptions::Over::Alpha;
  else throw std::invalid_argument("--over must be beta, gamma or alpha");

  ClassifyResult res = classify_pentagon(cfg, opts);
  PentagonCondition cond = pentagon_condition(res.used);

  out << "pentagon.zero=" << format_partition(res.used.zero) << "\n";
  out << "pentagon.gamma=" << format_partition(res.used.gamma) << "\n";
  out << "pentagon.alpha=" << format_partition(res.used.alpha) << "\n";
  out << "pentagon.beta=" << format_partition(res.used.beta) << "\n";
  out << "pentagon.delta=" << format_partition(res.used.delta) << "\n";
  out << "refined=" << (res.refined ? "true" : "false") << "\n";
  out << "condition=" << (cond.holds ? "true" : "false") << "\n";
  if (cond.witness)
    out << "condition.witness=" << format_pair(a, cond.witness->first, cond.witness->second) << "\n";
  out << "label=" << (!res.label ? "none" : *res.label == PentagonClass::K ? "K" : "M1") << "\n";
  out << "catalog=" << (res.catalog.empty() ? "none" : res.catalog) << "\n";
  print_lattice(out, res.lat.lattice, "lattice", &res.lat.congruences);
  maybe_dot(dot_path, res.lat.lattice, "classify");
  return 0;
}

int run_find(const std::string& algebra_path, const std::string& what, long long limit,
             const Bounds& b, std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  SearchOptions so;
  so.max_con = b.max_con;
  so.max_results = limit;
  if (what == "pentagons") {
    auto found = find_pentagons(a, so);
    out << "count=" << found.size() << "\n";
    for (size_t i = 0; i < found.size(); ++i) {
      out << "pentagon." << i << ".zero=" << format_partition(found[i].zero) << "\n";
      out << "pentagon." << i << ".gamma=" << format_partition(found[i].gamma) << "\n";
      out << "pentagon." << i << ".alpha=" << format_partition(found[i].alpha) << "\n";
      out << "pentagon." << i << ".beta=" << format_partition(found[i].beta) << "\n";
      out << "pentagon." << i << ".delta=" << format_partition(found[i].delta) << "\n";
    }
    return 0;
  }
  if (what == "m3s") {
    auto found = find_m3s(a, so);
    out << "count=" << found.size() << "\n";
    for (size_t i = 0; i < found.size(); ++i) {
      out << "m3." << i << ".bottom=" << format_partition(found[i].bottom) << "\n";
      out << "m3." << i << ".a=" << format_partition(found[i].a) << "\n";
      out << "m3." << i << ".b=" << format_partition(found[i].b) << "\n";
      out << "m3." << i << ".c=" << format_partition(found[i].c) << "\n";
      out << "m3." << i << ".top=" << format_partition(found[i].top) << "\n";
      out << "m3." << i << ".permuting=" << (found[i].atoms_pairwise_permute() ? "true" : "false")
          << "\n";
    }
    return 0;
  }
  throw std::invalid_argument("--what must be pentagons or m3s");
}

int run_m33(const std::string& algebra_path, const std::string& m3_spec, const Bounds& b,
            const std::string& dot_path, std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  M3Config cfg = pick_m3(a, m3_spec, b);
  M33Result res = build_m33(cfg, b.max_universe);
  out << "result.size=" << res.lat.lattice.size() << "\n";
  out << "catalog=" << (res.iso ? "M33" : "none") << "\n";
  print_lattice(out, res.lat.lattice, "lattice", &res.lat.congruences);
  maybe_dot(dot_path, res.lat.lattice, "M33");
  return report_status(out, res.report);
}

int run_rods(const std::string& algebra_path, const std::string& m3_spec, int n,
             const std::string& shape, const Bounds& b, std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  M3Config cfg = pick_m3(a, m3_spec, b);

  RodsOptions opts;
  opts.max_universe = b.max_universe;
  opts.max_lattice = b.max_lattice;
  RodsResult res;
  if (shape == "rod") res = iterate_rods(cfg, n, ChainShape::Rod, opts);
  else if (shape == "snake") res = iterate_rods(cfg, n, ChainShape::Snake, opts);
  else if (shape.rfind("G:", 0) == 0) res = iterate_rods(cfg, shape.substr(2), opts);
  else throw std::invalid_argument("--shape must be rod, snake or G:<letters>");

  out << "shape=" << shape << "\n";
  out << "steps=" << res.steps.size() << "\n";
  for (size_t i = 0; i < res.steps.size(); ++i) {
    const RodStep& st = res.steps[i];
    out << "step." << i + 1 << ".universe=" << st.algebra.size << "\n";
    out << "step." << i + 1 << ".lattice=" << st.lat.lattice.size() << "\n";
    out << "step." << i + 1 << ".catalog=" << st.catalog << "\n";
    out << "step." << i + 1 << ".closed=" << (st.closed ? "true" : "false") << "\n";
    out << "step." << i + 1 << ".iso=" << (st.iso_ok && st.labels_ok ? "true" : "false") << "\n";
    out << "step." << i + 1 << ".permute=" << (st.permuting ? "true" : "false") << "\n";
  }
  return report_status(out, res.report);
}

int run_check(const std::string& algebra_path, const std::string& lemma, const std::string& over,
              const std::string& theta, std::string pentagon_auto, const std::string& gamma,
              const std::string& alpha, const std::string& beta, const std::string& m3_spec,
              const Bounds& b, std::ostream& out) {
  FiniteAlgebra a = load_algebra(algebra_path);
  bool all = lemma == "all";
  int status = 0;
  auto merge = [&](const Report& r) { status = std::max(status, report_status(out, r)); };

  if (lemma == "doubling" || all) {
    std::vector<Congruence> bases;
    if (!over.empty()) bases.push_back(parse_partition(over, a.size));
    else bases = enumerate_con(a, b.max_con);
    for (const auto& g : bases) {
      Duplication dup = duplicate(a, g, b.max_universe);
      if (theta.empty() || theta == "all") {
        for (const auto& th : enumerate_con(a, b.max_con)) merge(verify_doubling_lemma(dup, th));
      } else {
        merge(verify_doubling_lemma(dup, parse_partition(theta, a.size)));
      }
    }
  }
  if (lemma == "lemma1" || lemma == "lemma2" || all) {
    bool have_flags = !gamma.empty() || pentagon_auto == "auto";
    if (all && !have_flags) {
      SearchOptions so;
      so.max_con = b.max_con;
      so.max_results = 1;
      if (find_pentagons(a, so).empty()) {
        out << "lemma1=skipped reason=no-pentagon\n";
        out << "lemma2=skipped reason=no-pentagon\n";
      } else {
        have_flags = true;
        pentagon_auto = "auto";
      }
    }
    if (have_flags) {
      PentagonConfig cfg = pick_pentagon(a, pentagon_auto, gamma, alpha, beta, b);
      if (lemma != "lemma2") merge(verify_lemma1(cfg));
      if (lemma != "lemma1") merge(verify_lemma2(cfg));
    }
  }
  if (lemma == "nozero" || lemma == "permute" || all) {
    SearchOptions so;
    so.max_con = b.max_con;
    so.max_results = 1;
    if (all && m3_spec == "auto" && find_m3s(a, so).empty()) {
      out << "nozero=skipped reason=no-m3\n";
      out << "permute=skipped reason=no-m3\n";
    } else {
      M3Config cfg = pick_m3(a, m3_spec, b);
      Duplication dup = duplicate(a, cfg.c, b.max_universe);
      if (lemma != "permute") merge(verify_nozero(cfg, dup));
      if (lemma != "nozero") merge(verify_permute(cfg, dup));
    }
  }
  return status;
}

int run_props(const std::string& shape, bool loose, const std::string& dot_path, std::ostream& out) {
  CatalogOptions copts{loose};
  FiniteLattice l = build_shape(shape, copts);
  out << "shape=" << shape << "\n";
  out << "size=" << l.size() << "\n";
  out << "modular=" << (is_modular(l) ? "true" : "false") << "\n";
  out << "distributive=" << (is_distributive(l) ? "true" : "false") << "\n";
  out << "sd_meet=" << (is_meet_semidistributive(l) ? "true" : "false") << "\n";
  out << "sd_join=" << (is_join_semidistributive(l) ? "true" : "false") << "\n";
  out << "semidistributive=" << (is_semidistributive(l) ? "true" : "false") << "\n";
  out << "whitman=" << (whitman_w(l) ? "true" : "false") << "\n";
  out << "si=" << (is_subdirectly_irreducible(l) ? "true" : "false") << "\n";
  maybe_dot(dot_path, l, shape);
  return 0;
}

int run_shape(const std::string& shape, bool loose, const std::string& dot_path, std::ostream& out) {
  CatalogOptions copts{loose};
  FiniteLattice l = build_shape(shape, copts);
  out << "shape=" << shape << "\n";
  print_lattice(out, l, "lattice");
  maybe_dot(dot_path, l, shape);
  return 0;
}

int run_eval(const std::string& shape, bool loose, const std::string& inequality,
             const std::vector<std::string>& assigns, std::ostream& out) {
  FiniteLattice l = build_shape(shape, CatalogOptions{loose});
  auto [p, q] = parse_inequality(inequality);
  std::map<std::string, int> assignment;
  for (const auto& kv : assigns) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--let expects var=label");
    std::string var = kv.substr(0, eq), label = kv.substr(eq + 1);
    auto e = l.find_label(label);
    if (!e) throw std::invalid_argument("no element labelled '" + label + "' in " + shape);
    assignment[var] = *e;
  }
  bool holds = eval_inequality(p, q, l, assignment);
  out << "inequality=" << p.to_string() << "<=" << q.to_string() << "\n";
  out << "holds=" << (holds ? "true" : "false") << "\n";
  return 0;
}

int run_dot(const std::string& shape, bool loose, const std::string& algebra_path,
            const Bounds& b, const std::string& out_path, std::ostream& out) {
  FiniteLattice l;
  std::string name;
  if (!shape.empty()) {
    l = build_shape(shape, CatalogOptions{loose});
    name = shape;
  } else if (!algebra_path.empty()) {
    FiniteAlgebra a = load_algebra(algebra_path);
    ConLattice cl = close_partitions(enumerate_con(a, b.max_con), b.max_con);
    l = cl.lattice;
    name = "Con(" + a.name + ")";
  } else {
    throw std::invalid_argument("dot needs --shape or --algebra");
  }
  if (out_path.empty()) out << dot(l, name);
  else write_file(out_path, dot(l, name));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite universal algebra toolkit: congruence lattices, duplications, catalog shapes"};
  app.require_subcommand(1);

  Bounds bounds;
  std::string algebra_path, dot_path, emit_path, out_path;
  std::string over = "beta", theta, gamma, alpha, beta, pentagon_auto, m3_spec = "auto";
  std::string what = "pentagons", shape, lemma = "all", chain_shape = "rod", inequality;
  std::vector<std::string> lets;
  bool no_refine = false, loose = false;
  int power = 2, n = 2;
  long long find_limit = -1;

  auto* con = app.add_subcommand("con", "enumerate the congruences of an algebra");
  con->add_option("--algebra", algebra_path, "algebra file")->required();
  con->add_option("--dot", dot_path, "write the Hasse diagram of Con(A) to a DOT file");
  add_bounds(con, bounds);

  auto* dup = app.add_subcommand("duplicate", "build the power subalgebra A^n(alpha)");
  dup->add_option("--algebra", algebra_path, "algebra file")->required();
  dup->add_option("--over", over, "congruence to duplicate over (partition literal)")->required();
  dup->add_option("--power", power, "tuple length (default 2)");
  dup->add_option("--emit", emit_path, "write the resulting algebra to a file");
  add_bounds(dup, bounds);

  auto* cls = app.add_subcommand("classify", "classify a pentagon via duplication over beta");
  cls->add_option("--algebra", algebra_path, "algebra file")->required();
  cls->add_option("--pentagon", pentagon_auto, "'auto' to search Con(A) for a pentagon");
  cls->add_option("--gamma", gamma, "gamma partition");
  cls->add_option("--alpha", alpha, "alpha partition");
  cls->add_option("--beta", beta, "beta partition");
  cls->add_option("--over", over, "duplicate over beta (default), gamma or alpha");
  cls->add_flag("--no-refine", no_refine, "skip replacing (gamma, alpha) by a covering pair");
  cls->add_option("--dot", dot_path, "write the closure lattice to a DOT file");
  add_bounds(cls, bounds);

  auto* fnd = app.add_subcommand("find", "list pentagon or diamond sublattices of Con(A)");
  fnd->add_option("--algebra", algebra_path, "algebra file")->required();
  fnd->add_option("--what", what, "pentagons (default) or m3s");
  fnd->add_option("--limit", find_limit, "stop after this many results");
  add_bounds(fnd, bounds);

  auto* m33 = app.add_subcommand("m33", "build the M33 sublattice from a permuting diamond");
  m33->add_option("--algebra", algebra_path, "algebra file")->required();
  m33->add_option("--m3", m3_spec, "'auto' or three ';'-separated atom partitions");
  m33->add_option("--dot", dot_path, "write the lattice to a DOT file");
  add_bounds(m33, bounds);

  auto* rods = app.add_subcommand("rods", "iterate the duplication to build rod/snake chains");
  rods->add_option("--algebra", algebra_path, "algebra file")->required();
  rods->add_option("--m3", m3_spec, "'auto' or three ';'-separated atom partitions");
  rods->add_option("-n,--steps", n, "number of diamonds in the chain")->required();
  rods->add_option("--shape", chain_shape, "rod (default), snake, or G:<letters over L/R>");
  add_bounds(rods, bounds);

  auto* chk = app.add_subcommand("check", "run the lemma verifiers");
  chk->add_option("--algebra", algebra_path, "algebra file")->required();
  chk->add_option("--lemma", lemma, "doubling, lemma1, lemma2, nozero, permute or all");
  chk->add_option("--over", over, "partition for the doubling lemma")->expected(1);
  chk->add_option("--theta", theta, "partition for the doubling lemma, or 'all'");
  chk->add_option("--pentagon", pentagon_auto, "'auto' to search for a pentagon");
  chk->add_option("--gamma", gamma, "gamma partition");
  chk->add_option("--alpha", alpha, "alpha partition");
  chk->add_option("--beta", beta, "beta partition");
  chk->add_option("--m3", m3_spec, "'auto' or three ';'-separated atom partitions");
  add_bounds(chk, bounds);

  auto* props = app.add_subcommand("props", "property table of a catalog lattice");
  props->add_option("--shape", shape, "catalog shape id")->required();
  props->add_flag("--loose", loose, "allow loosely glued families beyond n=2");
  props->add_option("--dot", dot_path, "write the lattice to a DOT file");

  auto* shp = app.add_subcommand("shape", "print a catalog lattice");
  shp->add_option("--shape", shape, "catalog shape id")->required();
  shp->add_flag("--loose", loose, "allow loosely glued families beyond n=2");
  shp->add_option("--dot", dot_path, "write the lattice to a DOT file");

  auto* ev = app.add_subcommand("eval", "evaluate a lattice inequality on a catalog shape");
  ev->add_option("--shape", shape, "catalog shape id")->required();
  ev->add_flag("--loose", loose, "allow loosely glued families beyond n=2");
  ev->add_option("--inequality", inequality, "term inequality, e.g. \"x^(yvz) <= (x^y)vz\"")
      ->required();
  ev->add_option("--let", lets, "assignment var=<element label>, repeatable");

  auto* dt = app.add_subcommand("dot", "emit a Hasse diagram in DOT format");
  dt->add_option("--shape", shape, "catalog shape id");
  dt->add_flag("--loose", loose, "allow loosely glued families beyond n=2");
  dt->add_option("--algebra", algebra_path, "algebra file (diagram of Con(A))");
  dt->add_option("--out", out_path, "output file (default: stdout)");
  add_bounds(dt, bounds);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (con->parsed()) return run_con(algebra_path, bounds, dot_path, out);
    if (dup->parsed()) return run_duplicate(algebra_path, over, power, bounds, emit_path, out);
    if (cls->parsed())
      return run_classify(algebra_path, pentagon_auto, gamma, alpha, beta,
                          cls->count("--over") ? over : "beta", no_refine, bounds, dot_path, out);
    if (fnd->parsed()) return run_find(algebra_path, what, find_limit, bounds, out);
    if (m33->parsed()) return run_m33(algebra_path, m3_spec, bounds, dot_path, out);
    if (rods->parsed()) return run_rods(algebra_path, m3_spec, n, chain_shape, bounds, out);
    if (chk->parsed())
      return run_check(algebra_path, lemma, chk->count("--over") ? over : "", theta, pentagon_auto,
                       gamma, alpha, beta, m3_spec, bounds, out);
    if (props->parsed()) return run_props(shape, loose, dot_path, out);
    if (shp->parsed()) return run_shape(shape, loose, dot_path, out);
    if (ev->parsed()) return run_eval(shape, loose, inequality, lets, out);
    if (dt->parsed()) return run_dot(shape, loose, algebra_path, bounds, out_path, out);
  } catch (const LimitError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "verification failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace conlat::cli
