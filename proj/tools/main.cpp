#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "report.hpp"
#include "tables.hpp"
#include "udb/asymptotics.hpp"
#include "udb/euclid_bound.hpp"
#include "udb/geometry.hpp"
#include "udb/homog_theta.hpp"
#include "udb/independence.hpp"
#include "udb/scheme_theta.hpp"
#include "udb/specialfn.hpp"

using namespace udb;
using namespace udb::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTargetMissed = 2;

struct Globals {
  std::string format = "text";
  std::string out;
  double budget = 600.0;
  std::string registry;
};

BoundsRegistry load_registry(const Globals& g) {
  return BoundsRegistry::load(g.registry.empty() ? BoundsRegistry::default_path() : g.registry);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

Cell opt_cell(const std::optional<std::uint64_t>& v) {
  return v ? Cell{static_cast<std::int64_t>(*v)} : Cell{};
}

Report key_values(std::string title) {
  Report r;
  r.title = std::move(title);
  r.columns = {"quantity", "value"};
  return r;
}

// ---- commands -----------------------------------------------------------------

struct BoundArgs {
  int n = 0;
  std::vector<std::string> graphs;
  std::vector<std::uint64_t> alphas;
  double t_max = 50.0;
  std::size_t samples = 4000;
};

int cmd_bound(const BoundArgs& a, const Globals& g, Report& out) {
  if (!a.alphas.empty() && a.alphas.size() != a.graphs.size())
    throw std::invalid_argument("--alpha must be given once per --graph or not at all");
  BoundProblem p;
  p.n = a.n;
  p.t_max = a.t_max;
  p.samples = a.samples;
  out = key_values("Certified bound on m1(R^" + std::to_string(a.n) + ")");
  std::optional<BoundsRegistry> registry;
  for (std::size_t k = 0; k < a.graphs.size(); ++k) {
    const GraphSpec spec = parse_graph_spec(a.graphs[k]);
    const UnitDistanceGraph graph = build_graph(spec);
    AlphaBound alpha;
    if (!a.alphas.empty()) {
      alpha.value = a.alphas[k];
      alpha.kind = AlphaKind::upper;
      alpha.source = AlphaSource::external;
      alpha.citation = "command line";
    } else {
      if (!registry) registry = load_registry(g);
      if (auto hit = registry->lookup(spec)) {
        alpha = *hit;
      } else {
        SearchOptions opt;
        opt.budget_seconds = g.budget;
        alpha = max_independent_set(graph, opt);
        if (alpha.kind != AlphaKind::exact)
          throw std::runtime_error("alpha of " + a.graphs[k] + " is only a lower bound; pass --alpha");
      }
    }
    const std::string tag = "graph " + std::to_string(k + 1);
    out.add({tag, to_string(spec)});
    out.add({tag + " vertices", graph.total_weight()});
    out.add({tag + " alpha", static_cast<std::int64_t>(alpha.value)});
    out.add({tag + " alpha source", to_string(alpha.source)});
    p.constraints.push_back({graph.radial_profile(), static_cast<double>(alpha.value) / graph.total_weight(),
                             a.graphs[k]});
  }
  const CertifiedBound b = solve_theta_g(p);
  for (std::size_t k = 0; k < b.z.size(); ++k) out.add({"z" + std::to_string(k), b.z[k]});
  out.add({"objective", b.objective});
  out.add({"sampled objective", b.sampled_objective});
  out.add({"bump", b.bump});
  out.add({"cut rounds", static_cast<std::int64_t>(b.cut_rounds)});
  out.add({"horizon", b.report.t_max});
  out.add({"grid minimum", b.report.grid_min});
  out.add({"fine grid minimum", b.report.fine_min});
  out.add({"tail margin", b.report.tail_margin});
  out.add({"feasible", b.report.feasible});
  out.add({"chromatic lower bound", static_cast<std::int64_t>(chromatic_lower(b.objective))});
  out.add({"theta infinity", theta_infinity(a.n)});
  return b.report.feasible ? kExitOk : kExitTargetMissed;
}

int cmd_alpha(const std::string& spec_text, bool transitive, const Globals& g, Report& out) {
  const GraphSpec spec = parse_graph_spec(spec_text);
  const UnitDistanceGraph graph = build_graph(spec);
  SearchOptions opt;
  opt.budget_seconds = g.budget;
  opt.vertex_transitive = transitive;
  const AlphaBound a = max_independent_set(graph, opt);
  out = key_values("Independence number of " + to_string(spec));
  out.add({"graph", to_string(spec)});
  out.add({"vertices", static_cast<std::int64_t>(graph.num_vertices())});
  out.add({"edges", static_cast<std::int64_t>(graph.edges().size())});
  out.add({"alpha", static_cast<std::int64_t>(a.value)});
  out.add({"kind", to_string(a.kind)});
  out.add({"source", to_string(a.source)});
  std::string witness;
  for (auto v : a.witness) witness += (witness.empty() ? "" : " ") + std::to_string(v);
  out.add({"witness", witness});
  return kExitOk;
}

int cmd_johnson(int n, int w, int i, const Globals& g, Report& out) {
  out = key_values("Bounds for alpha(J(" + std::to_string(n) + "," + std::to_string(w) + "," + std::to_string(i) + "))");
  out.add({"theta", theta_johnson(n, w, i)});
  const DelsarteSolution s = delsarte_lp(n, w, i);
  out.add({"theta prime", s.value});
  out.add({"duality gap", s.duality_gap});
  out.add({"equality condition", theta_equality_condition(n, w, i)});
  std::string dist;
  for (double x : s.distribution) dist += (dist.empty() ? "" : " ") + format_double(x);
  out.add({"distance distribution", dist});
  const int q = (w + 1) / 2;
  if (w == 2 * q - 1 && i == q - 1 && is_prime_power(q))
    out.add({"frankl-wilson", static_cast<std::int64_t>(frankl_wilson(n, q).value)});
  if (auto hit = load_registry(g).lookup(JohnsonSpec{n, w, i})) {
    out.add({"registry bound", static_cast<std::int64_t>(hit->value)});
    out.add({"registry citation", hit->citation});
  }
  return kExitOk;
}

int cmd_cayley(int order, const std::string& connection, const std::string& subgraph, std::int64_t alpha,
               Report& out) {
  const auto graph = AbelianCayleyGraph::circulant(order, parse_int_list(connection));
  out = key_values("Theta of the circulant Z_" + std::to_string(order) + " {" + connection + "}");
  const CayleyTheta t = theta_cayley(graph);
  out.add({"theta", t.value});
  out.add({"density", t.value / static_cast<double>(order)});
  out.add({"orbit variables", static_cast<std::int64_t>(t.orbits)});
  out.add({"min character coefficient", t.min_fourier});
  if (!subgraph.empty()) {
    SubgraphSpec sub;
    for (int v : parse_int_list(subgraph)) sub.vertices.push_back(static_cast<std::size_t>(((v % order) + order) % order));
    if (alpha < 0) {
      std::vector<std::uint32_t> vs(sub.vertices.begin(), sub.vertices.end());
      alpha = static_cast<std::int64_t>(alpha_exact(graph.adjacency().induced(vs)));
    }
    sub.alpha_value = static_cast<std::uint64_t>(alpha);
    const CayleyTheta s = theta_cayley_strengthened(graph, sub);
    out.add({"subgraph alpha", alpha});
    out.add({"strengthened theta", s.value});
    out.add({"strengthened density", s.value / static_cast<double>(order)});
  }
  return kExitOk;
}

struct AsymArgs {
  bool fw = false, limit = false;
  std::vector<double> raigo, certify;
};

int cmd_asymptotics(const AsymArgs& a, Report& out) {
  const int chosen = a.fw + a.limit + !a.raigo.empty() + !a.certify.empty();
  if (chosen != 1) throw std::invalid_argument("choose exactly one of --fw, --raigo, --certify, --limit");
  using namespace udb::asymptotics;
  if (a.fw) {
    const FwExponentReport r = fw_exponent_report();
    out = key_values("Frankl-Wilson exponent");
    out.add({"a0 low", r.a0.lo});
    out.add({"a0 high", r.a0.hi});
    out.add({"r(a0)", r.r});
    out.add({"f(r(a0))", r.f});
    out.add({"target 1/1.262", r.target});
    out.add({"passes", r.passes});
    out.add({"optimal a", r.optimal_a});
    out.add({"rate at optimal a", r.optimal_rate});
    for (std::size_t k = 0; k < r.r_min_sequence.size(); ++k)
      out.add({"r_min at n=" + std::to_string(100 * static_cast<int>(std::pow(10, k))), r.r_min_sequence[k]});
    return r.passes ? kExitOk : kExitTargetMissed;
  }
  if (a.limit) {
    const LimitBaseReport r = limit_base_check();
    out = key_values("Limiting exponential base");
    out.add({"f(1/2)", r.f_half});
    out.add({"target 1/1.316", r.target});
    out.add({"exceeds", r.exceeds});
    out.add({"increasing on [0.5, 0.99]", r.increasing});
    return r.exceeds && r.increasing ? kExitOk : kExitTargetMissed;
  }
  if (!a.raigo.empty()) {
    const RaigoReport r = raigo_report(a.raigo[0], a.raigo[1]);
    out = key_values("Two-parameter exponent");
    out.add({"x1", r.x1});
    out.add({"x2", r.x2});
    out.add({"z", r.z});
    out.add({"y1", r.y1});
    out.add({"b", r.b});
    out.add({"sqrt(2/e)", std::sqrt(2.0 / std::numbers::e)});
    out.add({"r", r.r});
    out.add({"f(r)", r.f});
    return kExitOk;
  }
  const double nd = a.certify[0];
  if (nd != std::floor(nd) || nd < 2) throw std::invalid_argument("--certify needs an integer n >= 2");
  const LemmaCertificate c = lemma_certificate(static_cast<int>(nd), a.certify[1], a.certify[2], a.certify[3]);
  out = key_values("Nonnegativity certificate for n = " + std::to_string(c.n));
  out.add({"passes", c.passes});
  out.add({"min of F/m^n", c.min_value});
  out.add({"at t", c.min_t});
  out.add({"tail horizon", c.horizon});
  return c.passes ? kExitOk : kExitTargetMissed;
}

int cmd_table1(const Globals& g, Report& out) {
  const BoundsRegistry registry = load_registry(g);
  out.title = "Bounds for the independence number of J(n,w,i)";
  out.columns = {"n", "w", "i", "alpha", "alpha kind", "alpha ref", "fw", "fw ref", "theta",
                 "theta prime", "theta prime ref", "equality", "sdp", "sdp ref", "match"};
  bool all = true;
  for (const auto& e : load_table1_manifest(data_path("table1.manifest"))) {
    const Table1Row r = run_table1_row(e, registry, g.budget);
    all = all && r.matches;
    out.add({std::int64_t{e.n}, std::int64_t{e.w}, std::int64_t{e.i},
             r.alpha ? Cell{static_cast<std::int64_t>(r.alpha->value)} : Cell{},
             r.alpha ? Cell{to_string(r.alpha->kind)} : Cell{}, opt_cell(e.alpha), opt_cell(r.fw), opt_cell(e.fw),
             r.theta, r.theta_prime, opt_cell(e.theta_prime), r.equality,
             r.sdp ? Cell{static_cast<std::int64_t>(r.sdp->value)} : Cell{}, opt_cell(e.sdp),
             r.matches ? Cell{std::string("yes")} : Cell{"no: " + r.mismatch}});
  }
  out.notes.push_back("theta prime reference values are truncated; a row matches when floor(theta prime) equals it "
                      "or the nearest integer is within one.");
  return all ? kExitOk : kExitTargetMissed;
}

std::vector<Table2Row> table2_rows(const Globals& g) {
  return run_table2(load_table2_manifest(data_path("table2.manifest")), load_registry(g), g.budget);
}

int cmd_table2(const Globals& g, Report& out) {
  out.title = "Certified feasible solutions and bounds on m1(R^n)";
  out.columns = {"n", "graph", "alpha", "alpha source", "M", "r", "z0", "z1", "z2", "objective",
                 "reference", "met", "reference grid min", "fine grid min", "error"};
  bool all = true;
  for (const auto& r : table2_rows(g)) {
    all = all && r.target_met;
    if (!r.bound) {
      out.add({std::int64_t{r.ref.n}, r.ref.graph, {}, {}, {}, {}, {}, {}, {}, {}, r.ref.objective, false, {}, {}, r.error});
      continue;
    }
    const auto& b = *r.bound;
    out.add({std::int64_t{r.ref.n}, r.ref.graph, static_cast<std::int64_t>(r.alpha->value), to_string(r.alpha->source),
             r.vertices, r.radius, b.z[0], b.z[1], b.z[2], b.objective, r.ref.objective, r.target_met,
             r.reference_check->grid_min, b.report.fine_min, r.error});
  }
  return all ? kExitOk : kExitTargetMissed;
}

int cmd_table3(const Globals& g, Report& out) {
  out.title = "Lower bounds for the measurable chromatic number";
  out.columns = {"n", "previous", "new", "reference", "match"};
  bool all = true;
  for (const auto& r : table2_rows(g)) {
    if (!r.bound || !r.target_met) {
      all = false;
      out.add({std::int64_t{r.ref.n}, static_cast<std::int64_t>(r.ref.previous), {},
               static_cast<std::int64_t>(r.ref.chromatic), false});
      continue;
    }
    const std::uint64_t c = chromatic_lower(r.bound->objective);
    all = all && c == r.ref.chromatic;
    out.add({std::int64_t{r.ref.n}, static_cast<std::int64_t>(r.ref.previous), static_cast<std::int64_t>(c),
             static_cast<std::int64_t>(r.ref.chromatic), c == r.ref.chromatic});
  }
  return all ? kExitOk : kExitTargetMissed;
}

int cmd_plot(const std::string& which, int n, Report& out) {
  using namespace udb::asymptotics;
  if (which == "omega") {
    const OmegaKernel kernel(n);
    out.title = "Omega_" + std::to_string(n);
    out.columns = {"t", "omega"};
    for (int k = 0; k <= 2000; ++k) {
      const double t = k / 100.0;
      out.add({t, kernel(t)});
    }
  } else if (which == "c-of-r") {
    out.title = "c(r)";
    out.columns = {"r", "c"};
    for (int k = 1; k < 1000; ++k) out.add({k / 1000.0, c_of(k / 1000.0)});
  } else if (which == "fw-rate") {
    out.title = "exp(H(a) - H(2a))";
    out.columns = {"a", "rate"};
    const double best = fw_optimal_a();
    bool placed = false;
    for (int k = 1; k < 1000; ++k) {
      const double a = k / 4000.0;
      if (!placed && a > best) {
        out.add({best, fw_rate(best)});
        placed = true;
      }
      out.add({a, fw_rate(a)});
    }
  } else {
    throw std::invalid_argument("plot-data expects omega, c-of-r or fw-rate");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-distance avoiding sets: certified bounds on m1(R^n) and related computations"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--out", g.out, "write the report to this file");
  app.add_option("--budget", g.budget, "time budget in seconds for independence searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--registry", g.registry, "bounds registry (default: FD_REGISTRY or the shipped file)");

  BoundArgs bound;
  auto* c_bound = app.add_subcommand("bound", "solve the subgraph-strengthened program");
  c_bound->add_option("--n", bound.n, "dimension")->required()->check(CLI::Range(2, 200));
  c_bound->add_option("--graph", bound.graphs, "subgraph spec, repeatable");
  c_bound->add_option("--alpha", bound.alphas, "independence bound per --graph");
  c_bound->add_option("--t-max", bound.t_max, "sampled interval end")->check(CLI::PositiveNumber);
  c_bound->add_option("--samples", bound.samples, "grid size")->check(CLI::Range(10, 10000000));

  std::string alpha_spec;
  bool transitive = false;
  auto* c_alpha = app.add_subcommand("alpha", "independence number of a graph");
  c_alpha->add_option("spec", alpha_spec, "graph spec")->required();
  c_alpha->add_flag("--vertex-transitive", transitive, "fix one vertex in the solution (vertex-transitive graphs)");

  int jn = 0, jw = 0, ji = 0;
  auto* c_john = app.add_subcommand("johnson-bounds", "theta, theta prime and known bounds for J(n,w,i)");
  c_john->add_option("n", jn)->required();
  c_john->add_option("w", jw)->required();
  c_john->add_option("i", ji)->required();

  int order = 0;
  std::string connection, subgraph;
  std::int64_t sub_alpha = -1;
  auto* c_cay = app.add_subcommand("cayley-theta", "theta of a circulant graph");
  c_cay->add_option("--order", order)->required()->check(CLI::Range(1, 100000));
  c_cay->add_option("--connection", connection, "comma separated, closed under negation")->required();
  c_cay->add_option("--subgraph", subgraph, "comma separated vertex set");
  c_cay->add_option("--alpha", sub_alpha, "independence number of the subgraph (computed if omitted)")
      ->check(CLI::PositiveNumber);

  AsymArgs asym;
  auto* c_asym = app.add_subcommand("asymptotics", "exponential-base computations");
  c_asym->add_flag("--fw", asym.fw);
  c_asym->add_option("--raigo", asym.raigo)->expected(2);
  c_asym->add_option("--certify", asym.certify, "n r gamma m")->expected(4);
  c_asym->add_flag("--limit", asym.limit);

  auto* c_t1 = app.add_subcommand("table1", "bounds for generalized Johnson graphs");
  auto* c_t2 = app.add_subcommand("table2", "certified bounds for n = 4..24");
  auto* c_t3 = app.add_subcommand("table3", "chromatic number lower bounds for n = 4..24");

  std::string plot_which;
  int plot_n = 4;
  auto* c_plot = app.add_subcommand("plot-data", "curve samples as two columns");
  c_plot->add_option("which", plot_which, "omega, c-of-r or fw-rate")->required();
  c_plot->add_option("n", plot_n, "dimension for omega")->check(CLI::Range(2, 10000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report report;
  int status = kExitOk;
  try {
    if (*c_bound) status = cmd_bound(bound, g, report);
    else if (*c_alpha) status = cmd_alpha(alpha_spec, transitive, g, report);
    else if (*c_john) status = cmd_johnson(jn, jw, ji, g, report);
    else if (*c_cay) status = cmd_cayley(order, connection, subgraph, sub_alpha, report);
    else if (*c_asym) status = cmd_asymptotics(asym, report);
    else if (*c_t1) status = cmd_table1(g, report);
    else if (*c_t2) status = cmd_table2(g, report);
    else if (*c_t3) status = cmd_table3(g, report);
    else if (*c_plot) status = cmd_plot(plot_which, plot_n, report);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Format format = parse_format(g.format);
  if (g.out.empty()) {
    write_report(std::cout, report, format);
  } else {
    std::ofstream file(g.out);
    if (!file) {
      std::cerr << "error: cannot write " << g.out << '\n';
      return kExitUsage;
    }
    write_report(file, report, format);
  }
  if (status == kExitTargetMissed) std::cerr << "target missed\n";
  return status;
}
