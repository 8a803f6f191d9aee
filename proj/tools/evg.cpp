#include <evg/evg.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace evg;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* version = "0.3.0";

struct Options {
  std::string graph, ineq, out, format = "json";
  std::string states, r, delta, word, edges, family = "hn", ns = "4,5,6", ds = "2,3";
  std::string which;
  int d = 2, restarts = 20, sweeps = 40, jobs = 1;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int n = 4, value = 1, points = 0, max = 8;
  std::optional<double> theta;
  double nu = 0;
  bool allow_large = false, dry_run = false;
};

struct Output {
  json data = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string summary;
};

std::string num(double x)
{
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string rat(const Rational& q)
{
  if (denominator(q) == 1) return numerator(q).str();
  return to_string(q);
}

std::vector<std::string> split(const std::string& s, char sep = ',')
{
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double to_double(const std::string& s)
{
  try {
    std::size_t used = 0;
    double x = std::stod(s, &used);
    if (used != s.size()) throw ParamError("");
    return x;
  } catch (const std::exception&) {
    throw ParamError("not a number: '" + s + "'");
  }
}

int to_int(const std::string& s)
{
  double x = to_double(s);
  if (x != static_cast<int>(x)) throw ParamError("not an integer: '" + s + "'");
  return static_cast<int>(x);
}

std::vector<double> doubles(const std::string& s, std::size_t want, const char* flag)
{
  std::vector<double> out;
  for (auto& t : split(s)) out.push_back(static_cast<double>(parse_rational(t)));
  if (want && out.size() != want)
    throw ParamError(std::string(flag) + " expects " + std::to_string(want) + " comma-separated values");
  return out;
}

std::vector<int> ints(const std::string& s)
{
  std::vector<int> out;
  for (auto& t : split(s)) out.push_back(to_int(t));
  if (out.empty()) throw ParamError("empty integer list");
  return out;
}

std::string read_file(const std::string& path)
{
  std::ifstream f(path);
  if (!f) throw ParamError("cannot read " + path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

EventGraph load_graph(const std::string& spec)
{
  if (spec.empty()) throw ParamError("--graph is required");
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    json j;
    try {
      j = json::parse(read_file(spec));
      std::vector<Edge> e;
      for (auto& x : j.at("edges")) e.emplace_back(x.at(0).get<int>(), x.at(1).get<int>());
      return EventGraph(j.at("n").get<int>(), e);
    } catch (const json::exception& ex) {
      throw ParamError(std::string("bad graph file: ") + ex.what());
    }
  }
  return graph_from_code(spec);
}

LinearInequality load_ineq(const std::string& spec)
{
  if (spec.empty()) throw ParamError("--ineq is required");
  return inequality_from_spec(spec);
}

std::string bits(const Labeling& a)
{
  std::string s;
  for (auto b : a) s += b ? '1' : '0';
  return s;
}

std::vector<std::string> edge_names(const EventGraph& g)
{
  std::vector<std::string> h;
  for (auto [u, v] : g.edges()) h.push_back("r" + std::to_string(u) + "_" + std::to_string(v));
  return h;
}

json edges_json(const EventGraph& g)
{
  json e = json::array();
  for (auto [u, v] : g.edges()) e.push_back({u, v});
  return e;
}

json ineq_json(const LinearInequality& q)
{
  return {{"graph", q.graph}, {"label", q.label}, {"coeffs", q.coeffs}, {"bound", rat(q.bound)}};
}

std::vector<std::string> ineq_row(const LinearInequality& q)
{
  std::vector<std::string> row;
  for (auto c : q.coeffs) row.push_back(std::to_string(c));
  row.push_back(rat(q.bound));
  return row;
}

json cplx_json(cplx z) { return {z.real(), z.imag()}; }

json states_json(const std::vector<CVec>& psi)
{
  json out = json::array();
  for (auto& v : psi) {
    json s = json::array();
    for (auto z : v) s.push_back(cplx_json(z));
    out.push_back(s);
  }
  return out;
}

// pure states: a JSON array of vectors, entries either numbers or [re, im];
// "@file" reads the array from a file, "obg:n:theta" and "cnref:n" are built in
std::vector<CVec> load_states(const std::string& spec)
{
  if (spec.empty()) throw ParamError("--states is required");
  if (spec.rfind("obg:", 0) == 0) {
    auto p = split(spec.substr(4), ':');
    if (p.size() != 2) throw ParamError("expected obg:n:theta");
    return obg_states(to_int(p[0]), to_double(p[1]));
  }
  if (spec.rfind("cnref:", 0) == 0) return cn_reference(to_int(spec.substr(6))).states;
  std::vector<CVec> out;
  try {
    json j = json::parse(spec[0] == '@' ? read_file(spec.substr(1)) : spec);
    for (auto& s : j) {
      CVec v;
      for (auto& z : s) v.push_back(z.is_array() ? cplx(z.at(0).get<double>(), z.at(1).get<double>()) : z.get<double>());
      out.push_back(v);
    }
  } catch (const json::exception& ex) {
    throw ParamError(std::string("bad --states: ") + ex.what());
  }
  if (out.empty()) throw ParamError("--states holds no states");
  for (auto& v : out) {
    if (v.size() != out[0].size()) throw ParamError("states have different dimensions");
    if (std::abs(norm(v) - 1) > 1e-9) throw ParamError("states must be normalized");
  }
  return out;
}

cplx parse_delta(const std::string& s)
{
  auto v = doubles(s, 2, "--delta");
  return {v[0], v[1]};
}

Word parse_word(const std::string& s)
{
  Word w;
  for (auto& t : split(s)) w.push_back(to_int(t));
  if (w.empty()) throw ParamError("--word is empty");
  return w;
}

RationalVector parse_point(const std::string& s, std::size_t dim)
{
  RationalVector r;
  for (auto& t : split(s)) r.push_back(parse_rational(t));
  if (r.size() != dim) throw ParamError("--r needs " + std::to_string(dim) + " values, one per edge");
  for (auto& x : r)
    if (x < 0 || x > 1) throw ParamError("edge weights must lie in [0,1]");
  return r;
}

int vertex_cap(const Options& o) { return o.allow_large ? 14 : default_vertex_cap; }

SeesawConfig seesaw_config(const Options& o)
{
  SeesawConfig c;
  c.d = o.d;
  c.restarts = o.restarts;
  c.sweeps = o.sweeps;
  c.tol = o.tol;
  c.seed = o.seed;
  c.jobs = o.jobs;
  c.validate();
  return c;
}

Output dry()
{
  Output out;
  out.data = {{"dry_run", true}, {"valid", true}};
  return out;
}

// ------------------------------------------------------------------ graph

Output graph_gen(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  if (o.dry_run) return dry();
  Output out;
  out.data = {{"n", g.order()}, {"edges", edges_json(g)}};
  out.header = {"u", "v"};
  for (auto [u, v] : g.edges()) out.rows.push_back({std::to_string(u), std::to_string(v)});
  return out;
}

Output labelings(const std::string& code, const EventGraph& g, const std::vector<Labeling>& ls)
{
  Output out;
  out.header = edge_names(g);
  json v = json::array();
  for (auto& a : ls) {
    v.push_back(bits(a));
    std::vector<std::string> row;
    for (auto b : a) row.push_back(b ? "1" : "0");
    out.rows.push_back(row);
  }
  out.data = {{"graph", code}, {"edge_order", out.header}, {"count", ls.size()}, {"vertices", v}};
  out.summary = "count=" + std::to_string(ls.size());
  return out;
}

Output graph_vertices(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  if (g.order() > vertex_cap(o)) throw SizeError("vertex count exceeds cap; use --allow-large");
  if (o.dry_run) return dry();
  return labelings(o.graph, g, enumerate_extreme_labelings(g, vertex_cap(o)));
}

Output graph_restricted(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  if (o.d < 1) throw ParamError("--d must be >= 1");
  if (g.order() > vertex_cap(o)) throw SizeError("vertex count exceeds cap; use --allow-large");
  if (o.dry_run) return dry();
  Output out = labelings(o.graph, g, d_restricted_extremes(g, o.d, vertex_cap(o)));
  out.data["d"] = o.d;
  return out;
}

// --------------------------------------------------------------- polytope

constexpr std::size_t facet_edge_cap = 12;

Output polytope_facets(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  if (g.size() > facet_edge_cap && !o.allow_large)
    throw SizeError("facet enumeration above " + std::to_string(facet_edge_cap) + " edges needs --allow-large");
  if (g.order() > vertex_cap(o)) throw SizeError("vertex count exceeds cap");
  if (o.dry_run) return dry();
  HRep h = facets(vrep_event_polytope(g, vertex_cap(o)));
  Output out;
  json f = json::array();
  for (auto& q : h.inequalities) {
    q.graph = o.graph;
    f.push_back(ineq_json(q));
    out.rows.push_back(ineq_row(q));
  }
  out.header = edge_names(g);
  out.header.push_back("bound");
  out.data = {{"graph", o.graph}, {"count", h.inequalities.size()}, {"facets", f}};
  out.summary = "facets=" + std::to_string(h.inequalities.size());
  return out;
}

Output polytope_classify(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  if (g.size() > facet_edge_cap && !o.allow_large) throw SizeError("facet enumeration needs --allow-large");
  if (g.order() > 8) throw SizeError("classification is limited to 8 vertices");
  if (o.dry_run) return dry();
  HRep h = facets(vrep_event_polytope(g, vertex_cap(o)));
  auto classes = classify_facets(h, g);
  Output out;
  json c = json::array();
  int nontrivial = 0;
  for (auto& k : classes) {
    auto rep = k.representative;
    rep.graph = o.graph;
    c.push_back({{"representative", ineq_json(rep)}, {"size", k.members.size()}, {"trivial", k.trivial}});
    auto row = ineq_row(rep);
    row.push_back(std::to_string(k.members.size()));
    row.push_back(k.trivial ? "1" : "0");
    out.rows.push_back(row);
    nontrivial += !k.trivial;
  }
  out.header = edge_names(g);
  out.header.insert(out.header.end(), {"bound", "size", "trivial"});
  out.data = {{"graph", o.graph}, {"facets", h.inequalities.size()}, {"classes", classes.size()},
              {"nontrivial_classes", nontrivial}, {"list", c}};
  out.summary = "classes=" + std::to_string(classes.size()) + " nontrivial=" + std::to_string(nontrivial);
  return out;
}

Output polytope_membership(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  RationalVector r = parse_point(o.r, g.size());
  if (g.order() > vertex_cap(o)) throw SizeError("vertex count exceeds cap");
  if (o.dry_run) return dry();
  bool in = membership(r, g, nullptr, vertex_cap(o));
  Output out;
  out.data = {{"graph", o.graph}, {"member", in}};
  out.summary = in ? "member" : "not a member";
  return out;
}

Output polytope_cross_section(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  if (o.value != 0 && o.value != 1) throw ParamError("--value must be 0 or 1");
  std::vector<int> fixed;
  for (auto& e : split(o.edges)) {
    auto uv = split(e, '-');
    if (uv.size() != 2) throw ParamError("--edges takes u-v pairs, e.g. 1-2,2-3");
    int k = g.edge_index(to_int(uv[0]), to_int(uv[1]));
    if (k < 0) throw ParamError("not an edge: " + e);
    fixed.push_back(k);
  }
  if (fixed.empty()) throw ParamError("--edges is required");
  if (g.order() > vertex_cap(o)) throw SizeError("vertex count exceeds cap");
  if (o.dry_run) return dry();
  VRep cs = cross_section(g, fixed, o.value, vertex_cap(o));
  std::vector<Labeling> ls;
  for (auto& x : cs.vertices) {
    Labeling a;
    for (auto& c : x) a.push_back(c != 0);
    ls.push_back(a);
  }
  Output out = labelings(o.graph, g, ls);
  out.data["value"] = o.value;
  return out;
}

Output polytope_stab_check(const Options& o)
{
  EventGraph h = load_graph(o.graph);
  if (h.order() + 1 > vertex_cap(o)) throw SizeError("suspension exceeds the vertex cap");
  if (o.dry_run) return dry();
  bool iso = verify_stab_isomorphism(h);
  Output out;
  out.data = {{"graph", o.graph},
              {"isomorphic", iso},
              {"stable_sets", stab_polytope(h).vertices.size()},
              {"independence_number", independence_number(h)}};
  out.summary = iso ? "STAB isomorphic to the cross-section" : "mismatch";
  return out;
}

// ------------------------------------------------------------------- ineq

Output ineq_family(const Options& o)
{
  auto q = load_ineq(o.ineq);
  if (o.dry_run) return dry();
  Output out;
  out.data = ineq_json(q);
  EventGraph g = graph_of(q);
  out.header = edge_names(g);
  out.header.push_back("bound");
  out.rows.push_back(ineq_row(q));
  return out;
}

Output ineq_eval(const Options& o)
{
  auto q = load_ineq(o.ineq);
  RationalVector r = parse_point(o.r, q.coeffs.size());
  if (o.dry_run) return dry();
  Rational v = evaluate(q, r);
  Output out;
  out.data = {{"ineq", q.label},         {"value", rat(v)}, {"value_float", static_cast<double>(v)},
              {"bound", rat(q.bound)}, {"violated", v > q.bound}};
  out.summary = "value=" + rat(v) + " bound=" + rat(q.bound);
  return out;
}

Output ineq_to_correlator(const Options& o)
{
  auto q = load_ineq(o.ineq);
  if (o.dry_run) return dry();
  auto c = to_correlator(q);
  EventGraph g = graph_of(q);
  Output out;
  out.data = {{"graph", c.graph},        {"label", c.label}, {"coeffs", c.coeffs},
              {"bound", rat(c.bound)},   {"correlator", true}, {"valid", correlator_valid(c, g)}};
  out.header = edge_names(g);
  out.header.push_back("bound");
  auto row = ineq_row(q);
  row.back() = rat(c.bound);
  out.rows.push_back(row);
  return out;
}

// ---------------------------------------------------------------- quantum

Output quantum_overlaps(const Options& o)
{
  EventGraph g = load_graph(o.graph);
  auto psi = load_states(o.states);
  if (static_cast<int>(psi.size()) != g.order()) throw ParamError("need one state per vertex");
  if (o.dry_run) return dry();
  auto r = overlaps(g, assignment_from_states(psi));
  Output out;
  out.header = edge_names(g);
  std::vector<std::string> row;
  for (double x : r) row.push_back(num(x));
  out.rows.push_back(row);
  out.data = {{"graph", o.graph}, {"edges", edges_json(g)}, {"overlaps", r}};
  return out;
}

Output quantum_bargmann(const Options& o)
{
  auto psi = load_states(o.states);
  Word w = parse_word(o.word);
  for (int v : w)
    if (v < 1 || v > static_cast<int>(psi.size())) throw ParamError("word label out of range");
  if (o.dry_run) return dry();
  cplx z = bargmann(assignment_from_states(psi), w);
  Output out;
  out.data = {{"word", w}, {"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
  out.summary = "re=" + num(z.real()) + " im=" + num(z.imag());
  return out;
}

Output quantum_realizable(const Options& o)
{
  auto r = doubles(o.r, 3, "--r");
  cplx delta = parse_delta(o.delta);
  for (double x : r)
    if (x < 0 || x > 1) throw ParamError("overlaps must lie in [0,1]");
  if (o.dry_run) return dry();
  auto t = pure_realizable_triplet(r[0], r[1], r[2], delta);
  CMat h = candidate_H(r[0], r[1], r[2], delta);
  Output out;
  out.data = {{"realizable", t.realizable}, {"lambda_min", lambda_min(h)}, {"states", states_json(t.states)}};
  out.summary = t.realizable ? "realizable" : "not realizable";
  return out;
}

Output quantum_imaginarity(const Options& o)
{
  auto v = doubles(o.r, 6, "--r");
  std::array<double, 6> r;
  std::copy(v.begin(), v.end(), r.begin());
  if (o.dry_run) return dry();
  auto rep = imaginarity_from_overlaps(r);
  Output out;
  json pats = json::array();
  out.header = {"pattern", "lambda_min"};
  for (int k = 0; k < 8; ++k) {
    std::string p;
    for (int b : rep.patterns[k]) p += char('0' + b);
    pats.push_back(p);
    out.rows.push_back({p, num(rep.lambda_min[k])});
  }
  out.data = {{"witnessed", rep.witnessed}, {"patterns", pats}, {"lambda_min", rep.lambda_min}};
  out.summary = rep.witnessed ? "imaginarity witnessed" : "no witness";
  return out;
}

Output quantum_bound_overlap(const Options& o)
{
  auto r = doubles(o.r, 2, "--r");
  for (double x : r)
    if (x < 0 || x > 1) throw ParamError("overlaps must lie in [0,1]");
  if (o.dry_run) return dry();
  auto b = bound_unknown_overlap(r[0], r[1]);
  Output out;
  out.data = {{"lower", b.lower}, {"upper", b.upper}};
  out.summary = "r23 in [" + num(b.lower) + ", " + num(b.upper) + "]";
  return out;
}

Output quantum_b3_defect(const Options& o)
{
  cplx delta = parse_delta(o.delta);
  if (o.dry_run) return dry();
  double f = b3_boundary_defect(delta);
  Output out;
  out.data = {{"defect", f}, {"in_b3", in_b3(delta)}};
  out.summary = "defect=" + num(f);
  return out;
}

// -------------------------------------------------------------------- opt

Output opt_seesaw(const Options& o)
{
  auto q = load_ineq(o.ineq);
  EventGraph g = graph_of(q);
  if (!o.graph.empty()) {
    EventGraph h = load_graph(o.graph);
    if (h.order() != g.order() || h.edges() != g.edges())
      throw ParamError("--graph does not match the graph of " + o.ineq);
  }
  auto cfg = seesaw_config(o);
  if (o.dry_run) return dry();
  auto res = seesaw_linear(g, q, cfg);
  if (res.aborted == cfg.restarts)
    throw NumericError("all " + std::to_string(cfg.restarts) + " restarts hit NaN (seed " + std::to_string(cfg.seed) + ")");
  double bound = static_cast<double>(q.bound);
  Output out;
  out.data = {{"ineq", q.label},          {"graph", q.graph},        {"d", cfg.d},
              {"seed", cfg.seed},         {"best", res.best},        {"bound", bound},
              {"violated", res.best > bound + 1e-9}, {"converged", res.converged}, {"monotone", res.monotone},
              {"aborted", res.aborted},   {"per_restart", res.per_restart}};
  out.header = {"restart", "value"};
  for (std::size_t k = 0; k < res.per_restart.size(); ++k)
    out.rows.push_back({std::to_string(k), num(res.per_restart[k])});
  out.summary = "best=" + num(res.best) + " bound=" + num(bound);
  return out;
}

Output opt_fw_hn(const Options& o)
{
  if (o.n < 3) throw ParamError("--n must be >= 3");
  if (o.d < 2 || o.d > o.n - 1) throw ParamError("fw-hn needs 2 <= d <= n-1");
  if (o.dry_run) return dry();
  auto r = fw_quadratic_hn(o.n, o.d);
  Output out;
  out.data = {{"n", o.n}, {"d", o.d}, {"upper", r.upper}, {"value", r.value}, {"gap", r.gap}, {"iterations", r.iterations}};
  out.summary = "upper=" + num(r.upper);
  return out;
}

Output opt_cn_ref(const Options& o)
{
  if (o.n < 3) throw ParamError("--n must be >= 3");
  if (o.dry_run) return dry();
  auto ref = cn_reference(o.n);
  auto q = cn_reference_inequality(o.n);
  std::vector<double> gamma(q.coeffs.begin(), q.coeffs.end());
  double check = detail::linear_objective(cycle_graph(o.n), gamma, ref.states);
  Output out;
  out.data = {{"n", o.n},       {"ineq", ineq_json(q)}, {"value", ref.value},
              {"evaluated", check}, {"bound", o.n - 2}, {"states", states_json(ref.states)}};
  out.summary = "value=" + num(ref.value) + " bound=" + std::to_string(o.n - 2);
  return out;
}

Output opt_bn_boundary(const Options& o)
{
  if (o.n < 2) throw ParamError("--n must be >= 2");
  int points = o.points > 0 ? o.points : 64;
  auto cfg = seesaw_config(o);
  if (cfg.d < 2) throw ParamError("bn-boundary needs d >= 2");
  if (o.dry_run) return dry();
  std::vector<double> dirs;
  for (int k = 0; k < points; ++k) dirs.push_back(2 * std::numbers::pi * k / points);
  auto s = bn_boundary(o.n, dirs, cfg);
  Output out;
  json pts = json::array();
  out.header = {"theta", "re", "im"};
  for (auto& b : s) {
    pts.push_back({b.direction, b.delta.real(), b.delta.imag()});
    out.rows.push_back({num(b.direction), num(b.delta.real()), num(b.delta.imag())});
  }
  auto top = max_imag_at_zero_real(s);
  out.data = {{"n", o.n}, {"d", cfg.d}, {"boundary", pts}};
  out.data["max_imag_at_zero_real"] = top ? json(*top) : json(nullptr);
  if (top) out.summary = "max Im at Re=0: " + num(*top);
  return out;
}

Output scan_output(const std::vector<ScanRow>& rows)
{
  Output out;
  json arr = json::array();
  out.header = {"family", "n", "d", "bound", "lower", "upper", "witness"};
  for (auto& r : rows) {
    json j = {{"family", r.family}, {"n", r.n}, {"d", r.d}, {"bound", r.bound}, {"lower", r.lower}};
    j["upper"] = r.upper ? json(*r.upper) : json(nullptr);
    j["witness"] = r.witness;
    arr.push_back(j);
    out.rows.push_back({r.family, std::to_string(r.n), std::to_string(r.d), num(r.bound), num(r.lower),
                        r.upper ? num(*r.upper) : "", r.witness ? "1" : "0"});
  }
  out.data = {{"rows", arr}};
  return out;
}

Output opt_scan(const Options& o)
{
  auto ns = ints(o.ns), ds = ints(o.ds);
  auto cfg = seesaw_config(o);
  for (int n : ns) graph_of(o.family == "hnm" ? inequality_family("hnm", n, 2) : inequality_family(o.family, n));
  for (int d : ds)
    if (d < 1) throw ParamError("dimensions must be >= 1");
  if (o.dry_run) return dry();
  return scan_output(dimension_witness_scan(o.family, ns, ds, cfg));
}

// ---------------------------------------------------------- interrogation

Output interrogation_curve_cmd(const Options& o)
{
  int points = o.points > 0 ? o.points : 101;
  if (points < 2) throw ParamError("--points must be >= 2");
  if (o.dry_run) return dry();
  std::vector<double> grid;
  for (int k = 0; k < points; ++k) grid.push_back(static_cast<double>(k) / (points - 1));
  Output out;
  json arr = json::array();
  out.header = {"r", "eta_q", "eta_nc", "gap"};
  for (auto& p : interrogation_curve(grid)) {
    arr.push_back({{"r", p.r}, {"eta_q", p.eta_q}, {"eta_nc", p.eta_nc}, {"gap", p.gap()}});
    out.rows.push_back({num(p.r), num(p.eta_q), num(p.eta_nc), num(p.gap())});
  }
  out.data = {{"curve", arr}};
  return out;
}

Output interrogation_gap_cmd(const Options& o)
{
  if (o.dry_run) return dry();
  auto exact = interrogation_gap_max();
  auto numeric = interrogation_gap_max_numeric();
  Output out;
  out.data = {{"r_star", exact.r_star}, {"gap", exact.gap}, {"r_star_numeric", numeric.r_star}, {"gap_numeric", numeric.gap}};
  char buf[64];
  std::snprintf(buf, sizeof buf, "r*=%.6f gap=%.6f", exact.r_star, exact.gap);
  out.summary = buf;
  return out;
}

Output interrogation_noisy_cmd(const Options& o)
{
  if (!o.theta) throw ParamError("--theta is required");
  if (*o.theta < 0 || *o.theta > std::numbers::pi) throw ParamError("theta must lie in [0, pi]");
  if (o.nu < 0 || o.nu > 1) throw ParamError("--nu must lie in [0,1]");
  if (o.dry_run) return dry();
  auto e = noisy_interrogation(*o.theta, o.nu);
  Output out;
  out.data = {{"theta", *o.theta}, {"nu", o.nu}, {"eta_q", e.eta_q}, {"eta_nc", e.eta_nc}, {"gap", e.gap()}};
  out.summary = "gap=" + num(e.gap());
  return out;
}

Output interrogation_threshold_cmd(const Options& o)
{
  if (o.theta) {
    if (*o.theta < 0 || *o.theta > std::numbers::pi) throw ParamError("theta must lie in [0, pi]");
    if (o.dry_run) return dry();
    auto t = noise_threshold(*o.theta);
    Output out;
    out.data = {{"theta", *o.theta}, {"advantage", t.advantage}, {"nu_threshold", t.nu}};
    out.summary = "nu=" + num(t.nu);
    return out;
  }
  int points = o.points > 0 ? o.points : 400;
  if (o.dry_run) return dry();
  auto s = noise_threshold_scan(points);
  Output out;
  json arr = json::array();
  out.header = {"theta", "nu_threshold"};
  for (std::size_t k = 0; k < s.theta.size(); ++k) {
    arr.push_back({s.theta[k], s.nu[k]});
    out.rows.push_back({num(s.theta[k]), num(s.nu[k])});
  }
  out.data = {{"best_theta", s.best_theta}, {"best_nu", s.best_nu}, {"scan", arr}};
  out.summary = "max nu=" + num(s.best_nu) + " at theta=" + num(s.best_theta);
  return out;
}

// ----------------------------------------------------------------- tables

Output table_bell(const Options& o)
{
  if (o.max < 2) throw ParamError("--max must be >= 2");
  if (o.max > vertex_cap(o)) throw SizeError("--max must lie in 2.." + std::to_string(vertex_cap(o)));
  if (o.dry_run) return dry();
  Output out;
  json arr = json::array();
  out.header = {"n", "vertices", "bell"};
  for (int n = 2; n <= o.max; ++n) {
    std::size_t count = enumerate_extreme_labelings(complete_graph(n), vertex_cap(o)).size();
    arr.push_back({{"n", n}, {"vertices", count}, {"bell", bell_number(n)}});
    out.rows.push_back({std::to_string(n), std::to_string(count), std::to_string(bell_number(n))});
  }
  out.data = {{"rows", arr}};
  return out;
}

Output table_seesaw(const Options& o)
{
  auto cfg = seesaw_config(o);
  auto ds = ints(o.ds);
  if (o.dry_run) return dry();
  std::vector<LinearInequality> qs;
  for (int n = 3; n <= 6; ++n) qs.push_back(cycle_inequality(n));
  for (int n = 4; n <= 6; ++n) qs.push_back(star_inequality(n));
  qs.push_back(star_inequality(5, 2));
  qs.push_back(star_inequality(6, 2));
  for (int i = 1; i <= 9; ++i) qs.push_back(k5_class(i));
  for (int i = 1; i <= 2; ++i) qs.push_back(k33_class(i));
  qs.push_back(kcbs_inequality());
  qs.push_back(kappa_inequality());
  Output out;
  json arr = json::array();
  out.header = {"ineq", "graph", "bound"};
  for (int d : ds) out.header.push_back("d" + std::to_string(d));
  for (auto& q : qs) {
    EventGraph g = graph_of(q);
    json vals = json::object();
    std::vector<std::string> row{q.label, q.graph, rat(q.bound)};
    for (int d : ds) {
      cfg.d = d;
      double v = seesaw_linear(g, q, cfg).best;
      vals["d" + std::to_string(d)] = v;
      row.push_back(num(v));
    }
    arr.push_back({{"ineq", q.label}, {"graph", q.graph}, {"bound", rat(q.bound)}, {"values", vals}});
    out.rows.push_back(row);
  }
  out.data = {{"rows", arr}};
  return out;
}

Output table_kn(const Options& o)
{
  auto cfg = seesaw_config(o);
  int top = std::max(4, o.max);
  if (top > 10) throw SizeError("kn table is limited to n <= 10");
  if (o.dry_run) return dry();
  std::vector<int> ns;
  for (int n = 4; n <= top; ++n) ns.push_back(n);
  std::vector<ScanRow> rows;
  for (int n : ns) {
    std::vector<int> ds;
    for (int d = 2; d <= n - 1; ++d) ds.push_back(d);
    auto block = dimension_witness_scan("hn", {n}, ds, cfg);
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return scan_output(rows);
}

Output tables_reproduce(const Options& o)
{
  if (o.which == "bell") return table_bell(o);
  if (o.which == "seesaw") return table_seesaw(o);
  if (o.which == "kn") return table_kn(o);
  throw ParamError("unknown table '" + o.which + "' (seesaw, kn, bell)");
}

// --------------------------------------------------------------- plumbing

std::uint64_t fnv1a(const std::string& s)
{
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Output& out, const std::string& format)
{
  if (format == "json") return out.data.dump(2) + "\n";
  std::ostringstream s;
  auto line = [&](const std::vector<std::string>& f) {
    for (std::size_t k = 0; k < f.size(); ++k) s << (k ? "," : "") << csv_field(f[k]);
    s << "\n";
  };
  if (!out.header.empty()) {
    line(out.header);
    for (auto& r : out.rows) line(r);
    return s.str();
  }
  line({"key", "value"});
  for (auto& [k, v] : out.data.items())
    if (v.is_primitive()) line({k, v.is_string() ? v.get<std::string>() : v.dump()});
  return s.str();
}

json parameters(const CLI::App* sub)
{
  json p = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    std::string name = opt->get_name(false, true);
    if (name == "--help" || name == "--out" || name.empty()) continue;
    if (opt->count() > 0) {
      auto r = opt->results();
      p[opt->get_single_name()] = r.size() == 1 ? json(r[0]) : json(r);
    } else if (!opt->get_default_str().empty()) {
      p[opt->get_single_name()] = opt->get_default_str();
    }
  }
  return p;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Event graph and Bargmann invariant toolkit"};
  app.set_version_flag("--version", version);
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file; flags override it");

  Options o;
  std::string command;
  std::function<Output(const Options&)> handler;
  CLI::App* leaf = nullptr;

  auto add = [&](CLI::App* parent, const std::string& name, const std::string& help,
                 std::function<Output(const Options&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->add_option("--out", o.out, "output directory")->envname("EVG_OUT_DIR");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_flag("--allow-large", o.allow_large, "lift the size caps");
    sub->add_flag("--dry-run", o.dry_run, "validate inputs only");
    sub->callback([&, sub, fn, parent_name = parent->get_name(), name] {
      command = parent_name + " " + name;
      handler = fn;
      leaf = sub;
    });
    return sub;
  };
  auto seesaw_flags = [&](CLI::App* s) {
    s->add_option("--d", o.d, "local dimension")->capture_default_str();
    s->add_option("--seed", o.seed, "master seed")->capture_default_str();
    s->add_option("--restarts", o.restarts, "random restarts")->capture_default_str();
    s->add_option("--sweeps", o.sweeps, "sweeps per restart")->capture_default_str();
    s->add_option("--tol", o.tol, "per-sweep improvement tolerance")->capture_default_str();
    s->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  };

  auto* graph = app.add_subcommand("graph", "event graphs and their deterministic vertices")->require_subcommand(1);
  add(graph, "gen", "print a graph in file format", graph_gen)->add_option("--graph", o.graph, "code or .json file");
  add(graph, "vertices", "extreme deterministic labelings", graph_vertices)->add_option("--graph", o.graph);
  {
    auto* s = add(graph, "restricted", "vertices realizable in dimension d", graph_restricted);
    s->add_option("--graph", o.graph);
    s->add_option("--d", o.d)->capture_default_str();
  }

  auto* poly = app.add_subcommand("polytope", "event graph polytopes")->require_subcommand(1);
  add(poly, "facets", "H-representation", polytope_facets)->add_option("--graph", o.graph);
  add(poly, "classify", "facet classes under graph automorphisms", polytope_classify)->add_option("--graph", o.graph);
  {
    auto* s = add(poly, "membership", "exact membership test", polytope_membership);
    s->add_option("--graph", o.graph);
    s->add_option("--r", o.r, "edge weights, comma separated (1/2 or 0.5)");
  }
  {
    auto* s = add(poly, "cross-section", "vertices with fixed edges", polytope_cross_section);
    s->add_option("--graph", o.graph);
    s->add_option("--edges", o.edges, "edges to fix, e.g. 1-2,2-3");
    s->add_option("--value", o.value, "0 or 1")->capture_default_str();
  }
  add(poly, "stab-check", "compare STAB(H) with the suspension cross-section", polytope_stab_check)
      ->add_option("--graph", o.graph);

  auto* ineq = app.add_subcommand("ineq", "named inequalities")->require_subcommand(1);
  add(ineq, "family", "print an inequality", ineq_family)->add_option("--ineq", o.ineq, "family:params, e.g. hn:4");
  {
    auto* s = add(ineq, "eval", "evaluate on an edge weighting", ineq_eval);
    s->add_option("--ineq", o.ineq);
    s->add_option("--r", o.r);
  }
  add(ineq, "to-correlator", "rewrite in correlator form", ineq_to_correlator)->add_option("--ineq", o.ineq);

  auto* quantum = app.add_subcommand("quantum", "overlaps and Bargmann invariants")->require_subcommand(1);
  {
    auto* s = add(quantum, "overlaps", "edge overlaps of pure states", quantum_overlaps);
    s->add_option("--graph", o.graph);
    s->add_option("--states", o.states, "JSON array, @file, obg:n:theta or cnref:n");
  }
  {
    auto* s = add(quantum, "bargmann", "invariant of a word", quantum_bargmann);
    s->add_option("--states", o.states);
    s->add_option("--word", o.word, "vertex labels, e.g. 1,2,3");
  }
  {
    auto* s = add(quantum, "realizable", "pure-state realizability of (r12,r13,r23,D123)", quantum_realizable);
    s->add_option("--r", o.r, "r12,r13,r23");
    s->add_option("--delta", o.delta, "re,im");
  }
  add(quantum, "imaginarity", "imaginarity test from six overlaps", quantum_imaginarity)
      ->add_option("--r", o.r, "r12,r13,r14,r23,r24,r34");
  add(quantum, "bound-overlap", "range of r23 given r12,r13", quantum_bound_overlap)->add_option("--r", o.r, "r12,r13");
  add(quantum, "b3-defect", "distance from the third-order boundary", quantum_b3_defect)
      ->add_option("--delta", o.delta, "re,im");

  auto* opt = app.add_subcommand("opt", "numerical optimization")->require_subcommand(1);
  {
    auto* s = add(opt, "seesaw", "lower bound on the quantum value", opt_seesaw);
    s->add_option("--graph", o.graph);
    s->add_option("--ineq", o.ineq);
    seesaw_flags(s);
  }
  {
    auto* s = add(opt, "fw-hn", "upper bound for hn in dimension d", opt_fw_hn);
    s->add_option("--n", o.n)->capture_default_str();
    s->add_option("--d", o.d)->capture_default_str();
    s->add_option("--jobs", o.jobs)->capture_default_str();
  }
  {
    auto* s = add(opt, "cn-ref", "reference qubit states for the n-cycle", opt_cn_ref);
    s->add_option("--n", o.n)->capture_default_str();
    s->add_option("--jobs", o.jobs)->capture_default_str();
  }
  {
    auto* s = add(opt, "bn-boundary", "boundary of the n-th order invariant set", opt_bn_boundary);
    s->add_option("--n", o.n)->capture_default_str();
    s->add_option("--points", o.points, "directions (default 64)");
    seesaw_flags(s);
  }
  {
    auto* s = add(opt, "scan", "dimension witness scan", opt_scan);
    s->add_option("--family", o.family)->capture_default_str();
    s->add_option("--ns", o.ns)->capture_default_str();
    s->add_option("--ds", o.ds)->capture_default_str();
    seesaw_flags(s);
  }

  auto* inter = app.add_subcommand("interrogation", "interaction-free measurement")->require_subcommand(1);
  add(inter, "curve", "efficiencies against overlap", interrogation_curve_cmd)
      ->add_option("--points", o.points, "grid size (default 101)");
  add(inter, "gap", "largest quantum advantage", interrogation_gap_cmd);
  {
    auto* s = add(inter, "noisy", "efficiencies under depolarizing noise", interrogation_noisy_cmd);
    s->add_option("--theta", o.theta);
    s->add_option("--nu", o.nu)->capture_default_str();
  }
  {
    auto* s = add(inter, "threshold", "noise level where the advantage vanishes", interrogation_threshold_cmd);
    s->add_option("--theta", o.theta, "single angle; scans (0, pi) when omitted");
    s->add_option("--points", o.points, "scan size (default 400)");
  }

  auto* tables = app.add_subcommand("tables", "reference tables")->require_subcommand(1);
  {
    auto* s = add(tables, "reproduce", "seesaw, kn or bell", tables_reproduce);
    s->add_option("which", o.which)->required()->check(CLI::IsMember({"seesaw", "kn", "bell"}));
    s->add_option("--max", o.max, "largest n")->capture_default_str();
    s->add_option("--ds", o.ds, "dimensions for the seesaw table")->capture_default_str();
    seesaw_flags(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  Output out;
  try {
    out = handler(o);
  } catch (const SizeError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  } catch (const ParamError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::string text = render(out, o.format);
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  json manifest = {{"command", command},     {"parameters", parameters(leaf)}, {"seed", o.seed},
                   {"version", version},     {"wall_time_s", wall},            {"output_digest", digest}};

  std::cout << text;
  if (!out.summary.empty()) std::cerr << out.summary << "\n";
  std::cerr << manifest.dump() << "\n";

  if (!o.out.empty()) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(o.out, ec);
    std::ofstream res(fs::path(o.out) / (o.format == "json" ? "result.json" : "result.csv"), std::ios::binary);
    std::ofstream man(fs::path(o.out) / "manifest.json", std::ios::binary);
    if (ec || !res || !man) {
      std::cerr << "cannot write to " << o.out << "\n";
      return 2;
    }
    res << text;
    man << manifest.dump(2) << "\n";
  }
  return 0;
}
