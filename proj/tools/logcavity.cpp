#include <logcavity/discriminant.hpp>
#include <logcavity/fixtures.hpp>
#include <logcavity/hodge.hpp>
#include <logcavity/io.hpp>
#include <logcavity/matroid.hpp>
#include <logcavity/poly.hpp>
#include <logcavity/poset.hpp>
#include <logcavity/sequences.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace logcavity;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchema = 1;

struct Options {
  std::string matroid, graph, poset, poly, matrices, out, format = "json";
  std::string r_csv, x, y, point, tuple, element;
  int k = -1;
  int jobs = 1;
  std::uint64_t cap_extensions = kDefaultExtensionCap;
  int cap_elements = 12;
};

struct Run {
  json inputs = json::object();
  json results = json::object();
  json findings = json::array();
  std::vector<std::string> violations;

  void expect(bool ok, const std::string& what) {
    if (!ok) violations.push_back(what);
  }
};

struct MatroidInput {
  Matroid m;
  std::optional<Graph> g;
};

MatroidInput load_matroid(const Options& o, Run& run) {
  if (!o.matroid.empty() == !o.graph.empty()) throw error("UsageError", "give exactly one of --matroid or --graph");
  MatroidInput in;
  if (!o.graph.empty()) {
    json j = io::read_json_file(o.graph);
    in.g = io::parse_graph(j);
    if (static_cast<int>(in.g->edges.size()) > o.cap_elements) throw error("TooLarge", "graph exceeds --cap-elements");
    in.m = graphic(*in.g);
    run.inputs["graph"] = io::graph_json(*in.g);
  } else {
    json j = io::read_json_file(o.matroid);
    in.m = io::parse_matroid(j);
    if (j.at("type") == "graphic") in.g = io::parse_graph(j.contains("graph") ? j.at("graph") : j);
    run.inputs["matroid"] = j;
  }
  if (in.m.size() > o.cap_elements) throw error("TooLarge", "matroid exceeds --cap-elements");
  return in;
}

io::PosetInput load_poset(const Options& o, Run& run) {
  if (o.poset.empty()) throw error("UsageError", "--poset is required");
  json j = io::read_json_file(o.poset);
  io::PosetInput in = io::parse_poset(j);
  if (in.poset.size() > o.cap_elements) throw error("TooLarge", "poset exceeds --cap-elements");
  if (!o.x.empty()) in.x = in.poset.index_of(o.x);
  if (!o.y.empty()) in.y = in.poset.index_of(o.y);
  run.inputs["poset"] = j;
  return in;
}

json counts_json(const Counts& c) { return io::int_list(c); }

void cmd_matroid(const Options& o, Run& run) {
  MatroidInput in = load_matroid(o, run);
  const Matroid& m = in.m;
  auto [loops, coloops] = loops_and_coloops(m);
  json& r = run.results;
  r["n"] = m.size();
  r["rank"] = m.rank();
  r["basis_count"] = m.bases().size();
  r["loops"] = io::set_json(loops);
  r["coloops"] = io::set_json(coloops);
  r["simple"] = is_simple(m);
  r["independent_counts"] = io::int_list(independent_counts(m));
  FlatLattice fl = flats(m);
  json per_rank = json::array();
  for (const auto& f : fl.by_rank) per_rank.push_back(f.size());
  r["flats_per_rank"] = per_rank;
  r["canonical"] = io::matroid_json(m);
  if (in.g && component_count(*in.g) == 1) {
    ZInt trees = spanning_tree_count(*in.g);
    r["spanning_trees"] = io::int_json(trees);
    run.expect(trees == ZInt(static_cast<unsigned long>(m.bases().size())), "spanning tree count differs from basis count");
  }
}

void cmd_stanley(const Options& o, Run& run) {
  MatroidInput in = load_matroid(o, run);
  const Matroid& m = in.m;
  const Set rs = io::parse_element_list(o.r_csv, m.size());
  const Set qs = m.ground() & ~rs;
  run.inputs["R"] = io::set_json(rs);
  StanleySequence s = stanley_matroid_sequence(m, rs);
  json& r = run.results;
  r["N"] = io::int_list(s.N);
  r["N_normalized"] = io::vector_json(s.normalized);
  const bool ulc = log_concave(s.normalized);
  r["ultra_log_concave"] = ulc;
  run.expect(ulc, "normalized Stanley sequence is not log-concave");

  const int rank = m.rank();
  json b_delta = json::array(), g_delta = json::array(), v_delta = json::array();
  MPoly g = g_polynomial(m, {rs, qs});
  std::optional<QMatrix> coords;
  if (in.g && component_count(*in.g) == 1) coords = reduced_incidence(*in.g);
  for (int k = 0; k <= rank; ++k) {
    ZInt b = B_count(m, {{rs, k}, {qs, rank - k}});
    ZInt expected = s.N[k] * factorial(k) * factorial(rank - k);
    b_delta.push_back(io::int_json(b - expected));
    g_delta.push_back(io::rat_json(g.coefficient({k, rank - k}) - QRat(s.N[k])));
    if (coords) {
      std::vector<std::vector<QRat>> tr, tq;
      for (int e : elements(rs)) tr.push_back(coords->column(e));
      for (int e : elements(qs)) tq.push_back(coords->column(e));
      std::vector<std::vector<std::vector<QRat>>> lists(k, tr);
      lists.insert(lists.end(), rank - k, tq);
      v_delta.push_back(io::rat_json(QRat(b) - QRat(factorial(rank)) * mixed_volume_zonotopes(lists)));
    }
  }
  r["cross_check_deltas"] = {{"B_count", b_delta}, {"g_coefficient", g_delta}};
  if (coords) r["cross_check_deltas"]["mixed_volume"] = v_delta;
  for (const auto& d : {b_delta, g_delta, v_delta})
    for (const auto& x : d) run.expect(x == 0, "Stanley cross-check delta is nonzero");

  if (!parallel_data(m).loops) {
    RatioVerdict rv = ratio_condition_check(m, rs);
    r["ratio_condition"] = {{"holds", rv.holds}, {"ratio", rv.ratio ? io::rat_json(*rv.ratio) : json(nullptr)}};
    if (rv.holds) run.expect(rv.sequence_matches, "ratio condition holds but the sequence is not geometric");
  }
  if (in.g && m.rank_of(rs) == rank && m.rank_of(qs) == rank && rank >= 2) {
    GraphicEqualityVerdict gv = graphic_equality_check(*in.g, rs);
    r["graphic_equality"] = {{"some_k", gv.a_holds}, {"every_k", gv.b_holds}, {"edge_ratio", gv.c_holds}};
    run.expect(gv.consistent(), "graphic equality conditions disagree");
  }
  ConjectureProbe cp = conjecture_probe(m, rs);
  if (cp.witness())
    run.findings.push_back({{"kind", "equality_without_ratio_condition"}, {"R", io::set_json(rs)}, {"N", r["N"]}});
}

void cmd_poset(const Options& o, Run& run) {
  io::PosetInput in = load_poset(o, run);
  const Poset& p = in.poset;
  ExtensionTable t(p, o.cap_extensions);
  json& r = run.results;
  r["size"] = p.size();
  r["extensions"] = t.count();
  if (!in.x) return;
  const int x = *in.x, n = p.size();
  Counts N = stanley_sequence(t, x);
  r["x"] = p.label(x);
  r["stanley"] = counts_json(N);
  r["stanley_log_concave"] = log_concave(N);
  run.expect(log_concave(N), "Stanley sequence is not log-concave");
  json eq = json::array();
  for (int i = 1; i <= n; ++i) {
    if (seq_at(N, i) == 0) continue;
    StanleyVerdict v = stanley_equality_classify(p, x, i, t);
    eq.push_back({{"i", i}, {"a", v.a}, {"b", v.b}, {"c", v.c}, {"d", v.d}});
    if (i >= 2 && i <= n - 1) run.expect(v.a == v.b && v.b == v.c && v.c == v.d, "Stanley equality conditions disagree at i = " + std::to_string(i));
  }
  r["stanley_equality"] = eq;
}

void cmd_kahnsaks(const Options& o, Run& run) {
  io::PosetInput in = load_poset(o, run);
  if (!in.x || !in.y) throw error("UsageError", "kahnsaks needs marks x and y");
  MarkedPoset mp = normalize({in.poset, *in.x, *in.y});
  ExtensionTable t(mp.poset, o.cap_extensions);
  Counts N = kahn_saks_sequence(mp, t);
  const int n = mp.poset.size();
  json& r = run.results;
  r["normalized_size"] = n;
  r["N"] = counts_json(N);
  r["log_concave"] = log_concave(N);
  run.expect(log_concave(N), "Kahn-Saks sequence is not log-concave");
  json per_k = json::array();
  for (int k = 1; k <= n - 1; ++k) {
    PositivityVerdict pv = kahn_saks_positivity(mp, k);
    run.expect(pv.positive == (seq_at(N, k) > 0), "positivity predicate disagrees at k = " + std::to_string(k));
    json row = {{"k", k}, {"N_k", seq_at(N, k)}, {"positive", pv.positive}};
    if (k >= 2 && k <= n - 2 && seq_at(N, k) > 0) {
      MidwayVerdict mw = midway_check(mp, k);
      ExtremalVerdict v = kahn_saks_extremal_classify(mp, k, N);
      const bool flat = seq_at(N, k - 1) == seq_at(N, k) && seq_at(N, k) == seq_at(N, k + 1);
      const bool all3 = v.doubling_conditions[0] && v.doubling_conditions[1] && v.doubling_conditions[2] && v.doubling_conditions[3];
      row["equality"] = v.equality;
      row["midway"] = mw.midway;
      row["dual_midway"] = mw.dual_midway;
      row["doubling"] = v.doubling;
      row["doubling_conditions"] = v.doubling_conditions;
      if (v.ratio) row["ratio"] = io::rat_json(*v.ratio);
      run.expect(!v.ratio || *v.ratio == 1 || *v.ratio == 2, "equality ratio outside {1, 2}");
      run.expect(flat == (mw.midway || mw.dual_midway), "flat equality disagrees with the midway properties");
      run.expect(v.doubling == all3, "doubling disagrees with its four conditions");
    }
    per_k.push_back(row);
  }
  r["per_k"] = per_k;
  ExtensionExtremes ex = extension_extremes(mp, t);
  r["min_gap"] = ex.min_gap;
  run.expect(ex.min_gap == ex.expected_min_gap && ex.wide_exists, "extension extremes differ from the closed forms");
}

void cmd_lorentzian(const Options& o, Run& run) {
  MPoly f(0);
  bool from_matroid = false;
  if (!o.poly.empty()) {
    json j = io::read_json_file(o.poly);
    f = io::parse_poly(j);
    run.inputs["poly"] = j;
  } else {
    MatroidInput in = load_matroid(o, run);
    f = basis_generating_poly(in.m);
    from_matroid = true;
    if (!o.r_csv.empty()) {
      const Set rs = io::parse_element_list(o.r_csv, in.m.size());
      MPoly g = g_polynomial(in.m, {rs, in.m.ground() & ~rs});
      run.results["g_coefficient_logconcave"] = coefficient_logconcavity(g);
      run.expect(coefficient_logconcavity(g), "g polynomial coefficients are not log-concave");
    }
  }
  if (f.nvars() > o.cap_elements) throw error("TooLarge", "polynomial exceeds --cap-elements variables");
  LorentzianReport rep = lorentzian_check(f, default_sample_points(f.nvars()));
  json& r = run.results;
  r["passes"] = rep.passes;
  r["m_convex_support"] = rep.m_convex_support;
  r["derivatives_checked"] = rep.derivatives_checked;
  if (!rep.failure.empty()) r["failure"] = rep.failure;
  r["coefficient_logconcave"] = coefficient_logconcavity(f);
  if (from_matroid) run.expect(rep.passes, "basis generating polynomial failed the Lorentzian check");
}

// "A^[2],B" -> A, A, B
std::vector<QMatrix> parse_tuple(const std::string& spec, const json& named) {
  std::vector<QMatrix> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    int mult = 1;
    std::string name = item;
    if (auto pos = item.find("^["); pos != std::string::npos) {
      if (item.back() != ']') throw error("UsageError", "bad multiplicity in '" + item + "'");
      name = item.substr(0, pos);
      try {
        mult = std::stoi(item.substr(pos + 2, item.size() - pos - 3));
      } catch (const std::exception&) {
        throw error("UsageError", "bad multiplicity in '" + item + "'");
      }
      if (mult < 0) throw error("UsageError", "negative multiplicity in '" + item + "'");
    }
    if (!named.contains(name)) throw error("UnknownMatrix", "no matrix named '" + name + "'");
    QMatrix a = io::parse_matrix(named.at(name));
    for (int i = 0; i < mult; ++i) out.push_back(a);
  }
  return out;
}

void cmd_discriminant(const Options& o, Run& run) {
  if (o.matrices.empty()) throw error("UsageError", "--matrices is required");
  json j = io::read_json_file(o.matrices);
  run.inputs["matrices"] = j;
  if (!j.contains("matrices")) throw error("BadMatrix", "file needs a \"matrices\" object");
  std::string spec = o.tuple;
  if (spec.empty() && j.contains("tuple")) {
    for (const auto& t : j.at("tuple")) spec += (spec.empty() ? "" : ",") + t.get<std::string>();
  }
  if (spec.empty()) throw error("UsageError", "no tuple given (--tuple or \"tuple\" in the file)");
  std::vector<QMatrix> mats = parse_tuple(spec, j.at("matrices"));
  check_tuple(mats);
  if (mats.size() > 7) throw error("TooLarge", "mixed discriminants are capped at n = 7");
  json& r = run.results;
  const QRat perm = mixed_discriminant_perm(mats), polar = mixed_discriminant_polar(mats);
  r["tuple"] = spec;
  r["permutation"] = io::rat_json(perm);
  r["polarization"] = io::rat_json(polar);
  run.expect(perm == polar, "permutation and polarization routes disagree");
  bool all_psd = true;
  for (const auto& a : mats) all_psd = all_psd && is_psd(a);
  r["all_psd"] = all_psd;
  if (all_psd) {
    std::vector<WeightedColumns> fs;
    for (const auto& a : mats) fs.push_back(psd_decompose(a).columns());
    const QRat gram = mixed_discriminant_gram(fs);
    r["gram"] = io::rat_json(gram);
    run.expect(gram == perm, "Gram route disagrees");
    run.expect(perm >= 0, "mixed discriminant of PSD matrices is negative");
  }
}

void cmd_hodge(const Options& o, Run& run) {
  MatroidInput in = load_matroid(o, run);
  GorensteinRing ring(in.m, o.jobs);
  const int rank = ring.degree();
  const int k = o.k < 0 ? 1 : o.k;
  std::vector<QRat> a = o.point.empty() ? std::vector<QRat>(in.m.size(), QRat(1)) : io::parse_point(o.point);
  run.inputs["k"] = k;
  run.inputs["point"] = io::vector_json(a);
  json& r = run.results;
  auto dims = ring.dims();
  r["dims"] = io::int_list(dims);
  bool palindromic = true;
  for (std::size_t i = 0; i < dims.size(); ++i) palindromic = palindromic && dims[i] == dims[dims.size() - 1 - i];
  run.expect(palindromic, "graded dimensions are not palindromic");
  if (2 * k > rank) throw error("DegreeTooHigh", "need 2k <= rank");
  HRFormMatrix q = hr_form(ring, k, a);
  const QRat fa = f_value(in.m, a);
  r["f_at_point"] = io::rat_json(fa);
  r["inertia"]["hr_form"] = io::inertia_json(inertia(q.matrix));
  const bool hl = hl_check(ring, k, a), hrr = hrr_check(ring, k, a);
  r["hl"] = hl;
  r["hrr"] = hrr;
  if (k == 1 && fa > 0) {
    DegreeOneCriteria c = degree_one_criteria(ring, a);
    r["degree_one_criteria"] = {{"hl", c.hl}, {"hrr", c.hrr}, {"minus_q_inertia", io::inertia_json(c.minus_q)}};
    run.expect(c.hl == hl && c.hrr == hrr, "degree-one criteria disagree with the direct computation");
    run.expect(hl == hrr, "HL_1 and HRR_1 disagree at a point with f(a) > 0");
  }
  if (rank - k - 1 >= 0) {
    const bool socle = socle_check(ring, k, 0);
    r["socle"] = socle;
    run.expect(socle, "socle is nontrivial");
  }
  SignatureCheck sig = signature_formula_check(ring, k, a);
  r["signature"] = {{"hypotheses", sig.hypotheses}, {"lhs", sig.lhs}, {"rhs", sig.rhs}};
  run.expect(sig.holds(), "signature formula fails although HL and HRR hold");
  if (in.m.size() <= 16) {
    MobiusPairing mp = mobius_pairing(ring, k);
    r["inertia"]["mobius_pairing"] = io::inertia_json(mp.inertia);
    r["probes"]["mobius_flats"] = mp.flats.size();
    r["probes"]["mobius_formulations_agree"] = mp.formulations_agree;
    r["probes"]["theta_rank"] = mp.theta_rank;
    r["probes"]["theta_consistent"] = theta_consistency(ring, k);
    run.expect(mp.formulations_agree, "the two pairing formulations disagree");
  }
  if (k >= 2 && !hrr)
    run.findings.push_back({{"kind", "hrr_fails_in_higher_degree"}, {"k", k}, {"point", io::vector_json(a)}});
}

void cmd_probe(const Options& o, Run& run) {
  MatroidInput in = load_matroid(o, run);
  const Matroid& m = in.m;
  const Set coloops = loops_and_coloops(m).second;
  std::vector<int> es;
  if (!o.element.empty()) {
    Set s = io::parse_element_list(o.element, m.size());
    es = elements(s);
  } else {
    for (int e : elements(m.ground() & ~coloops)) es.push_back(e);
  }
  json probes = json::array();
  for (int e : es) {
    ContainmentProbe p = annihilator_containment_probe(m, e);
    json row = {{"element", e + 1}, {"contained", p.contained}};
    if (!p.contained) {
      json xi = json::array();
      for (const auto& [s, c] : p.counterexample) xi.push_back({{"monomial", io::set_json(s)}, {"coefficient", io::rat_json(c)}});
      row["degree"] = *p.degree;
      row["counterexample"] = xi;
      run.findings.push_back({{"kind", "annihilator_not_contained"}, {"element", e + 1}});
    }
    probes.push_back(row);
  }
  run.results["annihilator_containment"] = probes;
  if (m.rank() >= 2) {
    GorensteinRing ring(m, o.jobs);
    FacetScan scan = facet_theorem_scan(ring);
    json facets = json::array();
    for (const auto& f : scan.facets) {
      json row = {{"element", f.element + 1}, {"coloop", f.coloop}, {"hrr", f.hrr_plain && f.hrr_perturbed}};
      if (f.inverse_hessian) row["inverse_hessian"] = io::rat_json(*f.inverse_hessian);
      facets.push_back(row);
      run.expect(f.agrees, "facet HRR_1 disagrees with coloop status at element " + std::to_string(f.element + 1));
      run.expect(f.inverse_hessian_consistent, "inverse Hessian test disagrees at element " + std::to_string(f.element + 1));
    }
    run.results["facets"] = facets;
    run.results["lower_faces"] = {{"checked", scan.lower_checked},
                                  {"failures", scan.lower_failures.size()},
                                  {"degenerate", scan.lower_degenerate},
                                  {"degenerate_failures", scan.lower_degenerate_failures.size()}};
    run.expect(scan.lower_failures.empty(), "HRR_1 fails on a lower face where f is positive");
  }
  if (!o.r_csv.empty()) {
    const Set rs = io::parse_element_list(o.r_csv, m.size());
    ConjectureProbe cp = conjecture_probe(m, rs);
    run.results["conjecture"] = {{"hypotheses", cp.hypotheses}, {"equality_somewhere", cp.equality_somewhere}, {"ratio_condition", cp.ratio_condition}};
    if (cp.witness()) run.findings.push_back({{"kind", "equality_without_ratio_condition"}, {"R", io::set_json(rs)}});
  }
}

void cmd_selftest(const Options&, Run& run) {
  json& r = run.results;
  auto check = [&](const std::string& name, bool ok) {
    r[name] = ok;
    run.expect(ok, "selftest " + name + " failed");
  };
  GorensteinRing k23(graphic(fixtures::k23()));
  MobiusPairing mp = mobius_pairing(k23, 2);
  check("k23_pairing", mp.flats.size() == 15 && mp.inertia == Inertia{6, 6, 3});
  std::map<Set, QRat> xi{{make_set({0, 2}), 1}, {make_set({3, 4}), 1}, {make_set({0, 4}), -1}, {make_set({2, 3}), -1}};
  check("five_column_annihilator", annihilates(linear(fixtures::five_column_matrix()), xi));
  bool hess = true;
  for (int n = 3; n <= 8; ++n) {
    MPoly f = basis_generating_poly(uniform(2, n));
    for (const auto& a : default_sample_points(n)) hess = hess && inertia(hessian_at(f, a)) == Inertia{1, std::size_t(n - 1), 0};
  }
  check("rank_two_hessians", hess);
  QMatrix a{{2, 1}, {1, 2}}, b{{1, 0}, {0, 3}};
  check("discriminant_routes", mixed_discriminant_perm({a, b}) == mixed_discriminant_polar({a, b}) &&
                                   mixed_discriminant_perm({a, b}) ==
                                       mixed_discriminant_gram({psd_decompose(a).columns(), psd_decompose(b).columns()}) &&
                                   mixed_discriminant_perm({a, a}) == det(a));
  MarkedPoset w = normalize(fixtures::doubling_witness());
  Counts N = kahn_saks_sequence(w);
  ExtremalVerdict v = kahn_saks_extremal_classify(w, fixtures::kDoublingIndex, N);
  check("doubling_witness", v.doubling && v.doubling_conditions[0] && v.doubling_conditions[1] && v.doubling_conditions[2] && v.doubling_conditions[3]);
  MasonReport mr = mason_sequence(uniform(2, 3));
  check("mason_u23", mr.identity_holds && mr.log_concave);
  Matroid tripled = parallel_replicate(uniform(2, 3), {3, 3, 3});
  RatioVerdict rv = ratio_condition_check(tripled, make_set({0, 3, 6}));
  check("ratio_theorem", rv.holds && rv.sequence_matches);
  bool pal = true;
  for (const auto& [name, m] : fixtures::small_zoo()) {
    auto d = graded_dims(m);
    for (std::size_t i = 0; i < d.size(); ++i) pal = pal && d[i] == d[d.size() - 1 - i];
  }
  check("palindromic_dims", pal);
}

void write_csv(std::ostream& os, const json& report) {
  json flat = report.flatten();
  os << "path,value\n";
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    std::string v = it->is_string() ? it->get<std::string>() : it->dump();
    if (v.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      v = q + "\"";
    }
    os << it.key() << "," << v << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact log-concavity workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--out,--report", o.out, "Write the report to FILE");
    s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--cap-extensions", o.cap_extensions, "Maximum linear extensions");
    s->add_option("--cap-elements", o.cap_elements, "Maximum ground set size")->check(CLI::PositiveNumber);
  };
  auto matroid_opts = [&](CLI::App* s) {
    s->add_option("--matroid", o.matroid, "Matroid JSON file");
    s->add_option("--graph", o.graph, "Graph JSON file");
  };
  auto poset_opts = [&](CLI::App* s) {
    s->add_option("--poset", o.poset, "Poset JSON file");
    s->add_option("--x", o.x, "Label of x");
    s->add_option("--y", o.y, "Label of y");
  };

  struct Sub {
    CLI::App* app;
    void (*fn)(const Options&, Run&);
  };
  std::vector<Sub> subs;
  auto add = [&](const char* name, const char* help, void (*fn)(const Options&, Run&)) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    subs.push_back({s, fn});
    return s;
  };

  auto* s_poset = add("poset", "Linear extensions and Stanley sequences", cmd_poset);
  poset_opts(s_poset);
  auto* s_matroid = add("matroid", "Matroid structure summary", cmd_matroid);
  matroid_opts(s_matroid);
  auto* s_stanley = add("stanley", "Stanley sequence of a matroid split", cmd_stanley);
  matroid_opts(s_stanley);
  s_stanley->add_option("--R", o.r_csv, "Elements of R, 1-based CSV")->required();
  auto* s_ks = add("kahnsaks", "Kahn-Saks sequence and equality cases", cmd_kahnsaks);
  poset_opts(s_ks);
  auto* s_lor = add("lorentzian", "Lorentzian check", cmd_lorentzian);
  matroid_opts(s_lor);
  s_lor->add_option("--poly", o.poly, "Polynomial JSON file");
  s_lor->add_option("--R", o.r_csv, "Split for the g polynomial, 1-based CSV");
  auto* s_disc = add("discriminant", "Mixed discriminants by three routes", cmd_discriminant);
  s_disc->add_option("--matrices", o.matrices, "Named matrices JSON file");
  s_disc->add_option("--tuple", o.tuple, "Tuple such as \"A^[2],B\"");
  auto* s_hodge = add("hodge", "Gorenstein ring dimensions, HL and HRR", cmd_hodge);
  matroid_opts(s_hodge);
  s_hodge->add_option("--k", o.k, "Degree")->check(CLI::NonNegativeNumber);
  s_hodge->add_option("--point", o.point, "Point a as CSV of rationals");
  auto* s_probe = add("probe", "Open-question probes and facet scan", cmd_probe);
  matroid_opts(s_probe);
  s_probe->add_option("--element", o.element, "Elements to probe, 1-based CSV");
  s_probe->add_option("--R", o.r_csv, "Split for the equality probe, 1-based CSV");
  add("selftest", "Run the pinned fixtures", cmd_selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (const auto& sub : subs) {
    if (!sub.app->parsed()) continue;
    Run run;
    try {
      sub.fn(o, run);
    } catch (const error& e) {
      std::cerr << "logcavity: " << e.what() << "\n";
      return 1;
    } catch (const json::exception& e) {
      std::cerr << "logcavity: MalformedInput: " << e.what() << "\n";
      return 1;
    } catch (const invariant_violation& e) {
      run.violations.push_back(e.what());
    }
    json report = {{"schema", kSchema},     {"version", kVersion},       {"command", sub.app->get_name()},
                   {"inputs", run.inputs},  {"results", run.results},    {"findings", run.findings},
                   {"violations", run.violations}};
    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) {
        std::cerr << "logcavity: cannot write " << o.out << "\n";
        return 1;
      }
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    if (o.format == "csv") write_csv(os, report);
    else os << report.dump(2) << "\n";
    for (const auto& v : run.violations) std::cerr << "logcavity: violation: " << v << "\n";
    return run.violations.empty() ? 0 : 2;
  }
  return 1;
}
