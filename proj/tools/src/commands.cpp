#include "drk/cli/commands.hpp"

#include <sstream>

#include "drk/errors.hpp"
#include "drk/finiteness.hpp"
#include "drk/ktheory.hpp"

#ifndef DRK_VERSION
#define DRK_VERSION "0.0.0"
#endif

namespace drk::cli {
namespace {

// -- JSON helpers -----------------------------------------------------------

Json vector_json(std::span<const Integer> v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(integer_json(z));
  return out;
}

Json rational_vector_json(const RationalVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

Json matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i)));
  return out;
}

// Column-list form: one entry per generator.
Json columns_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(vector_json(m.column(j)));
  return out;
}

Json checks_json(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"passed", c.passed}});
  return out;
}

Json group_json(const FgAbGroup& g) {
  Json torsion = Json::array();
  for (const auto& t : g.torsion()) torsion.push_back(integer_json(t));
  return Json{{"type", g.describe()}, {"free_rank", g.free_rank()}, {"torsion", torsion}};
}

Json subset_json(const Subset& s, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (auto x : s.members()) out.push_back(labels[x]);
  return out;
}

Json report_json(const K0Data& data, const std::vector<std::string>& labels) {
  const K0Report r = report_k0(data);
  Json gens = Json::array();
  for (const auto& g : r.coker_generators)
    gens.push_back(Json{{"combination", vector_json(g.combination)}, {"order", integer_json(g.order)}});
  Json classes = Json::object();
  for (std::size_t x = 0; x < r.indicator_classes.size(); ++x)
    classes[labels.at(x)] = vector_json(r.indicator_classes[x]);
  Json ker = Json::array();
  for (const auto& v : r.ker_basis) ker.push_back(vector_json(v));
  return Json{{"k0", group_json(data.k0)},
              {"coker", group_json(data.coker_part)},
              {"ker", group_json(data.ker_part)},
              {"coker_generators", gens},
              {"indicator_classes", classes},
              {"ker_basis", ker},
              {"j_lift", matrix_json(data.j.lift())},
              {"tau_lift", matrix_json(data.tau.lift())},
              {"checks", checks_json(r.checks)},
              {"verified", data.verified()}};
}

Json witness_json(const MatrixConditionResult& m) {
  Json out{{"holds", m.holds}, {"method", to_string(m.method)}};
  if (m.coefficient_bound) out["coefficient_bound"] = *m.coefficient_bound;
  if (m.witness) {
    out["witness"] = Json{{"v", vector_json(m.witness->v)},
                          {"f", vector_json(m.witness->f)},
                          {"g", vector_json(m.witness->g)},
                          {"reverified", true}};
  } else {
    out["witness"] = nullptr;
  }
  if (m.rational_witness)
    out["rational_witness"] = Json{{"vector", rational_vector_json(m.rational_witness->vector)},
                                   {"coefficients", rational_vector_json(m.rational_witness->coefficients)}};
  return out;
}

// -- human helpers ----------------------------------------------------------

std::string num(const Integer& z) {
  std::string s = z.get_str();
  if (!s.empty() && s[0] == '-') s = "\u2212" + s.substr(1);
  return s;
}

std::string tuple(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s + ")";
}

std::string unicode_group(const FgAbGroup& g) { return g.describe(true); }

std::string check_summary(const std::vector<Check>& checks) {
  std::size_t ok = 0;
  for (const auto& c : checks) ok += c.passed ? 1 : 0;
  return std::to_string(ok) + "/" + std::to_string(checks.size()) + " machine checks passed";
}

std::string names(const Subset& s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (auto x : s.members()) {
    out += (first ? "" : ", ") + labels[x];
    first = false;
  }
  return out + "}";
}

std::string model_line(const ModelDocument& doc) {
  return "model: " + to_string(doc.model_type) + ", " + std::to_string(doc.labels.size()) + " point(s)";
}

void render_report(std::ostream& os, const K0Data& data, const std::vector<std::string>& labels,
                   const std::string& indent) {
  const K0Report r = report_k0(data);
  os << indent << "K\u2080 \u2245 " << unicode_group(data.k0) << "\n";
  os << indent << "  0 \u2192 coker(1\u2212m\u2081 | 1\u2212m\u2082) \u2245 " << unicode_group(data.coker_part)
     << " \u2192 K\u2080 \u2192 ker(1\u2212m\u2081 ; 1\u2212m\u2082) \u2245 " << unicode_group(data.ker_part)
     << " \u2192 0  (natural split exact sequence for K\u2080 of a rank-2 Deaconu\u2013Renault groupoid)\n";
  for (std::size_t k = 0; k < r.coker_generators.size(); ++k) {
    const auto& g = r.coker_generators[k];
    os << indent << "  coker generator g" << k + 1 << " = ";
    bool first = true;
    for (std::size_t x = 0; x < g.combination.size(); ++x) {
      if (sgn(g.combination[x]) == 0) continue;
      os << (first ? "" : " + ") << num(g.combination[x]) << "\u00b7[" << labels[x] << "]";
      first = false;
    }
    if (first) os << "0";
    os << ", order " << (sgn(g.order) == 0 ? std::string("\u221e") : num(g.order)) << "\n";
  }
  if (!r.coker_generators.empty())
    for (std::size_t x = 0; x < r.indicator_classes.size(); ++x)
      os << indent << "  [" << labels[x] << "] = " << tuple(r.indicator_classes[x]) << "\n";
  for (std::size_t k = 0; k < r.ker_basis.size(); ++k)
    os << indent << "  kernel basis vector " << k + 1 << " = " << tuple(r.ker_basis[k]) << "\n";
  os << indent << "  " << check_summary(r.checks) << "\n";
}

std::string witness_sentence(const MatrixConditionResult& m) {
  if (m.holds) {
    if (m.method == ConditionMethod::BruteForce)
      return "no witness with coefficients in [\u2212" + std::to_string(*m.coefficient_bound) + ", " +
             std::to_string(*m.coefficient_bound) + "]";
    return "holds: the image of (1\u2212m\u2081 | 1\u2212m\u2082) meets \u2115\u207f only in 0";
  }
  return "fails, witness (f,g)=(" + (m.witness->f.size() == 1 ? num(m.witness->f[0]) : tuple(m.witness->f)) + "," +
         (m.witness->g.size() == 1 ? num(m.witness->g[0]) : tuple(m.witness->g)) + "), v = " + tuple(m.witness->v) +
         " \u2265 0 (re-verified by direct arithmetic)";
}

// -- commands ---------------------------------------------------------------

CommandOutput cmd_k0(const ModelDocument& doc) {
  const K0Data data = k0_of_system(doc.system);
  std::ostringstream os;
  os << model_line(doc) << "\n";
  render_report(os, data, doc.labels, "");
  return {Json{{"k0_report", report_json(data, doc.labels)}}, os.str()};
}

CommandOutput cmd_ideal(const ModelDocument& doc) {
  if (!doc.invariant_subset) throw DocumentError("/invariant_subset", "required by the ideal command");
  const Subset& w = *doc.invariant_subset;
  const SesMorphism s = ideal_morphism(doc.system, w);
  std::vector<std::string> sub_labels;
  for (auto x : w.members()) sub_labels.push_back(doc.labels[x]);

  Json results{{"invariant_subset", subset_json(w, doc.labels)},
               {"top_row", report_json(s.top, sub_labels)},
               {"bottom_row", report_json(s.bottom, doc.labels)},
               {"v_left_lift", matrix_json(s.v_left.lift())},
               {"v_mid_lift", matrix_json(s.v_mid.lift())},
               {"v_right_lift", matrix_json(s.v_right.lift())},
               {"v_left_injective", s.v_left_injective},
               {"checks", checks_json(s.checks)},
               {"verified", s.verified()}};

  std::ostringstream os;
  os << model_line(doc) << "\n";
  os << "invariant subset H = " << names(w, doc.labels) << "\n";
  os << "top row (restriction to H):\n";
  render_report(os, s.top, sub_labels, "  ");
  os << "bottom row (whole system):\n";
  render_report(os, s.bottom, doc.labels, "  ");
  os << "vertical maps induced by the inclusion \u2124^H \u2192 \u2124^n:\n";
  os << "  v_left : " << unicode_group(s.top.coker_part) << " \u2192 " << unicode_group(s.bottom.coker_part)
     << (s.v_left_injective ? " (injective)" : " (not injective)") << "\n";
  os << "  v_mid  : " << unicode_group(s.top.k0) << " \u2192 " << unicode_group(s.bottom.k0) << "\n";
  os << "  v_right: " << unicode_group(s.top.ker_part) << " \u2192 " << unicode_group(s.bottom.ker_part)
     << " (injective)\n";
  os << "diagram commutes and has exact rows (morphism of the natural exact sequences induced by an invariant "
        "subset): "
     << check_summary(s.checks) << "\n";
  return {results, os.str()};
}

CommandOutput cmd_condition_m(const ModelDocument& doc, const CommandOptions& opt) {
  const MatrixConditionResult lp = condition_m(doc.system);
  Json results{{"condition_m", witness_json(lp)}};
  std::ostringstream os;
  os << model_line(doc) << "\n";
  os << "(M) " << witness_sentence(lp) << "\n";
  if (opt.brute_force) {
    BruteForceOptions bf;
    bf.coefficient_bound = opt.brute_force_bound;
    bf.threads = opt.threads;
    const MatrixConditionResult b = condition_m_bruteforce(doc.system, bf);
    // A brute-force witness is a proof that (M) fails; the exact route must agree.
    const bool agree = b.holds || !lp.holds;
    if (!agree) throw InternalConsistencyError("condition-m: brute force found a witness but the LP route says (M) holds");
    results["brute_force"] = witness_json(b);
    results["agreement"] = agree;
    os << "brute-force cross-check (bound " << opt.brute_force_bound << "): "
       << (b.holds ? witness_sentence(b) : "fails, witness v = " + tuple(b.witness->v)) << "; agreement: yes\n";
  }
  return {results, os.str()};
}

CommandOutput cmd_coboundary(const ModelDocument& doc, const CommandOptions& opt) {
  if (!doc.finite_map) throw NotApplicableError("coboundary: only defined for finite_map models");
  const CoboundaryComparison c = compare_coboundary_with_matrix_image(*doc.finite_map, opt.k_bound);
  const CoboundaryLattice& cl = c.coboundary;
  Json gens = Json::array();
  for (const auto& g : cl.generator_log)
    gens.push_back(Json{{"bisection", g.descriptor(doc.labels)}, {"vector", vector_json(g.vector)}});
  Json results{{"exponent_bound", cl.exponent_bound},
               {"stabilization_bound", integer_json(cl.stabilization_bound)},
               {"possibly_incomplete", cl.possibly_incomplete},
               {"generators", gens},
               {"coboundary_basis", columns_json(cl.lattice.basis())},
               {"matrix_image_basis", columns_json(c.matrix_image.basis())},
               {"equal", c.equal}};

  std::ostringstream os;
  os << model_line(doc) << "\n";
  os << "coboundary subgroup H_G from singleton bisections Z({x}, k, 0, {T^k x}), 0 \u2264 k\u2081, k\u2082 \u2264 "
     << cl.exponent_bound << " (lcm of orbit lengths = " << num(cl.stabilization_bound) << ")\n";
  for (const auto& g : cl.generator_log)
    os << "  " << g.descriptor(doc.labels) << " \u21a6 " << tuple(g.vector) << "\n";
  auto basis_line = [&](const HermiteLattice& l) {
    if (l.rank() == 0) return std::string("0");
    std::string s = "span{";
    for (std::size_t j = 0; j < l.rank(); ++j) s += (j ? ", " : "") + tuple(l.basis().column(j));
    return s + "}";
  };
  os << "H_G = " << basis_line(cl.lattice) << "\n";
  os << "image of (1\u2212m\u2081 | 1\u2212m\u2082) = " << basis_line(c.matrix_image) << "\n";
  if (c.equal)
    os << "H_G = matrix image: equality verified, hence (C) \u21d4 (M) for this model\n";
  else
    os << "H_G \u2260 matrix image" << (cl.possibly_incomplete ? " (exponent bound below the lcm; H_G may be incomplete)" : "")
       << "\n";
  return {results, os.str()};
}

CommandOutput cmd_verdict(const ModelDocument& doc, const CommandOptions& opt) {
  AssumptionMap a = doc.assumptions;
  if (opt.assume_positivity) a.positivity = Assumption::Assume;
  if (opt.assume_ideal_sf) a.ideal_sf = Assumption::Assume;
  if (opt.assume_quotient_sf) a.quotient_sf = Assumption::Assume;
  const Subset w = doc.invariant_subset.value_or(Subset::empty(doc.system.size()));
  const Verdict v = sf_verdict(doc.system, w, a);

  Json checked = Json::array();
  for (const auto& c : v.checked)
    checked.push_back(Json{{"condition", c.condition}, {"status", to_string(c.status)}, {"detail", c.detail}});
  Json results{{"conclusion", to_string(v.conclusion)},
               {"route", v.route},
               {"invariant_subset", subset_json(w, doc.labels)},
               {"assumptions",
                Json{{"P", to_string(a.positivity)},
                     {"ideal_sf", to_string(a.ideal_sf)},
                     {"quotient_sf", to_string(a.quotient_sf)}}},
               {"checked", checked},
               {"narrative", v.narrative},
               {"m_global", v.m_global},
               {"m_ideal", v.m_ideal ? Json(*v.m_ideal) : Json(nullptr)}};

  std::ostringstream os;
  os << model_line(doc) << "\n";
  os << "verdict: " << to_string(v.conclusion) << " (route: " << v.route << ")\n";
  for (const auto& c : v.checked) os << "  [" << to_string(c.status) << "] " << c.condition << ": " << c.detail << "\n";
  for (const auto& n : v.narrative) os << "  - " << n << "\n";
  return {results, os.str()};
}

CommandOutput cmd_invariants(const ModelDocument& doc, const CommandOptions& opt) {
  const bool model_level = doc.finite_map.has_value();
  const auto subsets = model_level ? enumerate_invariant_subsets(*doc.finite_map, opt.max_enum)
                                   : enumerate_invariant_subsets(doc.system, opt.max_enum);
  Json list = Json::array();
  std::ostringstream os;
  os << model_line(doc) << "\n";
  os << subsets.size() << " invariant subset(s)"
     << (model_level ? " (closed under images and preimages of t1, t2)"
                     : " (coordinate sublattices preserved by m1, m2)")
     << ":\n";
  for (const auto& s : subsets) {
    list.push_back(Json{{"members", subset_json(s.subset, doc.labels)}, {"trivial", s.subset.is_trivial()}});
    os << "  " << names(s.subset, doc.labels) << (s.subset.is_trivial() ? "  (trivial)" : "") << "\n";
  }
  Json results{{"level", model_level ? "finite_map" : "matrix"}, {"count", subsets.size()}, {"subsets", list}};
  return {results, os.str()};
}

}  // namespace

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

std::string to_string(Command c) {
  switch (c) {
    case Command::K0: return "k0";
    case Command::Ideal: return "ideal";
    case Command::ConditionM: return "condition-m";
    case Command::Coboundary: return "coboundary";
    case Command::Verdict: return "verdict";
    case Command::Invariants: return "invariants";
  }
  return "k0";
}

std::optional<Command> command_from_string(const std::string& s) {
  for (auto c : {Command::K0, Command::Ideal, Command::ConditionM, Command::Coboundary, Command::Verdict,
                 Command::Invariants})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

CommandOutput run_command(Command command, const ModelDocument& doc, const CommandOptions& options) {
  switch (command) {
    case Command::K0: return cmd_k0(doc);
    case Command::Ideal: return cmd_ideal(doc);
    case Command::ConditionM: return cmd_condition_m(doc, options);
    case Command::Coboundary: return cmd_coboundary(doc, options);
    case Command::Verdict: return cmd_verdict(doc, options);
    case Command::Invariants: return cmd_invariants(doc, options);
  }
  throw InputError("unknown command");
}

Json result_document(Command command, const ModelDocument& doc, const CommandOptions& options,
                     const CommandOutput& output) {
  Json opts = Json::object();
  switch (command) {
    case Command::ConditionM:
      opts["brute_force"] = options.brute_force;
      if (options.brute_force) opts["brute_force_bound"] = options.brute_force_bound;
      break;
    case Command::Coboundary:
      opts["k_bound"] = options.k_bound ? Json(*options.k_bound) : Json(nullptr);
      break;
    case Command::Verdict:
      opts["assume"] = Json{{"P", options.assume_positivity},
                            {"ideal_sf", options.assume_ideal_sf},
                            {"quotient_sf", options.assume_quotient_sf}};
      break;
    case Command::Invariants:
      opts["max_enum"] = options.max_enum;
      break;
    default:
      break;
  }
  return Json{{"tool", "drk"},
              {"version", DRK_VERSION},
              {"command", to_string(command)},
              {"input",
               Json{{"sha256", doc.digest},
                    {"model_type", to_string(doc.model_type)},
                    {"size", doc.labels.size()},
                    {"labels", doc.labels},
                    {"m1", matrix_json(doc.system.m1())},
                    {"m2", matrix_json(doc.system.m2())}}},
              {"options", opts},
              {"results", output.results}};
}

std::string render_machine(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace drk::cli
