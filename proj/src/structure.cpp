#include "iqgt/structure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "iqgt/casimir.hpp"

namespace iqgt {

bool Region::contains(const Ket& k) const {
  return std::any_of(clauses_.begin(), clauses_.end(), [&](const Clause& clause) {
    return std::all_of(clause.begin(), clause.end(), [&](const Constraint& c) { return c.holds(k); });
  });
}

Region operator|(const Region& x, const Region& y) {
  std::vector<Region::Clause> out = x.clauses_;
  for (const auto& c : y.clauses_) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return Region(std::move(out));
}

Region operator&(const Region& x, const Region& y) {
  std::vector<Region::Clause> out;
  for (const auto& cx : x.clauses_) {
    for (const auto& cy : y.clauses_) {
      Region::Clause merged = cx;
      for (const auto& c : cy) {
        if (std::find(merged.begin(), merged.end(), c) == merged.end()) merged.push_back(c);
      }
      out.push_back(std::move(merged));
    }
  }
  return Region(std::move(out));
}

namespace {

nlohmann::ordered_json clause_json(const Region::Clause& clause) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& c : clause) out.push_back({{"a", c.a}, {"b", c.b}, {"c", c.c}});
  return out;
}

std::string linear_text(int a, int b) {
  std::string out;
  auto term = [&](int coeff, const char* var) {
    if (coeff == 0) return;
    if (!out.empty()) out += coeff > 0 ? " + " : " - ";
    else if (coeff < 0) out += "-";
    int mag = coeff < 0 ? -coeff : coeff;
    if (mag != 1) out += std::to_string(mag) + "*";
    out += var;
  };
  term(a, "k_l");
  term(b, "k_m");
  return out.empty() ? "0" : out;
}

std::string constraint_text(const Constraint& c) { return linear_text(c.a, c.b) + " <= " + std::to_string(c.c); }

std::string clause_text(const Region::Clause& clause) {
  if (clause.empty()) return "all kets";
  std::string out;
  for (const auto& c : clause) {
    if (!out.empty()) out += " and ";
    out += clause.size() > 1 ? "(" + constraint_text(c) + ")" : constraint_text(c);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json Region::to_json() const {
  nlohmann::ordered_json j;
  if (clauses_.size() == 1) {
    j["constraints"] = clause_json(clauses_.front());
    return j;
  }
  auto any = nlohmann::ordered_json::array();
  for (const auto& c : clauses_) any.push_back(clause_json(c));
  j["any_of"] = std::move(any);
  return j;
}

std::string Region::to_string(int /*rank*/) const {
  if (clauses_.empty()) return "no kets";
  if (clauses_.size() == 1) return clause_text(clauses_.front());
  std::string out;
  for (const auto& c : clauses_) {
    if (!out.empty()) out += " or ";
    out += "[" + clause_text(c) + "]";
  }
  return out;
}

namespace {

std::optional<int> small_offset(const std::optional<std::int64_t>& k) {
  if (!k) return std::nullopt;
  if (*k > 1'000'000 || *k < -1'000'000) throw std::out_of_range("singular offset out of range");
  return static_cast<int>(*k);
}

std::optional<int> integer_value(const ExponentForm& e) {
  if (!e.is_constant() || !e.constant().is_integer()) return std::nullopt;
  return small_offset(e.constant().num());
}

}  // namespace

AnalysisReport analyze3(const ParamValue& ell, const ParamValue& m0) {
  ModuleSpec spec = ModuleSpec::so3(ell, m0);
  AnalysisReport report;
  report.rank = 3;
  report.params = spec.named_params();
  report.hypotheses = check_hypotheses(spec);
  report.analyzed = true;

  ExponentForm l = ell.form(symbols::ell());
  ExponentForm m = m0.form(symbols::m0());
  // m = m0 + k; [l+m+1] = 0 and [l-m] = 0 each pin down at most one k.
  std::map<int, std::vector<std::string>> hits;
  if (auto k = small_offset(solve_qpow_one(l + m + ExponentForm(1), Rational(1)))) hits[*k].push_back("[l+m+1]=0");
  if (auto k = small_offset(solve_qpow_one(l - m, Rational(-1)))) hits[*k].push_back("[l-m]=0");

  for (const auto& [k, conds] : hits) {
    for (const auto& cond : conds) report.S.push_back({cond, m + ExponentForm(k), k, std::nullopt});
    std::string name = "Uq|" + (m + ExponentForm(k)).to_string() + ">";
    report.series.push_back({name, Region::where({{0, 1, k}}), {Ket{0, k}}});
  }
  report.irreducible = report.series.empty();
  report.length = static_cast<int>(report.series.size()) + 1;
  report.paper_explicit = true;
  return report;
}

AnalysisReport analyze4(const ParamValue& p, const ParamValue& r, const ParamValue& l0, const ParamValue& m0) {
  ModuleSpec spec = ModuleSpec::so4(p, r, l0, m0);
  AnalysisReport report;
  report.rank = 4;
  report.params = spec.named_params();
  report.hypotheses = check_hypotheses(spec);
  if (!report.hypotheses.passed()) {
    report.note = "finite-length hypotheses fail; submodules need not be spanned by kets, so no analysis is attempted";
    return report;
  }
  report.analyzed = true;

  ExponentForm pf = spec.p_form(), rf = spec.r_form();
  ExponentForm lf = l0.form(symbols::l0()), mf = m0.form(symbols::m0());
  ExponentForm one(1), two(2);

  // l = l0 + k; raising l is blocked where one of these vanishes.
  struct Condition {
    const char* text;
    ExponentForm base;
    Rational step;
  };
  const Condition conditions[4] = {
      {"[p+l+2]=0", pf + lf + two, Rational(1)},
      {"[p-l]=0", pf - lf, Rational(-1)},
      {"[l+r+1]=0", lf + rf + one, Rational(1)},
      {"[l-r+1]=0", lf - rf + one, Rational(1)},
  };
  std::optional<int> sol[4];
  for (int i = 0; i < 4; ++i) sol[i] = small_offset(solve_qpow_one(conditions[i].base, conditions[i].step));
  if ((sol[0] && sol[1]) || (sol[2] && sol[3])) {
    throw std::logic_error("analyze4: paired l-conditions both vanish despite the hypotheses");
  }
  std::map<int, std::vector<std::string>, std::greater<>> levels;
  for (int i = 0; i < 4; ++i) {
    if (sol[i]) levels[*sol[i]].push_back(conditions[i].text);
  }
  std::vector<int> ks;  // k(l_1) > k(l_2)
  for (const auto& [k, conds] : levels) {
    ks.push_back(k);
    std::string joined;
    for (const auto& c : conds) joined += (joined.empty() ? "" : ", ") + c;
    report.R.push_back({joined, lf + ExponentForm(k), k, std::nullopt});
  }

  // Diagonal [l-m]=0 (Case 2) or anti-diagonal [l+m+1]=0 (Case 3).
  std::optional<int> d = integer_value(lf - mf);
  std::optional<int> d_anti;
  if (auto s = integer_value(lf + mf + one)) d_anti = -*s;
  if (d && d_anti) throw std::logic_error("analyze4: both diagonal conditions hold despite the hypotheses");

  std::vector<Region> m_regions;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    m_regions.push_back(Region::where({{1, 0, ks[j]}}));
    report.components.push_back({"M" + std::to_string(j + 1), m_regions.back()});
  }

  if (!d && !d_anti) {
    for (std::size_t j = ks.size(); j-- > 0;) {
      report.series.push_back({"M" + std::to_string(j + 1), m_regions[j], {Ket{ks[j], 0}}});
    }
    report.case_tag = report.series.empty() ? "Irreducible" : "Case1";
  } else {
    bool diag = d.has_value();
    std::string base = diag ? "U" : "W";
    Constraint line = diag ? Constraint{-1, 1, *d} : Constraint{1, 1, *d_anti};
    report.S.push_back({diag ? "[l-m]=0" : "[l+m+1]=0", std::nullopt, std::nullopt, line});
    Region D = Region::where({line});
    report.components.push_back({base, D});
    auto on_line = [&](int level) { return diag ? Ket{level, *d + level} : Ket{level, *d_anti - level}; };
    int top = ks.empty() ? 0 : ks.front() + 1;
    for (std::size_t j = ks.size(); j-- > 0;) {
      report.series.push_back({base + std::to_string(j + 1) + "'", D & m_regions[j], {on_line(ks[j])}});
    }
    report.series.push_back({base, D, {on_line(top)}});
    for (std::size_t j = ks.size(); j-- > 0;) {
      Ket above = on_line(ks[j]);
      ++above.k_m;
      report.series.push_back({base + std::to_string(j + 1), D | m_regions[j], {on_line(top), above}});
    }
    report.case_tag = diag ? "Case2" : "Case3";
  }
  report.irreducible = report.series.empty();
  report.length = static_cast<int>(report.series.size()) + 1;
  report.paper_explicit = report.irreducible || ks.size() == 2;
  if (!report.paper_explicit) report.note = "series obtained by the argument for two distinct elements of R";
  return report;
}

AnalysisReport analyze(const ModuleSpec& spec) {
  if (spec.kind != ModuleKind::Generic) throw InvalidSpecError("structure analysis applies to generic modules");
  if (spec.rank == 3) return analyze3(spec.ell, spec.m0);
  return analyze4(spec.p, spec.r, spec.l0, spec.m0);
}

ModuleSpec report_spec(const AnalysisReport& report) {
  auto get = [&](const std::string& name) {
    for (const auto& [n, v] : report.params) {
      if (n == name) return v;
    }
    throw std::invalid_argument("report has no parameter " + name);
  };
  if (report.rank == 3) return ModuleSpec::so3(get("l"), get("m0"));
  return ModuleSpec::so4(get("p"), get("r"), get("l0"), get("m0"));
}

namespace {

nlohmann::ordered_json kets_json(int rank, const std::vector<Ket>& kets) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& k : kets) out.push_back(ket_json(rank, k));
  return out;
}

nlohmann::ordered_json singular_json(const SingularEntry& e, bool is_l) {
  nlohmann::ordered_json j;
  j["condition"] = e.condition;
  if (e.value) j[is_l ? "l" : "m"] = e.value->to_string();
  if (e.offset) j[is_l ? "k_l" : "k_m"] = *e.offset;
  if (e.line) j["line"] = {{"a", e.line->a}, {"b", e.line->b}, {"c", e.line->c}};
  return j;
}

}  // namespace

nlohmann::ordered_json to_json(const AnalysisReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["n"] = report.rank;
  json params = json::object();
  for (const auto& [name, value] : report.params) params[name] = value.to_string();
  j["params"] = std::move(params);
  j["hypotheses"] = to_json(report.hypotheses);
  j["analyzed"] = report.analyzed;
  j["irreducible"] = report.analyzed ? json(report.irreducible) : json();
  j["length"] = report.length ? json(*report.length) : json();
  j["case"] = report.case_tag.empty() ? json() : json(report.case_tag);
  json sets;
  sets["S"] = json::array();
  for (const auto& e : report.S) sets["S"].push_back(singular_json(e, false));
  if (report.rank == 4) {
    sets["R"] = json::array();
    for (const auto& e : report.R) sets["R"].push_back(singular_json(e, true));
  }
  j["singular_sets"] = std::move(sets);
  j["series"] = json::array();
  for (const auto& layer : report.series) {
    json entry;
    entry["name"] = layer.name;
    entry.update(layer.region.to_json());
    entry["generators"] = kets_json(report.rank, layer.generators);
    j["series"].push_back(std::move(entry));
  }
  j["components"] = json::array();
  for (const auto& [name, region] : report.components) {
    json entry;
    entry["name"] = name;
    entry.update(region.to_json());
    j["components"].push_back(std::move(entry));
  }
  j["paper_explicit"] = report.paper_explicit;
  if (!report.note.empty()) j["note"] = report.note;
  return j;
}

std::string to_text(const AnalysisReport& report) {
  std::ostringstream out;
  out << (report.rank == 3 ? "so3" : "so4") << " generic module";
  for (const auto& [name, value] : report.params) out << " " << name << "=" << value.to_string();
  out << "\nhypotheses:\n";
  for (const auto& item : report.hypotheses.items) {
    out << "  " << item.hypothesis << ": " << (item.satisfied ? "holds" : "fails");
    if (item.witness_k) out << " (k = " << *item.witness_k << ")";
    out << "\n";
  }
  if (!report.analyzed) {
    out << report.note << "\n";
    return out.str();
  }
  if (!report.case_tag.empty()) out << "case: " << report.case_tag << "\n";
  out << "irreducible: " << (report.irreducible ? "yes" : "no") << "\n";
  out << "length: " << *report.length << "\n";
  for (const auto& e : report.S) {
    out << "S: " << e.condition;
    if (e.value) out << " at m = " << e.value->to_string() << " (k_m = " << *e.offset << ")";
    if (e.line) out << " on the line " << linear_text(e.line->a, e.line->b) << " = " << e.line->c;
    out << "\n";
  }
  for (const auto& e : report.R) {
    out << "R: l = " << e.value->to_string() << " (k_l = " << *e.offset << "), " << e.condition << "\n";
  }
  out << "series: 0";
  for (const auto& layer : report.series) out << " < " << layer.name;
  out << " < V\n";
  for (const auto& layer : report.series) {
    out << "  " << layer.name << ": " << layer.region.to_string(report.rank) << "; generated by";
    for (const auto& k : layer.generators) out << " " << ket_string(report.rank, k);
    out << "\n";
  }
  if (!report.note.empty()) out << "note: " << report.note << "\n";
  return out.str();
}

std::vector<WeightComponent> weight_decompose(const ModuleSpec& spec, const ModVector& v) {
  std::vector<WeightComponent> out;
  for (const auto& [k, c] : v.terms()) {
    RatFunc i21 = act_ket(spec, Generator::I21, k).coeff(k);
    std::optional<RatFunc> cas;
    if (spec.rank == 4) cas = act_casimir(spec, ModVector(k)).coeff(k);
    auto same = [&](const WeightComponent& w) {
      return rf_equal(w.i21_eigenvalue, i21) && (!cas || rf_equal(*w.casimir_eigenvalue, *cas));
    };
    auto it = std::find_if(out.begin(), out.end(), same);
    if (it == out.end()) {
      out.push_back({i21, cas, ModVector(k, c)});
    } else {
      it->part.add(k, c);
    }
  }
  return out;
}

std::vector<Ket> box_kets(int rank, int K) {
  std::vector<Ket> out;
  int l_range = rank == 4 ? K : 0;
  for (int kl = -l_range; kl <= l_range; ++kl) {
    for (int km = -K; km <= K; ++km) out.push_back({kl, km});
  }
  return out;
}

namespace {

bool in_box(const Ket& k, int radius) {
  return std::abs(k.k_l) <= radius && std::abs(k.k_m) <= radius;
}

/// Nonzero-coefficient edges between kets of a box, computed on demand.
class EdgeGraph {
 public:
  EdgeGraph(const ModuleSpec& spec, int radius) : spec_(spec), radius_(radius) {}

  int radius() const { return radius_; }

  const std::vector<Ket>& targets(const Ket& u) {
    auto it = edges_.find(u);
    if (it != edges_.end()) return it->second;
    std::set<Ket> out;
    std::vector<Generator> gens{Generator::I21, Generator::I32};
    if (spec_.rank == 4) gens.push_back(Generator::I43);
    for (Generator g : gens) {
      ModVector image = act_ket(spec_, g, u);
      for (const auto& [w, c] : image.terms()) {
        if (w != u && in_box(w, radius_)) out.insert(w);
      }
    }
    return edges_.emplace(u, std::vector<Ket>(out.begin(), out.end())).first->second;
  }

  std::set<Ket> closure(const std::vector<Ket>& seeds) {
    std::set<Ket> seen;
    std::deque<Ket> todo;
    for (const auto& s : seeds) {
      if (in_box(s, radius_) && seen.insert(s).second) todo.push_back(s);
    }
    while (!todo.empty()) {
      Ket u = todo.front();
      todo.pop_front();
      for (const auto& w : targets(u)) {
        if (seen.insert(w).second) todo.push_back(w);
      }
    }
    return seen;
  }

 private:
  const ModuleSpec& spec_;
  int radius_;
  std::map<Ket, std::vector<Ket>> edges_;
};

std::set<Ket> cut(const std::set<Ket>& kets, int K) {
  std::set<Ket> out;
  for (const auto& k : kets) {
    if (in_box(k, K)) out.insert(k);
  }
  return out;
}

}  // namespace

std::set<Ket> closure_oracle(const ModuleSpec& spec, const std::vector<Ket>& seeds, int K, int margin) {
  if (K < 1 || margin < 1) throw std::invalid_argument("closure_oracle: window and margin must be at least 1");
  EdgeGraph graph(spec, K + margin);
  return cut(graph.closure(seeds), K);
}

int feature_radius(const AnalysisReport& report) {
  int radius = 1;
  for (const auto& layer : report.series) {
    for (const auto& k : layer.generators) radius = std::max({radius, std::abs(k.k_l) + 1, std::abs(k.k_m) + 1});
  }
  return radius;
}

SeriesCheck check_series(const ModuleSpec& spec, const AnalysisReport& report, int K, int margin) {
  SeriesCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.failures.push_back(std::move(msg));
  };
  if (!report.analyzed) {
    fail("report carries no analysis");
    return check;
  }
  if (int need = feature_radius(report); K < need) {
    fail("window " + std::to_string(K) + " is too small for this series; use at least " + std::to_string(need));
    return check;
  }
  EdgeGraph graph(spec, K + margin);
  const std::vector<Ket> window = box_kets(spec.rank, K);
  auto inside = [&](const Region& region) {
    std::set<Ket> out;
    for (const auto& k : window) {
      if (region.contains(k)) out.insert(k);
    }
    return out;
  };

  std::vector<SeriesLayer> layers = report.series;
  layers.push_back({"V", Region::everything(), {}});
  std::set<Ket> previous;
  std::string previous_name = "0";
  for (const auto& layer : layers) {
    std::set<Ket> members = inside(layer.region);
    if (!std::includes(members.begin(), members.end(), previous.begin(), previous.end()) ||
        members.size() == previous.size()) {
      fail(previous_name + " is not strictly inside " + layer.name + " within the window");
    }
    for (const auto& u : members) {
      for (const auto& w : graph.targets(u)) {
        if (in_box(w, K) && !members.count(w)) {
          fail(layer.name + " is not closed: " + ket_string(spec.rank, u) + " -> " + ket_string(spec.rank, w));
        }
      }
    }
    if (!layer.generators.empty()) {
      std::set<Ket> generated = cut(graph.closure(layer.generators), K);
      if (generated != members) fail(layer.name + " is not the submodule generated by its seeds");
    }
    for (const auto& x : members) {
      if (previous.count(x)) continue;
      std::set<Ket> reach = cut(graph.closure({x}), K);
      reach.insert(previous.begin(), previous.end());
      if (reach != members) {
        fail(layer.name + "/" + previous_name + " is not generated by " + ket_string(spec.rank, x));
        break;
      }
    }
    previous = std::move(members);
    previous_name = layer.name;
  }
  return check;
}

}  // namespace iqgt
