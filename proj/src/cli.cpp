#include "iqgt/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "iqgt/casimir.hpp"
#include "iqgt/gtpattern.hpp"

namespace iqgt {

using json = nlohmann::ordered_json;

int window_cap_from_env() {
  const char* text = std::getenv("IQGT_WINDOW_CAP");
  if (text == nullptr || *text == '\0') return kDefaultWindowCap;
  try {
    std::size_t used = 0;
    int cap = std::stoi(text, &used);
    if (used == std::string(text).size() && cap >= 1) return cap;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("IQGT_WINDOW_CAP must be a positive integer, got '") + text + "'");
}

std::vector<std::pair<std::string, std::string>> parse_params(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw UsageError("parameter '" + item + "' is not of the form name=value");
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("'" + text + "' is not a complex number");
    return v;
  };
  if (text.empty()) throw UsageError("empty complex number");
  if (text.back() != 'i') return {number(text), 0};
  std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t t = body.size(); t-- > 1;) {
    if ((body[t] == '+' || body[t] == '-') && body[t - 1] != 'e' && body[t - 1] != 'E') {
      split = t;
      break;
    }
  }
  auto imag = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return number(s);
  };
  if (split == std::string::npos) return {0, imag(body)};
  return {number(body.substr(0, split)), imag(body.substr(split))};
}

ModuleSpec spec_from_config(const CommandConfig& config) {
  if (config.n != 3 && config.n != 4) {
    throw UsageError("--n must be 3 or 4 for this command, got " + std::to_string(config.n));
  }
  std::vector<std::string> names = config.n == 3 ? std::vector<std::string>{"l", "m0"}
                                                 : std::vector<std::string>{"p", "r", "l0", "m0"};
  std::map<std::string, ParamValue> values;
  for (const auto& [name, value] : config.params) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      std::string allowed;
      for (const auto& x : names) allowed += (allowed.empty() ? "" : ", ") + x;
      throw UsageError("unknown parameter '" + name + "' for n=" + std::to_string(config.n) + " (expected " +
                       allowed + ")");
    }
    if (!values.emplace(name, ParamValue::parse(value)).second) {
      throw UsageError("parameter '" + name + "' given twice");
    }
  }
  auto get = [&](const std::string& name) {
    auto it = values.find(name);
    return it == values.end() ? ParamValue::symbolic() : it->second;
  };
  if (config.n == 3) return ModuleSpec::so3(get("l"), get("m0"), config.kind);
  return ModuleSpec::so4(get("p"), get("r"), get("l0"), get("m0"), config.kind);
}

namespace {

const char* kind_name(ModuleKind k) { return k == ModuleKind::Generic ? "generic" : "finite"; }

json params_json(const ModuleSpec& spec) {
  json out = json::object();
  for (const auto& [name, value] : spec.named_params()) out[name] = value.to_string();
  return out;
}

CommandResult failure(const CommandConfig& config, int code, const std::string& message, json extra = json::object()) {
  CommandResult r;
  r.exit_code = code;
  r.err = "iqgt: " + message + "\n";
  if (config.format == OutputFormat::Json) {
    json j;
    j["error"] = message;
    j.update(extra);
    r.out = j.dump(2) + "\n";
  }
  return r;
}

int checked_window(const CommandConfig& config, int fallback) {
  int K = config.window.value_or(fallback);
  if (K < 1) throw UsageError("--window must be positive");
  if (K > config.window_cap) {
    throw UsageError("window " + std::to_string(K) + " exceeds the cap " + std::to_string(config.window_cap) +
                     " (raise it with --window-cap or IQGT_WINDOW_CAP)");
  }
  return K;
}

/// Exit 2 with the first failing hypothesis, or nothing.
std::optional<CommandResult> hypothesis_failure(const CommandConfig& config, const HypothesisReport& h) {
  for (const auto& item : h.items) {
    if (item.satisfied) continue;
    std::string message = "hypothesis " + item.hypothesis + " fails";
    if (item.witness_k) message += " at k = " + std::to_string(*item.witness_k);
    return failure(config, kExitInvalid, message, json{{"hypotheses", to_json(h)}});
  }
  return std::nullopt;
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& items, const char* what) {
  std::vector<Rational> out;
  for (const auto& s : items) {
    try {
      out.push_back(Rational::parse(s));
    } catch (const std::invalid_argument&) {
      throw UsageError(std::string(what) + " entry '" + s + "' is not an exact rational");
    }
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string level_lines(const std::vector<LevelEigenvalue>& levels) {
  std::string out;
  for (const auto& e : levels) out += "    l=" + e.ell.to_string() + ": " + e.value.to_string() + "\n";
  return out;
}

std::string format_double(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

}  // namespace

CommandResult run_verify(const CommandConfig& config) {
  ModuleSpec spec = spec_from_config(config);
  int K = checked_window(config, spec.rank == 3 ? 3 : 2);
  json j;
  j["command"] = "verify";
  j["n"] = spec.rank;
  j["kind"] = kind_name(spec.kind);
  j["params"] = params_json(spec);
  j["window"] = K;
  if (spec.kind == ModuleKind::Generic) {
    HypothesisReport h = check_hypotheses(spec);
    if (auto fail = hypothesis_failure(config, h)) return *fail;
    j["hypotheses"] = to_json(h);
  }
  RelationReport relations;
  CasimirReport casimir;
  SPresentationReport s_pres;
  try {
    relations = verify_relations(spec, K);
    casimir = verify_casimir(spec, K);
    s_pres = verify_s_presentation(spec, K);
  } catch (const SingularParameterError& e) {
    return failure(config, kExitInvalid, std::string("singular parameters: ") + e.what());
  }
  bool ok = relations.all_zero() && casimir.central_ok && casimir.diagonal_ok && s_pres.relations_ok && s_pres.molev_ok;
  j["relations"] = {{"all_zero", relations.all_zero()}, {"checked", relations.entries.size()},
                    {"entries", to_json(relations)}};
  j["casimir"] = to_json(casimir);
  j["s_presentation"] = to_json(s_pres);
  j["ok"] = ok;

  std::ostringstream text;
  text << spec.describe() << ", window " << K << "\n";
  text << "relations: " << relations.entries.size() << " residuals, " << relations.failures() << " nonzero\n";
  for (const auto& e : relations.entries) {
    if (!e.residual_zero) {
      text << "  " << e.relation << " on " << ket_string(spec.rank, e.ket) << ": " << e.residual.to_string(spec.rank)
           << "\n";
    }
  }
  text << "casimir: commutes " << yes_no(casimir.central_ok) << ", diagonal " << yes_no(casimir.diagonal_ok) << "\n"
       << level_lines(casimir.eigenvalues);
  text << "s-presentation: relations " << yes_no(s_pres.relations_ok) << ", Molev element " << yes_no(s_pres.molev_ok)
       << "\n";
  for (const auto& f : casimir.failures) text << "  " << ket_string(spec.rank, f.ket) << ": " << f.witness << "\n";
  for (const auto& f : s_pres.failures) text << "  " << ket_string(spec.rank, f.ket) << ": " << f.witness << "\n";
  text << "result: " << (ok ? "verified" : "NONZERO RESIDUAL") << "\n";

  CommandResult r;
  r.exit_code = ok ? kExitOk : kExitMismatch;
  if (config.format == OutputFormat::Json) {
    r.out = j.dump(2) + "\n";
    r.err = "verify: " + std::string(ok ? "all residuals zero" : "nonzero residual") + "\n";
  } else {
    r.out = text.str();
  }
  return r;
}

namespace {

std::string series_summary(const AnalysisReport& report) {
  if (!report.analyzed) return "analyze: hypotheses fail";
  std::string out = "analyze: length " + std::to_string(*report.length);
  if (!report.case_tag.empty()) out += ", " + report.case_tag;
  return out;
}

json series_check_json(int K, const SeriesCheck& check) {
  return {{"window", K}, {"ok", check.ok}, {"failures", check.failures}};
}

}  // namespace

CommandResult run_analyze(const CommandConfig& config) {
  if (config.kind != ModuleKind::Generic) throw UsageError("analyze needs a generic module");
  ModuleSpec spec = spec_from_config(config);
  if (config.window) checked_window(config, 0);
  AnalysisReport report = analyze(spec);
  json j = to_json(report);
  std::string text = to_text(report);
  CommandResult r;
  if (!report.analyzed) {
    r.exit_code = kExitInvalid;
    for (const auto& item : report.hypotheses.items) {
      if (!item.satisfied) {
        r.err = "iqgt: hypothesis " + item.hypothesis + " fails";
        if (item.witness_k) r.err += " at k = " + std::to_string(*item.witness_k);
        r.err += "\n";
        break;
      }
    }
  } else if (config.check_oracle) {
    int K = checked_window(config, std::max(4, feature_radius(report)));
    SeriesCheck check = check_series(spec, report, K);
    j["oracle"] = series_check_json(K, check);
    text += "oracle (window " + std::to_string(K) + "): " + (check.ok ? "series confirmed" : "MISMATCH") + "\n";
    for (const auto& f : check.failures) text += "  " + f + "\n";
    if (!check.ok) r.exit_code = kExitMismatch;
  }
  if (config.format == OutputFormat::Json) {
    r.out = j.dump(2) + "\n";
    r.err += series_summary(report) + "\n";
  } else {
    r.out = text;
  }
  return r;
}

CommandResult run_pattern(const CommandConfig& config) {
  int modes = !config.tuple.empty() + !config.weight.empty() + config.pattern.has_value();
  if (modes != 1) throw UsageError("pattern needs exactly one of --tuple, --weight or --pattern");
  if (config.n < 2) throw UsageError("--n must be at least 2");
  CommandResult r;
  json j;
  j["command"] = "pattern";
  j["n"] = config.n;
  std::ostringstream text;
  if (!config.tuple.empty()) {
    GTPattern g = pattern_from_tuple(config.n, parse_rationals(config.tuple, "tuple"));
    PatternCheck check = validate_pattern(g);
    j["pattern"] = to_json(g);
    j["valid"] = check.ok;
    text << to_text(g) << "valid: " << yes_no(check.ok) << "\n";
    if (!check.ok) r.exit_code = kExitMismatch;
  } else if (!config.weight.empty()) {
    auto patterns = enumerate_patterns(config.n, parse_rationals(config.weight, "weight"));
    j["count"] = patterns.size();
    json list = json::array();
    for (const auto& g : patterns) list.push_back(to_json(g));
    j["patterns"] = std::move(list);
    text << patterns.size() << " patterns\n";
    for (const auto& g : patterns) text << "\n" << to_text(g);
  } else {
    GTPattern g = parse_pattern(config.n, *config.pattern);
    PatternCheck check = validate_pattern(g);
    j["pattern"] = to_json(g);
    j["valid"] = check.ok;
    j["violations"] = check.violations;
    text << "valid: " << yes_no(check.ok) << "\n";
    for (const auto& v : check.violations) text << "  " << v << "\n";
    if (!check.ok) r.exit_code = kExitMismatch;
  }
  r.out = config.format == OutputFormat::Json ? j.dump(2) + "\n" : text.str();
  return r;
}

namespace {

CommandResult run_numeric_oracle(const CommandConfig& config) {
  NumericIrrep irrep = numeric_irrep(config.n, parse_rationals(config.weight, "weight"), config.q);
  bool ok = irrep.max_residual() <= config.tolerance;
  json j = to_json(irrep, config.matrices);
  std::string text = to_text(irrep);
  if (config.n == 3 || config.n == 4) {
    ExactComparison cmp = compare_with_exact(irrep);
    bool match = cmp.max_deviation <= config.tolerance;
    ok = ok && match;
    j["exact_comparison"] = {{"max_deviation", cmp.max_deviation}, {"ok", match}};
    text += "  exact finite action after rescaling: max deviation " + format_double(cmp.max_deviation) + "\n";
  }
  j["tolerance"] = config.tolerance;
  j["ok"] = ok;
  text += std::string("result: ") + (ok ? "within tolerance " : "EXCEEDS tolerance ") + format_double(config.tolerance) + "\n";
  CommandResult r;
  r.exit_code = ok ? kExitOk : kExitMismatch;
  if (config.format == OutputFormat::Json) {
    r.out = j.dump(2) + "\n";
    r.err = "oracle: max residual " + format_double(irrep.max_residual()) + "\n";
    for (const auto& w : irrep.warnings) r.err += "warning: " + w + "\n";
  } else {
    r.out = text;
  }
  return r;
}

json kets_json(int rank, const std::set<Ket>& kets) {
  json out = json::array();
  for (const auto& k : kets) out.push_back(ket_json(rank, k));
  return out;
}

}  // namespace

CommandResult run_oracle(const CommandConfig& config) {
  if (!config.weight.empty()) {
    if (config.seed || !config.params.empty()) throw UsageError("--weight cannot be combined with --params or --seed");
    return run_numeric_oracle(config);
  }
  ModuleSpec spec = spec_from_config(config);
  CommandResult r;
  json j;
  j["command"] = "oracle";
  j["n"] = spec.rank;
  j["kind"] = kind_name(spec.kind);
  j["params"] = params_json(spec);
  std::ostringstream text;
  text << spec.describe() << "\n";

  if (config.seed) {
    int K = checked_window(config, 4);
    if (spec.rank == 3 && config.seed->k_l != 0) throw UsageError("rank 3 seeds have a single offset");
    std::set<Ket> generated = closure_oracle(spec, {*config.seed}, K);
    j["window"] = K;
    j["seed"] = ket_json(spec.rank, *config.seed);
    j["generated"] = kets_json(spec.rank, generated);
    j["size"] = generated.size();
    std::optional<std::string> layer;
    if (spec.kind == ModuleKind::Generic) {
      AnalysisReport report = analyze(spec);
      if (report.analyzed) {
        std::vector<SeriesLayer> layers = report.series;
        for (const auto& [name, region] : report.components) layers.push_back({name, region, {}});
        layers.push_back({"V", Region::everything(), {}});
        for (const auto& l : layers) {
          std::set<Ket> inside;
          for (const Ket& k : box_kets(spec.rank, K)) {
            if (l.region.contains(k)) inside.insert(k);
          }
          if (inside == generated) {
            layer = l.name;
            break;
          }
        }
      }
    }
    j["matches_layer"] = layer ? json(*layer) : json();
    text << "seed " << ket_string(spec.rank, *config.seed) << " generates " << generated.size()
         << " kets in the window of radius " << K;
    text << (layer ? ", equal to " + *layer : std::string()) << "\n";
    for (const auto& k : generated) text << "  " << ket_string(spec.rank, k) << "\n";
  } else {
    if (spec.kind != ModuleKind::Generic) throw UsageError("the series check needs a generic module; give --seed");
    AnalysisReport report = analyze(spec);
    if (!report.analyzed) {
      if (auto fail = hypothesis_failure(config, report.hypotheses)) return *fail;
    }
    int K = checked_window(config, std::max(4, feature_radius(report)));
    SeriesCheck check = check_series(spec, report, K);
    j["series"] = series_check_json(K, check);
    text << "series check on the window of radius " << K << ": " << (check.ok ? "confirmed" : "MISMATCH") << "\n";
    for (const auto& f : check.failures) text << "  " << f << "\n";
    if (!check.ok) r.exit_code = kExitMismatch;
  }
  if (config.format == OutputFormat::Json) {
    r.out = j.dump(2) + "\n";
    r.err = "oracle: done\n";
  } else {
    r.out = text.str();
  }
  return r;
}

namespace {

struct Layer {
  std::string name;
  const Region* region;
};

std::vector<Layer> diagram_layers(const AnalysisReport& report) {
  std::vector<Layer> out;
  if (!report.components.empty()) {
    for (const auto& [name, region] : report.components) out.push_back({name, &region});
  } else {
    for (const auto& layer : report.series) out.push_back({layer.name, &layer.region});
  }
  return out;
}

std::string param_value(const AnalysisReport& report, const std::string& name) {
  for (const auto& [n, v] : report.params) {
    if (n == name) return v.to_string();
  }
  return "?";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string marks(const std::vector<Layer>& layers, const Ket& k) {
  std::string out;
  for (std::size_t t = 0; t < layers.size(); ++t) out += layers[t].region->contains(k) ? static_cast<char>('a' + t) : '.';
  return out.empty() ? "." : out;
}

std::string render_text(const AnalysisReport& report, const std::vector<Layer>& layers, int K) {
  std::ostringstream out;
  bool rank4 = report.rank == 4;
  out << (rank4 ? "so4" : "so3") << " generic module";
  for (const auto& [name, value] : report.params) out << " " << name << "=" << value.to_string();
  out << "\n";
  if (rank4) {
    out << "origin (l0, m0) = (" << param_value(report, "l0") << ", " << param_value(report, "m0") << ")\n";
  } else {
    out << "origin m0 = " << param_value(report, "m0") << "\n";
  }
  if (layers.empty()) out << "no proper submodules\n";
  for (std::size_t t = 0; t < layers.size(); ++t) {
    out << static_cast<char>('a' + t) << ": " << layers[t].name << "  " << layers[t].region->to_string(report.rank)
        << "\n";
  }
  int width = std::max<int>(3, static_cast<int>(std::max<std::size_t>(1, layers.size())));
  auto cell = [&](const std::string& s) {
    std::string padded = s;
    padded.resize(static_cast<std::size_t>(width), ' ');
    return padded;
  };
  auto header = [&] {
    std::string line;
    for (int km = -K; km <= K; ++km) line += cell(std::to_string(km)) + " ";
    return line;
  };
  out << "\n";
  if (rank4) {
    out << "l - l0 \\ m - m0\n";
    out << "      " << header() << "\n";
    for (int kl = K; kl >= -K; --kl) {
      std::string label = std::to_string(kl);
      label.resize(6, ' ');
      out << label;
      for (int km = -K; km <= K; ++km) out << cell(marks(layers, {kl, km})) << " ";
      out << "\n";
    }
  } else {
    out << "m - m0\n" << header() << "\n";
    std::string row;
    for (int km = -K; km <= K; ++km) {
      row += cell(marks(layers, {0, km}));
      bool cut = km < K && marks(layers, {0, km}) != marks(layers, {0, km + 1});
      row += cut ? "|" : " ";
    }
    out << row << "\n";
  }
  return out.str();
}

std::string render_svg(const AnalysisReport& report, const std::vector<Layer>& layers, int K) {
  static const char* colours[] = {"#d62728", "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b"};
  constexpr int cell = 40, margin = 70;
  bool rank4 = report.rank == 4;
  int cols = 2 * K + 1;
  int rows = rank4 ? cols : 1;
  int legend_lines = static_cast<int>(layers.size()) + 1;
  int width = 2 * margin + cols * cell;
  int height = 2 * margin + rows * cell + 20 * legend_lines;
  auto x_of = [&](int km) { return margin + (km + K) * cell + cell / 2; };
  auto y_of = [&](int kl) { return margin + (rank4 ? K - kl : 0) * cell + cell / 2; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  out << "<defs>\n";
  for (std::size_t t = 0; t < layers.size(); ++t) {
    const char* c = colours[t % 6];
    out << "  <pattern id=\"hatch" << t << "\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
        << "patternTransform=\"rotate(" << 45 + 40 * static_cast<int>(t) << ")\">"
        << "<rect width=\"8\" height=\"8\" fill=\"" << c << "\" fill-opacity=\"0.12\"/>"
        << "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"" << c << "\" stroke-width=\"2\"/></pattern>\n";
  }
  out << "</defs>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t t = 0; t < layers.size(); ++t) {
    out << "<g id=\"layer-" << t << "\" fill=\"url(#hatch" << t << ")\">\n";
    for (int kl = rank4 ? -K : 0; kl <= (rank4 ? K : 0); ++kl) {
      for (int km = -K; km <= K; ++km) {
        if (!layers[t].region->contains({kl, km})) continue;
        out << "  <rect x=\"" << x_of(km) - cell / 2 << "\" y=\"" << y_of(kl) - cell / 2 << "\" width=\"" << cell
            << "\" height=\"" << cell << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "<g id=\"lattice\" fill=\"black\">\n";
  for (int kl = rank4 ? -K : 0; kl <= (rank4 ? K : 0); ++kl) {
    for (int km = -K; km <= K; ++km) {
      out << "  <circle cx=\"" << x_of(km) << "\" cy=\"" << y_of(kl) << "\" r=\"" << (kl == 0 && km == 0 ? 5 : 3)
          << "\"/>\n";
    }
  }
  out << "</g>\n";
  int bottom = margin + rows * cell;
  out << "<g id=\"axes\" stroke=\"black\">\n";
  out << "  <line x1=\"" << margin << "\" y1=\"" << bottom + 10 << "\" x2=\"" << margin + cols * cell << "\" y2=\""
      << bottom + 10 << "\"/>\n";
  if (rank4) {
    out << "  <line x1=\"" << margin - 10 << "\" y1=\"" << margin << "\" x2=\"" << margin - 10 << "\" y2=\"" << bottom
        << "\"/>\n";
  }
  out << "</g>\n";
  out << "<text x=\"" << margin + cols * cell + 10 << "\" y=\"" << bottom + 14 << "\">m</text>\n";
  out << "<text x=\"" << x_of(0) - 6 << "\" y=\"" << bottom + 28 << "\">m0</text>\n";
  if (rank4) {
    out << "<text x=\"" << margin - 16 << "\" y=\"" << margin - 10 << "\">\xe2\x84\x93</text>\n";
    out << "<text x=\"" << margin - 40 << "\" y=\"" << y_of(0) + 4 << "\">\xe2\x84\x93" << "0</text>\n";
  }
  std::string title = rank4 ? "origin (\xe2\x84\x93" "0, m0) = (" + param_value(report, "l0") + ", " +
                                  param_value(report, "m0") + ")"
                            : "origin m0 = " + param_value(report, "m0");
  out << "<text x=\"" << margin << "\" y=\"" << margin / 2 << "\">" << xml_escape(title) << "</text>\n";
  int y = bottom + 50;
  if (layers.empty()) out << "<text x=\"" << margin << "\" y=\"" << y << "\">no proper submodules</text>\n";
  for (std::size_t t = 0; t < layers.size(); ++t, y += 20) {
    out << "<rect x=\"" << margin << "\" y=\"" << y - 12 << "\" width=\"14\" height=\"14\" fill=\"url(#hatch" << t
        << ")\" stroke=\"" << colours[t % 6] << "\"/>\n";
    out << "<text x=\"" << margin + 22 << "\" y=\"" << y << "\">"
        << xml_escape(layers[t].name + ": " + layers[t].region->to_string(report.rank)) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_diagram(const AnalysisReport& report, OutputFormat format, int K) {
  auto layers = diagram_layers(report);
  if (format == OutputFormat::Svg) return render_svg(report, layers, K);
  return render_text(report, layers, K);
}

CommandResult run_diagram(const CommandConfig& config) {
  if (config.kind != ModuleKind::Generic) throw UsageError("diagram needs a generic module");
  if (config.format == OutputFormat::Json) throw UsageError("diagram renders text or svg");
  ModuleSpec spec = spec_from_config(config);
  int K = checked_window(config, 4);
  AnalysisReport report = analyze(spec);
  if (!report.analyzed) {
    if (auto fail = hypothesis_failure(config, report.hypotheses)) return *fail;
  }
  CommandResult r;
  r.out = render_diagram(report, config.format, K);
  return r;
}

CommandResult run_command(const CommandConfig& config) {
  try {
    if (config.format == OutputFormat::Svg && config.command != Command::Diagram) {
      throw UsageError("--format svg applies to diagram only");
    }
    switch (config.command) {
      case Command::Verify: return run_verify(config);
      case Command::Analyze: return run_analyze(config);
      case Command::Pattern: return run_pattern(config);
      case Command::Oracle: return run_oracle(config);
      case Command::Diagram: return run_diagram(config);
    }
  } catch (const SingularParameterError& e) {
    return failure(config, kExitInvalid, std::string("singular parameters: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return failure(config, kExitInvalid, e.what());
  } catch (const std::out_of_range& e) {
    return failure(config, kExitInvalid, e.what());
  }
  return failure(config, kExitInvalid, "unknown command");
}

std::variant<CommandConfig, CommandResult> parse_command_line(int argc, const char* const* argv) {
  CommandConfig config;
  CLI::App app{"Exact and numeric checks for Gelfand-Tsetlin modules of U_q^tw(so_3) and U_q^tw(so_4)", "iqgt"};
  app.require_subcommand(1);
  std::string params, format = "text", kind = "generic", seed, q = "1.2";
  std::optional<int> window_cap;

  auto module_options = [&](CLI::App* sub, bool any_n) {
    sub->add_option("--n", config.n, any_n ? "pattern size n >= 2" : "rank: 3 or 4");
    if (sub->get_name() == "diagram") {
      sub->add_option("--format", format, "text or svg")->check(CLI::IsMember({"text", "svg"}));
    } else {
      sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    }
  };
  auto param_options = [&](CLI::App* sub) {
    sub->add_option("--params", params, "name=value list; value is 'generic' or an exact rational");
    sub->add_option("--window", config.window, "window radius");
    sub->add_option("--window-cap", window_cap, "largest allowed window (default IQGT_WINDOW_CAP or 8)");
  };

  auto* verify = app.add_subcommand("verify", "check relations, Casimir and s-presentation exactly on a window");
  module_options(verify, false);
  param_options(verify);
  verify->add_option("--kind", kind, "generic or finite")->check(CLI::IsMember({"generic", "finite"}));

  auto* analyze_cmd = app.add_subcommand("analyze", "irreducibility, length and composition series");
  module_options(analyze_cmd, false);
  param_options(analyze_cmd);
  analyze_cmd->add_flag("--check-oracle", config.check_oracle, "confirm the series with the closure oracle");

  auto* pattern = app.add_subcommand("pattern", "Gelfand-Tsetlin pattern tools");
  module_options(pattern, true);
  pattern->add_option("--tuple", config.tuple, "build a pattern from a decreasing tuple")->delimiter(',');
  pattern->add_option("--weight", config.weight, "enumerate the patterns with this top row")->delimiter(',');
  pattern->add_option("--pattern", config.pattern, "validate a pattern: rows separated by ';'");

  auto* oracle = app.add_subcommand("oracle", "closure oracle, or the numeric irrep for a highest weight");
  module_options(oracle, true);
  param_options(oracle);
  oracle->add_option("--kind", kind, "generic or finite")->check(CLI::IsMember({"generic", "finite"}));
  oracle->add_option("--seed", seed, "ket offsets k_m or k_l,k_m");
  oracle->add_option("--weight", config.weight, "highest weight for the numeric irrep")->delimiter(',');
  oracle->add_option("--q", q, "numeric q, e.g. 1.2 or 1.1+0.2i");
  oracle->add_option("--tolerance", config.tolerance, "numeric tolerance");
  oracle->add_flag("--matrices", config.matrices, "include the generator matrices in json output");

  auto* diagram = app.add_subcommand("diagram", "lattice diagram of the composition series");
  module_options(diagram, false);
  param_options(diagram);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    return CommandResult{code == 0 ? kExitOk : kExitInvalid, out.str(), err.str()};
  }

  try {
    if (verify->parsed()) config.command = Command::Verify;
    if (analyze_cmd->parsed()) config.command = Command::Analyze;
    if (pattern->parsed()) config.command = Command::Pattern;
    if (oracle->parsed()) config.command = Command::Oracle;
    if (diagram->parsed()) config.command = Command::Diagram;
    config.format = format == "json" ? OutputFormat::Json : format == "svg" ? OutputFormat::Svg : OutputFormat::Text;
    config.kind = kind == "finite" ? ModuleKind::FiniteHighestWeight : ModuleKind::Generic;
    config.params = parse_params(params);
    config.window_cap = window_cap ? *window_cap : window_cap_from_env();
    if (config.window_cap < 1) throw UsageError("--window-cap must be positive");
    config.q = parse_complex(q);
    if (!seed.empty()) {
      std::vector<int> offsets;
      std::stringstream in(seed);
      std::string item;
      while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
          v = std::stoi(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != item.size()) throw UsageError("--seed needs integer offsets, got '" + seed + "'");
        offsets.push_back(v);
      }
      if (offsets.size() == 1) {
        config.seed = Ket{0, offsets[0]};
      } else if (offsets.size() == 2 && config.n == 4) {
        config.seed = Ket{offsets[0], offsets[1]};
      } else {
        throw UsageError("--seed needs k_m (n=3) or k_l,k_m (n=4)");
      }
    }
  } catch (const UsageError& e) {
    return CommandResult{kExitInvalid, "", std::string("iqgt: ") + e.what() + "\n"};
  }
  return config;
}

int cli_main(int argc, const char* const* argv) {
  CommandResult result;
  try {
    auto parsed = parse_command_line(argc, argv);
    result = std::holds_alternative<CommandResult>(parsed) ? std::get<CommandResult>(parsed)
                                                           : run_command(std::get<CommandConfig>(parsed));
  } catch (const std::exception& e) {
    result = CommandResult{kExitInvalid, "", std::string("iqgt: ") + e.what() + "\n"};
  }
  std::cout << result.out << std::flush;
  std::cerr << result.err << std::flush;
  return result.exit_code;
}

}  // namespace iqgt
