#include "pmet/io.hpp"

#include <cmath>
#include <fstream>

namespace pmet::io {

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError("missing field \"" + std::string(key) + "\"");
  }
  return *it;
}

double number_from_json(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + " must be a number");
  return j.get<double>();
}

double unit_from_json(const json& j, const std::string& what) {
  const double v = number_from_json(j, what);
  if (!is_unit(v)) throw ParseError(what + " must lie in [0,1]");
  return v;
}

std::pair<std::string, std::string> split_pair_key(const std::string& key) {
  const auto bar = key.find('|');
  if (bar == std::string::npos || bar == 0 || bar + 1 >= key.size()) {
    throw ParseError("entry key must look like \"x|y\", got \"" + key + "\"");
  }
  return {key.substr(0, bar), key.substr(bar + 1)};
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

json ext_to_json(double t) {
  if (std::isinf(t)) return json("inf");
  return json(t);
}

double ext_from_json(const json& j, const std::string& what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw ParseError(what + ": only \"inf\" is accepted as a string value");
  }
  const double v = number_from_json(j, what);
  if (!is_ext_nonneg(v)) throw ParseError(what + " must lie in [0,inf]");
  return v;
}

OrdinalSumTNorm tnorm_from_json(const json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "min" || name == "minimum") return OrdinalSumTNorm::minimum();
    if (name == "product") return OrdinalSumTNorm::product();
    if (name == "lukasiewicz") return OrdinalSumTNorm::lukasiewicz();
    throw ParseError("unknown t-norm name \"" + name + "\"");
  }
  if (!j.is_object()) throw ParseError("t-norm must be a name or an object");
  const json& ivs = field(j, "intervals");
  if (!ivs.is_array()) throw ParseError("\"intervals\" must be an array");
  std::vector<OrdinalInterval> intervals;
  for (const auto& iv : ivs) {
    OrdinalInterval out;
    out.a = unit_from_json(field(iv, "a"), "interval endpoint a");
    out.b = unit_from_json(field(iv, "b"), "interval endpoint b");
    const auto arch = field(iv, "archetype").get<std::string>();
    if (arch == "product") {
      out.archetype = Archetype::product;
    } else if (arch == "lukasiewicz") {
      out.archetype = Archetype::lukasiewicz;
    } else {
      throw ParseError("interval archetype must be product or lukasiewicz");
    }
    intervals.push_back(out);
  }
  try {
    return OrdinalSumTNorm(std::move(intervals));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json tnorm_to_json(const OrdinalSumTNorm& t) {
  json ivs = json::array();
  for (const auto& iv : t.intervals()) {
    ivs.push_back({{"a", iv.a}, {"b", iv.b}, {"archetype", to_string(iv.archetype)}});
  }
  return json{{"intervals", std::move(ivs)}};
}

OrdinalSumTNorm tnorm_from_arg(const std::string& name_or_path) {
  if (name_or_path == "min" || name_or_path == "minimum" ||
      name_or_path == "product" || name_or_path == "lukasiewicz") {
    return tnorm_from_json(json(name_or_path));
  }
  return tnorm_from_json(load_json_file(name_or_path));
}

Distribution distribution_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "kappa") return kappa();
    throw ParseError("unknown distribution name \"" + j.get<std::string>() +
                     "\"");
  }
  if (!j.is_object()) {
    throw ParseError("distribution must be \"kappa\" or an object");
  }
  if (j.contains("exp_rate")) {
    return ExpDistribution(ext_from_json(j["exp_rate"], "exp_rate"));
  }
  const json& ps = field(j, "plateaus");
  if (!ps.is_array()) throw ParseError("\"plateaus\" must be an array of pairs");
  std::vector<std::pair<double, double>> points;
  for (const auto& p : ps) {
    if (!p.is_array() || p.size() != 2) {
      throw ParseError("each plateau must be a [jump, value] pair");
    }
    points.emplace_back(ext_from_json(p[0], "plateau jump"),
                        unit_from_json(p[1], "plateau value"));
  }
  try {
    return left_regularize(points);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json distribution_to_json(const Distribution& d) {
  if (const auto* e = std::get_if<ExpDistribution>(&d)) {
    return json{{"exp_rate", ext_to_json(e->rate())}};
  }
  const auto& s = std::get<StepDistribution>(d);
  if (is_kappa(s)) return json("kappa");
  json ps = json::array();
  for (const auto& p : s.plateaus()) ps.push_back({p.jump, p.value});
  return json{{"plateaus", std::move(ps)}};
}

ProbMetricSpace space_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("space must be an object");
  const json& labels = field(j, "carrier");
  if (!labels.is_array() || labels.empty()) {
    throw ParseError("\"carrier\" must be a nonempty array of labels");
  }
  std::vector<std::string> points;
  for (const auto& l : labels) points.push_back(l.get<std::string>());
  FiniteCarrier carrier(points);
  const int n = carrier.size();

  OrdinalSumTNorm tnorm = tnorm_from_json(field(j, "tnorm"));

  std::vector<std::vector<Distribution>> alpha(
      n, std::vector<Distribution>(n, Distribution{kappa()}));
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  const json& entries = field(j, "entries");
  if (!entries.is_object()) throw ParseError("\"entries\" must be an object");
  for (const auto& [key, value] : entries.items()) {
    const auto [a, b] = split_pair_key(key);
    const int x = carrier.index_of(a);
    const int y = carrier.index_of(b);
    Distribution d = distribution_from_json(value);
    if (given[x][y] && !distributions_equal(alpha[x][y], d)) {
      throw ParseError("contradictory symmetric entries for \"" + key + "\"");
    }
    alpha[x][y] = d;
    alpha[y][x] = std::move(d);
    given[x][y] = given[y][x] = true;
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (!given[x][y]) {
        throw ParseError("missing entry for pair \"" + carrier.label(x) + "|" +
                         carrier.label(y) + "\"");
      }
    }
  }
  return ProbMetricSpace(std::move(carrier), std::move(tnorm),
                         std::move(alpha));
}

json space_to_json(const ProbMetricSpace& m) {
  json entries = json::object();
  for (int i = 0; i < m.size(); ++i) {
    for (int k = i + 1; k < m.size(); ++k) {
      entries[m.carrier().label(i) + "|" + m.carrier().label(k)] =
          distribution_to_json(m.at(i, k));
    }
  }
  return json{{"carrier", m.carrier().points()},
              {"tnorm", tnorm_to_json(m.tnorm())},
              {"entries", std::move(entries)}};
}

ProbMetricSpace space_from_file(const std::string& path) {
  return space_from_json(load_json_file(path));
}

FiniteApproachSpace approach_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("approach space must be an object");
  const json& labels = field(j, "carrier");
  std::vector<std::string> points;
  for (const auto& l : labels) points.push_back(l.get<std::string>());
  FiniteCarrier carrier(points);
  const int n = carrier.size();
  if (n > FiniteApproachSpace::kMaxTablePoints) {
    throw ParseError("carrier too large for a full distance table");
  }
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<double>> table(
      n, std::vector<double>(subsets, -1.0));
  const json& delta = field(j, "delta");
  if (!delta.is_object()) throw ParseError("\"delta\" must be an object");
  for (const auto& [key, value] : delta.items()) {
    const auto [point, subset] = split_pair_key(key);
    const int x = carrier.index_of(point);
    if (subset.size() < 2 || subset.front() != '{' || subset.back() != '}') {
      throw ParseError("subset key must look like \"{a,b}\", got \"" + subset +
                       "\"");
    }
    Mask mask = 0;
    const std::string inner = subset.substr(1, subset.size() - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      auto comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      mask |= Mask{1} << carrier.index_of(inner.substr(pos, comma - pos));
      pos = comma + 1;
    }
    table[x][mask] = ext_from_json(value, "delta value for \"" + key + "\"");
  }
  for (int x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < subsets; ++a) {
      if (table[x][a] < 0.0) {
        throw ParseError("missing delta value for \"" + carrier.label(x) +
                         "|" + fmt_mask(static_cast<Mask>(a), carrier.points()) +
                         "\"");
      }
    }
  }
  return FiniteApproachSpace(std::move(carrier), std::move(table));
}

json approach_to_json(const FiniteApproachSpace& a) {
  json delta = json::object();
  const Mask full = a.full_mask();
  for (int x = 0; x < a.size(); ++x) {
    for (Mask s = 0; s <= full; ++s) {
      delta[a.carrier().label(x) + "|" + fmt_mask(s, a.carrier().points())] =
          ext_to_json(a.delta(x, s));
    }
  }
  return json{{"carrier", a.carrier().points()}, {"delta", std::move(delta)}};
}

FiniteApproachSpace approach_from_file(const std::string& path) {
  const json j = load_json_file(path);
  if (j.is_object() && j.contains("derive_from")) {
    return derive_approach_space(
        space_from_file(j["derive_from"].get<std::string>()));
  }
  return approach_from_json(j);
}

FiniteApproachSpace approach_from_any_file(const std::string& path) {
  const json j = load_json_file(path);
  if (j.is_object() && j.contains("entries")) {
    return derive_approach_space(space_from_json(j));
  }
  if (j.is_object() && j.contains("derive_from")) {
    return derive_approach_space(
        space_from_file(j["derive_from"].get<std::string>()));
  }
  return approach_from_json(j);
}

json report_to_json(const AxiomReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"verdict", to_string(c.verdict)},
                      {"method", c.method},
                      {"witness", c.witness}});
  }
  return json{{"subject", r.subject},
              {"checks", std::move(checks)},
              {"all_pass", r.all_pass()}};
}

AxiomReport report_from_json(const json& j) {
  AxiomReport r;
  r.subject = field(j, "subject").get<std::string>();
  for (const auto& c : field(j, "checks")) {
    r.checks.push_back({field(c, "name").get<std::string>(),
                        verdict_from_string(field(c, "verdict").get<std::string>()),
                        field(c, "method").get<std::string>(),
                        field(c, "witness").get<std::string>()});
  }
  return r;
}

json transform_report_to_json(const TransformReport& r) {
  return json{{"stages", r.stages},
              {"input_tnorm", tnorm_to_json(r.input_tnorm)},
              {"output_tnorm", tnorm_to_json(r.output_tnorm)},
              {"output_space", space_to_json(r.output)},
              {"axioms", report_to_json(r.axioms)},
              {"delta_preserved", r.delta_preserved},
              {"delta_witness", r.delta_witness},
              {"caveat", r.caveat},
              {"ok", r.ok()}};
}

TransformReport transform_report_from_json(const json& j) {
  return TransformReport{
      field(j, "stages").get<std::vector<std::string>>(),
      tnorm_from_json(field(j, "input_tnorm")),
      tnorm_from_json(field(j, "output_tnorm")),
      space_from_json(field(j, "output_space")),
      report_from_json(field(j, "axioms")),
      field(j, "delta_preserved").get<bool>(),
      field(j, "delta_witness").get<std::string>(),
      field(j, "caveat").get<std::string>()};
}

json classification_to_json(const ClassificationReport& r) {
  return json{{"to_minimum", transform_report_to_json(r.to_minimum)},
              {"to_product", transform_report_to_json(r.to_product)},
              {"minimum_certified", r.minimum_certified},
              {"product_certified", r.product_certified},
              {"caveat", r.caveat}};
}

std::vector<CorpusEntry> manifest_from_json(const json& j) {
  const json& list = j.is_array() ? j : field(j, "corpus");
  if (!list.is_array()) throw ParseError("manifest must hold an array");
  std::vector<CorpusEntry> out;
  for (const auto& e : list) {
    CorpusEntry entry;
    entry.seed = field(e, "seed").get<std::uint64_t>();
    entry.tnorm = tnorm_from_json(field(e, "tnorm"));
    entry.n_points = field(e, "n_points").get<int>();
    out.push_back(std::move(entry));
  }
  return out;
}

json manifest_to_json(const std::vector<CorpusEntry>& entries) {
  json list = json::array();
  for (const auto& e : entries) {
    list.push_back({{"seed", e.seed},
                    {"tnorm", tnorm_to_json(e.tnorm)},
                    {"n_points", e.n_points}});
  }
  return json{{"corpus", std::move(list)}};
}

}  // namespace pmet::io
