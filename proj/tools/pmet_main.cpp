// pmet: verifier and transformer for finite probabilistic metric spaces and
// the approach structures they induce.
//
// Exit codes: 0 all checks pass, 1 a check failed (witnesses in the
// report), 2 input or schema errors.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmet/io.hpp"
#include "pmet/oracle.hpp"
#include "pmet/transforms.hpp"

namespace {

using pmet::io::json;

struct GridArg {
  double t_max = 0.0;
  int resolution = 0;
};

GridArg parse_grid(const std::string& arg) {
  GridArg g;
  std::istringstream in(arg);
  char comma = 0;
  if (!(in >> g.t_max >> comma >> g.resolution) || comma != ',' ||
      !(g.t_max > 0.0) || g.resolution < 1) {
    throw pmet::io::ParseError("--grid expects t_max,resolution");
  }
  return g;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

void print_report(const pmet::AxiomReport& r) {
  std::cout << r.subject << "\n";
  for (const auto& c : r.checks) {
    const char* tag = c.verdict == pmet::Verdict::pass   ? "pass"
                      : c.verdict == pmet::Verdict::fail ? "FAIL"
                                                         : "unchecked";
    std::cout << "  [" << tag << "] " << c.name;
    if (!c.method.empty()) std::cout << "  (" << c.method << ")";
    if (!c.witness.empty()) std::cout << "  witness: " << c.witness;
    std::cout << "\n";
  }
}

void print_transform(const pmet::TransformReport& r) {
  std::cout << "pipeline:";
  for (const auto& s : r.stages) std::cout << " " << s;
  std::cout << "\n";
  std::cout << "t-norm: " << r.input_tnorm.describe() << " -> "
            << r.output_tnorm.describe() << "\n";
  print_report(r.axioms);
  std::cout << "  [" << (r.delta_preserved ? "pass" : "FAIL")
            << "] approach table preserved";
  if (!r.delta_witness.empty()) std::cout << "  witness: " << r.delta_witness;
  std::cout << "\n";
  if (!r.caveat.empty()) std::cout << "note: " << r.caveat << "\n";
}

void maybe_write(const std::optional<std::string>& out, const json& j) {
  if (out) pmet::io::write_json_file(*out, j);
}

pmet::Mask subset_mask(const pmet::FiniteCarrier& carrier,
                       const std::string& csv) {
  pmet::Mask mask = 0;
  if (csv.empty()) return mask;
  for (const auto& label : split_csv(csv)) {
    mask |= pmet::Mask{1} << carrier.index_of(label);
  }
  return mask;
}

int run_verify_tnorm(const std::string& tnorm_arg, std::uint64_t seed,
                     const std::optional<std::string>& out) {
  const auto t = pmet::io::tnorm_from_arg(tnorm_arg);
  pmet::TnormVerifyOptions opt;
  opt.seed = seed;
  const auto report = pmet::verify_tnorm(t, opt);
  print_report(report);
  maybe_write(out, pmet::io::report_to_json(report));
  return report.all_pass() ? 0 : 1;
}

int run_verify_space(const std::string& space_path,
                     const std::optional<GridArg>& grid, int max_carrier,
                     const std::optional<std::string>& out) {
  const json j = pmet::io::load_json_file(space_path);
  pmet::AxiomReport report;
  if (j.is_object() && j.contains("entries")) {
    pmet::ProbAxiomOptions opt;
    if (grid) {
      opt.horizon = grid->t_max;
      opt.sample_axis =
          std::max(2, static_cast<int>(std::lround(std::sqrt(grid->resolution))));
    }
    report = pmet::check_axioms(pmet::io::space_from_json(j), opt);
  } else {
    pmet::ApproachAxiomOptions opt;
    opt.max_subset_points = max_carrier;
    report = pmet::check_axioms(pmet::io::approach_from_any_file(space_path), opt);
  }
  print_report(report);
  maybe_write(out, pmet::io::report_to_json(report));
  return report.all_pass() ? 0 : 1;
}

int run_derive(const std::string& space_path,
               const std::optional<std::string>& out) {
  const auto a = pmet::io::approach_from_any_file(space_path);
  const auto full = a.full_mask();
  if (a.size() <= 10) {
    for (int x = 0; x < a.size(); ++x) {
      for (pmet::Mask s = 0; s <= full; ++s) {
        std::cout << a.carrier().label(x) << " | "
                  << pmet::fmt_mask(s, a.carrier().points()) << " = "
                  << pmet::fmt_real(a.delta(x, s)) << "\n";
      }
    }
  } else {
    std::cout << "table on " << a.size()
              << " points is large; use --out for the full table\n";
  }
  maybe_write(out, pmet::io::approach_to_json(a));
  return 0;
}

int run_closure(const std::string& space_path, const std::string& subset_csv,
                const std::optional<std::string>& out) {
  const auto a = pmet::io::approach_from_any_file(space_path);
  json closures = json::object();
  auto emit = [&](pmet::Mask s) {
    const auto c = pmet::closure(a, s);
    const auto key = pmet::fmt_mask(s, a.carrier().points());
    const auto val = pmet::fmt_mask(c, a.carrier().points());
    std::cout << "cl(" << key << ") = " << val << "\n";
    closures[key] = val;
  };
  if (!subset_csv.empty()) {
    emit(subset_mask(a.carrier(), subset_csv));
  } else {
    for (pmet::Mask s = 0; s <= a.full_mask(); ++s) emit(s);
  }
  maybe_write(out, json{{"carrier", a.carrier().points()},
                        {"closures", std::move(closures)}});
  return 0;
}

int run_neighborhoods(const std::string& space_path, const std::string& t_csv,
                      const std::optional<std::string>& out) {
  const auto m = pmet::io::space_from_file(space_path);
  std::vector<double> ts;
  for (const auto& s : split_csv(t_csv)) ts.push_back(std::stod(s));
  if (ts.empty()) throw pmet::io::ParseError("--t expects a comma list");
  json result = json::object();
  for (int x = 0; x < m.size(); ++x) {
    json per_point = json::object();
    for (double t : ts) {
      const auto u = pmet::strong_neighborhood(m, x, t);
      const auto val = pmet::fmt_mask(u, m.carrier().points());
      std::cout << "U_" << m.carrier().label(x) << "(" << pmet::fmt_real(t)
                << ") = " << val << "\n";
      per_point[pmet::fmt_real(t)] = val;
    }
    result[m.carrier().label(x)] = std::move(per_point);
  }
  maybe_write(out, result);
  return 0;
}

int run_transform(const std::string& pipeline, const std::string& space_path,
                  const std::string& target, const std::string& tnorm_arg,
                  const std::optional<std::string>& out) {
  const auto m = pmet::io::space_from_file(space_path);
  pmet::TransformReport report = [&] {
    if (pipeline == "min-retag") {
      if (tnorm_arg.empty()) {
        throw pmet::io::ParseError("min-retag needs --tnorm for the target");
      }
      return pmet::retag_min_valid(m, pmet::io::tnorm_from_arg(tnorm_arg));
    }
    if (pipeline == "luk-to-prod") return pmet::lukasiewicz_to_product(m);
    if (pipeline == "prod-to-luk") return pmet::product_to_lukasiewicz(m);
    if (pipeline == "tail-rescale") return pmet::tail_rescale_up(m);
    if (pipeline == "project-min") return pmet::project_to_min(m);
    if (pipeline == "remetrize") {
      if (target == "min") return pmet::remetrize(m, pmet::RemetrizeTarget::minimum);
      if (target == "product") {
        return pmet::remetrize(m, pmet::RemetrizeTarget::product);
      }
      throw pmet::io::ParseError("remetrize needs --target min|product");
    }
    throw pmet::io::ParseError(
        "unknown pipeline \"" + pipeline +
        "\" (expected min-retag|luk-to-prod|prod-to-luk|tail-rescale|"
        "project-min|remetrize)");
  }();
  print_transform(report);
  maybe_write(out, pmet::io::transform_report_to_json(report));
  return report.ok() ? 0 : 1;
}

int run_classify(const std::string& space_path,
                 const std::optional<std::string>& out) {
  const auto m = pmet::io::space_from_file(space_path);
  const auto report = pmet::classify(m);
  std::cout << "minimum-norm certificate: "
            << (report.minimum_certified ? "succeeds" : "fails") << "\n";
  print_transform(report.to_minimum);
  std::cout << "product-norm certificate: "
            << (report.product_certified ? "succeeds" : "fails") << "\n";
  print_transform(report.to_product);
  std::cout << "note: " << report.caveat << "\n";
  maybe_write(out, pmet::io::classification_to_json(report));
  return report.minimum_certified && report.product_certified ? 0 : 1;
}

int run_corpus(const std::string& manifest_path, int max_carrier,
               const std::optional<std::string>& out) {
  const auto entries =
      pmet::io::manifest_from_json(pmet::io::load_json_file(manifest_path));
  bool all_ok = true;
  json results = json::array();
  for (const auto& e : entries) {
    const auto space = pmet::random_space(e.tnorm, e.n_points, e.seed);
    const auto axioms = pmet::check_axioms(space);
    bool ok = axioms.all_pass();
    std::string detail;
    if (ok && e.n_points <= pmet::FiniteApproachSpace::kMaxTablePoints) {
      pmet::ApproachAxiomOptions opt;
      opt.max_subset_points = max_carrier;
      const auto approach =
          pmet::check_axioms(pmet::derive_approach_space(space), opt);
      for (const auto& c : approach.checks) {
        if (c.verdict == pmet::Verdict::fail) {
          ok = false;
          detail = c.name + ": " + c.witness;
        }
      }
    }
    if (!ok && detail.empty()) {
      for (const auto& c : axioms.checks) {
        if (c.verdict == pmet::Verdict::fail) detail = c.name + ": " + c.witness;
      }
    }
    std::cout << (ok ? "[pass] " : "[FAIL] ") << "seed=" << e.seed
              << " n=" << e.n_points << " tnorm=" << e.tnorm.describe();
    if (!detail.empty()) std::cout << "  " << detail;
    std::cout << "\n";
    results.push_back({{"seed", e.seed},
                       {"n_points", e.n_points},
                       {"tnorm", pmet::io::tnorm_to_json(e.tnorm)},
                       {"ok", ok},
                       {"detail", detail}});
    all_ok = all_ok && ok;
  }
  maybe_write(out, results);
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for probabilistic metric spaces, approach spaces, "
               "and the re-metrization transforms between t-norms"};
  app.require_subcommand(1);

  std::string tnorm_arg, space_path, subset_csv, t_csv, target, pipeline;
  std::string manifest_path, grid_arg;
  std::optional<std::string> out_path;
  int max_carrier = 8;
  std::uint64_t seed = 2024;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "write a machine-readable JSON report");
  };

  auto* vt = app.add_subcommand("verify-tnorm", "run the t-norm property suite");
  vt->add_option("--tnorm", tnorm_arg, "descriptor file or name")->required();
  vt->add_option("--seed", seed, "seed for the sampled monotonicity check");
  add_out(vt);

  auto* vs = app.add_subcommand("verify-space", "check the space axioms");
  vs->add_option("--space", space_path, "space file")->required();
  vs->add_option("--grid", grid_arg, "t_max,resolution for sampled checks");
  vs->add_option("--max-carrier", max_carrier, "subset-exhaustive cap");
  add_out(vs);

  auto* dv = app.add_subcommand("derive", "emit the induced approach table");
  dv->add_option("--space", space_path, "space file")->required();
  add_out(dv);

  auto* cl = app.add_subcommand("closure", "closure of subsets");
  cl->add_option("--space", space_path, "space file")->required();
  cl->add_option("--subset", subset_csv, "comma list of labels");
  add_out(cl);

  auto* nb = app.add_subcommand("neighborhoods", "strong-topology neighborhoods");
  nb->add_option("--space", space_path, "space file")->required();
  nb->add_option("--t", t_csv, "comma list of radii")->required();
  add_out(nb);

  auto* tr = app.add_subcommand("transform", "run a re-metrization pipeline");
  tr->add_option("pipeline", pipeline,
                 "min-retag|luk-to-prod|prod-to-luk|tail-rescale|project-min|"
                 "remetrize")
      ->required();
  tr->add_option("--space", space_path, "space file")->required();
  tr->add_option("--target", target, "min|product (for remetrize)");
  tr->add_option("--tnorm", tnorm_arg, "target t-norm (for min-retag)");
  add_out(tr);

  auto* cf = app.add_subcommand("classify", "report both re-metrization certificates");
  cf->add_option("--space", space_path, "space file")->required();
  add_out(cf);

  auto* cp = app.add_subcommand("corpus", "replay a generator manifest");
  cp->add_option("manifest", manifest_path, "manifest file")->required();
  cp->add_option("--max-carrier", max_carrier, "subset-exhaustive cap");
  add_out(cp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (vt->parsed()) return run_verify_tnorm(tnorm_arg, seed, out_path);
    if (vs->parsed()) {
      std::optional<GridArg> grid;
      if (!grid_arg.empty()) grid = parse_grid(grid_arg);
      return run_verify_space(space_path, grid, max_carrier, out_path);
    }
    if (dv->parsed()) return run_derive(space_path, out_path);
    if (cl->parsed()) return run_closure(space_path, subset_csv, out_path);
    if (nb->parsed()) return run_neighborhoods(space_path, t_csv, out_path);
    if (tr->parsed()) {
      return run_transform(pipeline, space_path, target, tnorm_arg, out_path);
    }
    if (cf->parsed()) return run_classify(space_path, out_path);
    if (cp->parsed()) return run_corpus(manifest_path, max_carrier, out_path);
  } catch (const pmet::InvalidInputSpace& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    print_report(e.report);
    return 1;
  } catch (const pmet::io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
