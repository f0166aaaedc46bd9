#include "md5fol/cli.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "md5fol/verify.hpp"

namespace md5fol {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Covector parse_point(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConstraintViolation("point coordinate not a number: " + item);
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
      ++used;
    if (used != item.size())
      throw ConstraintViolation("point coordinate not a number: " + item);
    vals.push_back(v);
  }
  if (vals.size() != 5)
    throw ConstraintViolation("point must have 5 comma-separated coordinates");
  return Covector::of(vals[0], vals[1], vals[2], vals[3], vals[4]);
}

FamilyParams parse_params(const std::string& text) {
  FamilyParams p;
  if (text.empty()) return p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConstraintViolation("parameter must look like name=value: " + item);
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    double v = 0.0;
    std::size_t used = 0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      throw ConstraintViolation("parameter value not a number: " + item);
    }
    if (used != value.size())
      throw ConstraintViolation("parameter value not a number: " + item);
    std::optional<double>* slot = nullptr;
    if (name == "lambda1")
      slot = &p.lambda1;
    else if (name == "lambda2")
      slot = &p.lambda2;
    else if (name == "lambda3")
      slot = &p.lambda3;
    else if (name == "lambda")
      slot = &p.lambda;
    else if (name == "mu")
      slot = &p.mu;
    else if (name == "phi")
      slot = &p.phi;
    else
      throw ConstraintViolation("unknown parameter " + name);
    if (slot->has_value())
      throw ConstraintViolation("parameter given twice: " + name);
    *slot = v;
  }
  return p;
}

FamilyDescriptor make_descriptor(const std::string& family,
                                 const std::string& params) {
  const auto id = parse_family(family);
  if (!id) throw ConstraintViolation("unknown family " + family);
  return validate_params(*id, parse_params(params));
}

// Routes command output to --out when given, with I/O failures mapped to
// exit code 3.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback)
      : path_(path), fallback_(fallback) {
    if (!path_.empty()) {
      file_.open(path_);
      if (!file_) throw IoError("cannot open output file " + path_);
    }
  }

  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }

  void finish() {
    if (path_.empty()) return;
    file_.flush();
    if (!file_) throw IoError("write failed on output file " + path_);
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream& fallback_;
};

struct CommonArgs {
  std::string family;
  std::string params;
  std::string point;
  ToleranceConfig tol;
};

int cmd_classify(const CommonArgs& c, std::ostream& out) {
  const FamilyDescriptor d = make_descriptor(c.family, c.params);
  const Covector F = parse_point(c.point);
  const bool generic = in_generic_stratum(d, F);
  const int dim = orbit_dimension(d, F, c.tol);
  const TopologicalType tt = topological_type(d.id());
  out << "{\"stratum\":\"" << (generic ? "generic" : "fixed")
      << "\",\"orbit_dim\":" << dim << ",\"top_type\":\"" << to_string(tt)
      << "\",\"canonical_target\":\""
      << describe(canonical_target(tt).family) << "\"}\n";
  return 0;
}

struct GridArgs {
  double x_min = 0.0, x_max = 1.0;
  double a_min = -1.0, a_max = 1.0;
  int x_count = 5, a_count = 5;
};

int cmd_orbit_sample(const CommonArgs& c, const GridArgs& g,
                     const std::string& format, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
  if (format != "json" && format != "csv")
    throw ConstraintViolation("orbit-sample supports --format json or csv");
  if (g.x_count < 1 || g.a_count < 1)
    throw ConstraintViolation("grid counts must be >= 1");
  const FamilyDescriptor d = make_descriptor(c.family, c.params);
  const Covector F = parse_point(c.point);
  OutputTarget target(out_path, out);
  std::ostream& os = target.stream();
  const bool csv = format == "csv";
  if (csv) os << "x,a,f1,f2,f3,f4,f5\n";
  const auto emit = [&os, csv](double x, double a, const Covector& P) {
    if (csv) {
      os << fmt(x) << "," << fmt(a);
      for (int i = 0; i < kDim; ++i) os << "," << fmt(P.coords(i));
      os << "\n";
      return;
    }
    os << "{\"x\":" << fmt(x) << ",\"a\":" << fmt(a);
    for (int i = 0; i < kDim; ++i)
      os << ",\"f" << i + 1 << "\":" << fmt(P.coords(i));
    os << "}\n";
  };
  if (!in_generic_stratum(d, F)) {
    err << "warning: point is a coadjoint fixed point; emitting a single row\n";
    emit(F.alpha(), 0.0, orbit_param(d, F, F.alpha(), 0.0));
    target.finish();
    return 0;
  }
  for (int ix = 0; ix < g.x_count; ++ix) {
    const double x =
        g.x_count == 1
            ? g.x_min
            : g.x_min + (g.x_max - g.x_min) * ix / (g.x_count - 1.0);
    for (int ia = 0; ia < g.a_count; ++ia) {
      const double a =
          g.a_count == 1
              ? g.a_min
              : g.a_min + (g.a_max - g.a_min) * ia / (g.a_count - 1.0);
      emit(x, a, orbit_param(d, F, x, a));
    }
  }
  target.finish();
  return 0;
}

int cmd_equiv_map(const CommonArgs& c, bool inverse, std::ostream& out) {
  const FamilyDescriptor d = make_descriptor(c.family, c.params);
  const Covector F = parse_point(c.point);
  const Covector image =
      inverse ? equivalence_map_inverse(d, F) : equivalence_map(d, F);
  for (int i = 0; i < kDim; ++i)
    out << (i ? "," : "") << fmt(image.coords(i));
  out << "\n";
  return 0;
}

int cmd_verify(const std::string& scope, const RunConfig& cfg,
               const std::string& out_path, std::ostream& out) {
  std::optional<FamilyId> fam;
  if (scope != "all") {
    fam = parse_family(scope);
    if (!fam) throw ConstraintViolation("unknown scope " + scope);
  }
  const VerifyOutcome outcome = run_verification(fam, cfg);
  OutputTarget target(out_path, out);
  render_report(outcome, fam, cfg, target.stream());
  target.finish();
  return outcome.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "coadjoint-orbit geometry and orbit-foliation classification for the "
      "fourteen MD5 families"};
  app.name("md5fol");
  app.require_subcommand(1);

  CommonArgs common;
  GridArgs grid;
  std::string format_sample = "json";
  std::string format_verify = "text";
  std::string out_path;
  std::string scope = "all";
  bool inverse = false;
  RunConfig cfg;

  const auto add_common = [&common](CLI::App* cmd, bool need_point) {
    cmd->add_option("--family", common.family, "family tag, e.g. G5_4_8")
        ->required();
    cmd->add_option("--params", common.params,
                    "family parameters, e.g. lambda=2 or lambda1=2,lambda2=3");
    auto* pt = cmd->add_option("--point", common.point,
                               "covector alpha,beta,gamma,delta,sigma");
    if (need_point) pt->required();
  };
  const auto add_tols = [&common](CLI::App* cmd) {
    cmd->add_option("--tol-rank", common.tol.rank_tol, "rank tolerance");
    cmd->add_option("--tol-residual", common.tol.residual_tol,
                    "tangency residual tolerance");
    cmd->add_option("--tol-membership", common.tol.membership_tol,
                    "leaf-membership tolerance");
  };

  CLI::App* classify =
      app.add_subcommand("classify", "stratum, orbit dimension and "
                                     "foliation type of a covector");
  add_common(classify, true);
  add_tols(classify);

  CLI::App* sample = app.add_subcommand(
      "orbit-sample", "tabulate the orbit chart through a covector on an "
                      "(x, a) grid");
  add_common(sample, true);
  sample->add_option("--x-min", grid.x_min, "grid start in x");
  sample->add_option("--x-max", grid.x_max, "grid end in x");
  sample->add_option("--x-count", grid.x_count, "grid points in x");
  sample->add_option("--a-min", grid.a_min, "grid start in a");
  sample->add_option("--a-max", grid.a_max, "grid end in a");
  sample->add_option("--a-count", grid.a_count, "grid points in a");
  sample->add_option("--format", format_sample, "json or csv");
  sample->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* equiv = app.add_subcommand(
      "equiv-map", "apply the leaf-preserving map onto the canonical "
                   "foliation of the family's type");
  add_common(equiv, true);
  equiv->add_flag("--inverse", inverse, "apply the inverse map");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the randomized property suites and report");
  verify->add_option("--scope", scope, "all or a family tag");
  verify->add_option("--seed", cfg.seed, "sampling seed");
  verify->add_option("--n-samples", cfg.n_samples, "samples per suite");
  verify->add_option("--format", format_verify, "text or json");
  verify->add_option("--out", out_path, "output file (default stdout)");
  verify->add_option("--tol-rank", cfg.tolerances.rank_tol, "rank tolerance");
  verify->add_option("--tol-residual", cfg.tolerances.residual_tol,
                     "tangency residual tolerance");
  verify->add_option("--tol-membership", cfg.tolerances.membership_tol,
                     "leaf-membership tolerance");

  std::vector<std::string> argv_store = args;
  std::vector<char*> argv;
  argv.push_back(const_cast<char*>("md5fol"));
  for (std::string& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*classify) {
      common.tol.validate();
      return cmd_classify(common, out);
    }
    if (*sample) {
      return cmd_orbit_sample(common, grid, format_sample, out_path, out, err);
    }
    if (*equiv) {
      return cmd_equiv_map(common, inverse, out);
    }
    if (*verify) {
      if (format_verify == "json")
        cfg.format = ReportFormat::json;
      else if (format_verify != "text")
        throw ConstraintViolation("verify supports --format text or json");
      return cmd_verify(scope, cfg, out_path, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ConstraintViolation& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace md5fol
