#include "pgraph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pgraph/filters.hpp"
#include "pgraph/spielberg.hpp"

namespace pgraph {

std::string graph_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

// Stem depth of the eventually periodic basis used for Omega on the hybrid graph.
constexpr std::size_t kTailStemBlocks = 2;

CheckRecord skipped(const std::string& id, const std::string& why) {
  return CheckRecord{id, "", Status::Skipped, {}, why, {}};
}

std::optional<Representation> representation_for(const LoadedSpec& spec, Flavor flavor, std::string& why) {
  if (flavor == Flavor::Toeplitz) return Representation::on_filters(spec.graph);
  if (!spec.graph->truncated()) return Representation::on_ultrafilters(spec.graph);
  if (spec.hybrid) return Representation::on_tails(spec.graph, hybrid_tails(*spec.hybrid, kTailStemBlocks));
  why = "no ultrafilter model for a truncated graph of this kind";
  return std::nullopt;
}

std::vector<GroupElement> colour_degrees(const Group& g) {
  std::vector<GroupElement> out;
  for (int c = 0; c < g.colour_count(); ++c) out.push_back(g.colour_degree(c));
  return out;
}

std::vector<std::vector<GroupElement>> norm_families(const Group& g) {
  std::vector<GroupElement> cols = colour_degrees(g);
  std::vector<std::vector<GroupElement>> out;
  if (cols.empty()) return out;
  std::optional<GroupElement> top = cols.front();
  for (const auto& c : cols) {
    if (!top) break;
    top = join(*top, c);
  }
  for (const auto& c : cols) {
    if (top && *top != c)
      out.push_back({c, *top});
    else
      out.push_back({c});
  }
  return out;
}

}  // namespace

VerificationReport run_suite(const LoadedSpec& spec, const std::string& suite, Flavor flavor, std::uint64_t seed,
                             const std::string& hash) {
  VerificationReport rep;
  rep.suite = suite + "/" + to_string(flavor);
  rep.graph_hash = hash;
  rep.bounds = spec.graph->bound().describe();
  rep.seed = seed;

  if (suite == "spielberg" && !spec.hybrid) throw PreconditionError("the spielberg suite needs a [hybrid] spec");

  std::string why;
  auto r = representation_for(spec, flavor, why);
  if (!r) {
    rep.checks.push_back(skipped(suite, why));
    return rep;
  }
  const Group& g = spec.graph->group();
  if (suite == "relations") {
    rep.append(check_balanced_relations(*r));
    rep.append(check_path_relations(*r));
  } else if (suite == "gaps") {
    rep.append(gap_suite(*r, 4));
  } else if (suite == "theta") {
    std::vector<GroupElement> degrees = vee_closure(colour_degrees(g));
    rep.append(theta_suite(*r, degrees, 2));
    rep.append(balanced_dim_suite(*r, degrees));
  } else if (suite == "decomp85" || suite == "decomposition") {
    rep.append(decomposition_suite(*r, 3));
  } else if (suite == "norms") {
    rep.append(norm_suite(*r, norm_families(g), seed, 100));
  } else if (suite == "grading") {
    rep.append(grading_suite(*r, seed, 1000));
  } else if (suite == "spielberg") {
    const HybridGraph& h = *spec.hybrid;
    if (flavor == Flavor::Boundary) rep.append(check_spielberg_relations(h, *r));
    rep.checks.push_back(verify_t4_hybrid(h, hybrid_pairs(h, 2), *r));
  } else {
    throw PreconditionError("unknown suite " + suite);
  }
  return rep;
}

namespace {

const std::vector<std::string> kSuites = {"relations", "gaps", "theta", "decomp85", "norms", "spielberg", "grading"};

struct Options {
  std::string spec;
  std::string bound;
  std::uint64_t seed = 0;
  std::size_t cap = 200000;
  std::vector<std::string> pair;
  bool ultra = false;
  std::string suite;
  std::string flavor = "t";
  std::string format = "text";
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedSpec load(const Options& o, std::string& hash) {
  std::string text = read_file(o.spec);
  hash = graph_hash(text);
  std::optional<std::vector<std::int64_t>> bound;
  if (!o.bound.empty()) {
    try {
      bound = parse_bound_numbers(o.bound);
    } catch (const SpecError& e) {
      throw std::invalid_argument(std::string("--bound: ") + e.what());
    }
  }
  LoadedSpec spec = parse_spec(text, bound);
  if (spec.graph->paths().size() > o.cap)
    throw CapExceeded(std::to_string(spec.graph->paths().size()) + " paths exceed --cap " + std::to_string(o.cap));
  return spec;
}

ReportFormat format_of(const std::string& f) { return f == "json" ? ReportFormat::Json : ReportFormat::Text; }
Flavor flavor_of(const std::string& f) { return f == "omega" ? Flavor::Boundary : Flavor::Toeplitz; }

int cmd_validate(const Options& o, std::ostream& out) {
  std::string hash;
  LoadedSpec spec = load(o, hash);
  ValidationReport v = validate(*spec.graph);
  for (const auto& x : v.violations) {
    out << x.kind << ":";
    for (const auto& p : x.paths) out << " " << p;
    out << "  " << x.message << "\n";
  }
  out << spec.graph->paths().size() << " paths, " << v.pairs_checked << " pairs, " << v.triples_checked
      << " triples, " << v.factorizations_checked << " factorizations checked (" << spec.graph->bound().describe()
      << ")\n";
  out << v.violations.size() << " violations\n";
  return v.ok() ? kOk : kCheckFailed;
}

Path parse_token(const PGraph& g, const std::string& tok) {
  auto p = g.parse_path(tok);
  if (!p) throw std::invalid_argument("unknown path " + tok);
  return *p;
}

int cmd_mce(const Options& o, std::ostream& out) {
  std::string hash;
  LoadedSpec spec = load(o, hash);
  const PGraph& g = *spec.graph;
  Path mu = parse_token(g, o.pair.at(0));
  Path nu = parse_token(g, o.pair.at(1));
  PathSet m = spec.hybrid ? mce_hybrid(*spec.hybrid, mu, nu) : mce(g, mu, nu);
  out << "MCE(" << g.name(mu) << ", " << g.name(nu) << ") = " << g.names(m) << "\n";
  return kOk;
}

int cmd_filters(const Options& o, std::ostream& out) {
  std::string hash;
  LoadedSpec spec = load(o, hash);
  const PGraph& g = *spec.graph;
  FilterSpace fs = enumerate_filters(g, o.ultra, o.cap);
  for (std::size_t i = 0; i < fs.filters.size(); ++i) {
    const Filter& f = fs.filters[i];
    out << g.vertex_name(f.root()) << " top " << g.name(f.top()) << (fs.ultra[i] ? " ultra" : "") << " "
        << g.names(f.elements()) << "\n";
  }
  out << fs.filters.size() << (o.ultra ? " ultrafilters" : " filters");
  if (fs.truncated) out << " (relative to " << g.bound().describe() << ")";
  out << "\n";
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  std::string hash;
  LoadedSpec spec = load(o, hash);
  VerificationReport rep = run_suite(spec, o.suite, flavor_of(o.flavor), o.seed, hash);
  out << emit_report(rep, format_of(o.format));
  return rep.failed() ? kCheckFailed : kOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  std::string hash;
  LoadedSpec spec = load(o, hash);
  std::vector<VerificationReport> reps;
  for (Flavor f : {Flavor::Toeplitz, Flavor::Boundary})
    for (const auto& s : kSuites) {
      if (s == "spielberg" && !spec.hybrid) continue;
      reps.push_back(run_suite(spec, s, f, o.seed, hash));
    }
  std::string doc = emit_reports(reps, format_of(o.format));
  if (o.out.empty() || o.out == "-") {
    out << doc;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << doc) || !f.flush()) throw std::invalid_argument("cannot write " + o.out);
    out << "wrote " << reps.size() << " suites to " << o.out << "\n";
  }
  bool failed = std::any_of(reps.begin(), reps.end(), [](const auto& r) { return r.failed(); });
  return failed ? kCheckFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"P-graph verification tool", "pgraph"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("spec", o.spec, "graph spec file")->required();
    c->add_option("--bound", o.bound, "degree bound numbers, e.g. \"3 3\"");
    c->add_option("--seed", o.seed, "seed for random suites");
    c->add_option("--cap", o.cap, "maximum number of enumerated paths or filters");
  };
  auto* validate_cmd = app.add_subcommand("validate", "check the factorisation axioms");
  common(validate_cmd);
  auto* mce_cmd = app.add_subcommand("mce", "minimal common extensions of two paths");
  common(mce_cmd);
  mce_cmd->add_option("--pair", o.pair, "two path tokens")->required()->expected(2);
  auto* filters_cmd = app.add_subcommand("filters", "list the filter space");
  common(filters_cmd);
  filters_cmd->add_flag("--ultra", o.ultra, "ultrafilters only");
  auto* check_cmd = app.add_subcommand("check", "run one verification suite");
  common(check_cmd);
  check_cmd->add_option("--suite", o.suite)->required()->check(CLI::IsMember(
      {"relations", "gaps", "theta", "decomp85", "decomposition", "norms", "spielberg", "grading"}));
  check_cmd->add_option("--flavor", o.flavor)->check(CLI::IsMember({"t", "omega"}));
  check_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  auto* report_cmd = app.add_subcommand("report", "run every suite in both flavors");
  common(report_cmd);
  report_cmd->add_option("--out", o.out, "output path, - for stdout");
  report_cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadFlags;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (mce_cmd->parsed()) return cmd_mce(o, out);
    if (filters_cmd->parsed()) return cmd_filters(o, out);
    if (check_cmd->parsed()) return cmd_check(o, out);
    if (report_cmd->parsed()) return cmd_report(o, out);
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const TruncationError& e) {
    err << "outside bound: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kBadFlags;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadFlags;
  }
  return kBadFlags;
}

}  // namespace pgraph
