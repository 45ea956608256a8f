#include "bwm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "bwm/consistency.hpp"
#include "bwm/io.hpp"
#include "bwm/service.hpp"

namespace bwm::cli {

namespace {

int env_scale_max() {
  const char* v = std::getenv("BWM_SCALE_MAX");
  if (v == nullptr || *v == '\0') return kSaatyScaleMax;
  char* end = nullptr;
  const long s = std::strtol(v, &end, 10);
  if (*end != '\0' || s < 1) {
    throw Error(ErrorCode::SchemaViolation, std::string("BWM_SCALE_MAX must be a positive integer, got ") + v,
                {"BWM_SCALE_MAX"});
  }
  return static_cast<int>(s);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ValidatedPcs<double> load_pcs(const std::string& path, int scale_max) {
  const std::string text = io::read_file(path);
  return ends_with(path, ".csv") ? io::parse_pcs_csv(text, scale_max) : io::parse_pcs(text, scale_max);
}

void print_warnings(const std::vector<Warning>& ws, std::ostream& err) {
  for (const auto& w : ws) err << "warning: " << w.field << ": " << w.message << '\n';
}

std::string join(const Vector<double>& v) {
  std::ostringstream os;
  for (Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << v(i);
  return os.str();
}

std::string render_class(const EquivalenceClass& cls, bool diagnose, io::Format format) {
  if (format == io::Format::Json) return io::equivalence_to_json(cls, diagnose).dump(2) + "\n";
  std::ostringstream os;
  if (format == io::Format::Csv) {
    os << "status,best_to_others,others_to_worst\n";
    for (const auto& m : cls.members) os << "certified," << join(m.best_to_others()) << ',' << join(m.others_to_worst()) << '\n';
    for (const auto& m : cls.uncertified) os << "uncertified," << join(m.best_to_others()) << ',' << join(m.others_to_worst()) << '\n';
    return os.str();
  }
  os << "vary " << to_string(cls.mode) << ": " << cls.count << " equivalent PCSs among " << cls.candidates
     << " candidates\n";
  for (const auto& m : cls.members)
    os << "  A_b = (" << join(m.best_to_others()) << ")  A_w = (" << join(m.others_to_worst()) << ")\n";
  if (diagnose) {
    os << cls.uncertified.size() << " further candidates share the optimum without certification\n";
    for (const auto& m : cls.uncertified)
      os << "  A_b = (" << join(m.best_to_others()) << ")  A_w = (" << join(m.others_to_worst()) << ")\n";
  }
  return os.str();
}

std::string render_ci_table(int n_min, int n_max, int a_min, int a_max, io::Format format) {
  if (format == io::Format::Json) {
    io::Json j = io::Json::array();
    for (int n = n_min; n <= n_max; ++n)
      for (int a = a_min; a <= a_max; ++a)
        j.push_back({{"n", n}, {"abw", a}, {"ci", consistency_index<double>(n, a)}});
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  const bool csv = format == io::Format::Csv;
  os << (csv ? "n" : "n\\abw");
  for (int a = a_min; a <= a_max; ++a) os << (csv ? "," : "  ") << (csv ? std::to_string(a) : "     " + std::to_string(a));
  os << '\n';
  for (int n = n_min; n <= n_max; ++n) {
    std::string label = std::to_string(n);
    os << (csv ? label : label + std::string(5 - std::min<std::size_t>(label.size(), 4), ' '));
    for (int a = a_min; a <= a_max; ++a) os << (csv ? "," : "  ") << io::fixed4(consistency_index<double>(n, a));
    os << '\n';
  }
  return os.str();
}

io::Format format_of(const std::string& s) { return *io::parse_format(s); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form linear Best-Worst Method solver", "bwm"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "table", "csv"});

  std::string input, format = "table", vary = "worst";
  bool with_verify = false, count_only = false, diagnose = false;
  double tol = 1e-6;
  int n_min = 3, n_max = 10, a_min = 2, a_max = 9, port = 8080;
  std::string host = "127.0.0.1", static_dir;
  std::uint64_t max_candidates = 1'000'000;

  auto* solve = app.add_subcommand("solve", "Solve a PCS in closed form");
  solve->add_option("-i,--input", input, "PCS file (.json or .csv)")->required();
  solve->add_option("--format", format, "json, table or csv")->check(formats);
  solve->add_flag("--verify", with_verify, "Cross-check against the simplex oracle");
  solve->add_option("--tol", tol, "Verification tolerance");

  auto* ci = app.add_subcommand("ci-table", "Print the consistency index grid");
  ci->add_option("--n-min", n_min)->check(CLI::Range(3, 1000));
  ci->add_option("--n-max", n_max)->check(CLI::Range(3, 1000));
  ci->add_option("--abw-min", a_min)->check(CLI::Range(1, 1000));
  ci->add_option("--abw-max", a_max)->check(CLI::Range(1, 1000));
  ci->add_option("--format", format, "json, table or csv")->check(formats);

  auto* sens = app.add_subcommand("sensitivity", "Enumerate the equivalence class of a PCS");
  sens->add_option("-i,--input", input, "PCS file")->required();
  sens->add_option("--vary", vary, "worst, best or both")->check(CLI::IsMember({"worst", "best", "both"}));
  sens->add_flag("--count-only", count_only, "Print only the class size");
  sens->add_flag("--diagnose", diagnose, "Also report uncertified members with the same optimum");
  sens->add_option("--format", format, "json, table or csv")->check(formats);

  auto* ver = app.add_subcommand("verify", "Compare the closed form with the simplex oracle");
  ver->add_option("-i,--input", input, "PCS file")->required();
  ver->add_option("--tol", tol, "Tolerance on eps* and weights");
  ver->add_option("--format", format, "json, table or csv")->check(formats);

  auto* agg = app.add_subcommand("aggregate", "Aggregate a multi-expert study");
  agg->add_option("-i,--input", input, "Study file")->required();
  agg->add_option("--format", format, "json, table or csv")->check(formats);

  auto* srv = app.add_subcommand("serve", "Run the HTTP API");
  srv->add_option("--port", port)->check(CLI::Range(0, 65535));
  srv->add_option("--host", host);
  srv->add_option("--static", static_dir, "Directory served at /")->check(CLI::ExistingDirectory);
  srv->add_option("--max-candidates", max_candidates, "Sensitivity request cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const int scale_max = env_scale_max();

    if (solve->parsed()) {
      const auto v = load_pcs(input, scale_max);
      print_warnings(v.warnings, err);
      const auto sol = solve_analytical(v.pcs);
      out << io::render_solution(v.pcs, sol, format_of(format));
      if (!with_verify) return 0;
      const auto rep = verify(v.pcs, tol);
      out << '\n' << io::render_verification(v.pcs, rep, format_of(format));
      return rep.pass ? 0 : 2;
    }
    if (ci->parsed()) {
      if (n_min > n_max || a_min > a_max) {
        err << "error: empty range\n";
        return 1;
      }
      out << render_ci_table(n_min, n_max, a_min, a_max, format_of(format));
      return 0;
    }
    if (sens->parsed()) {
      const auto v = load_pcs(input, scale_max);
      print_warnings(v.warnings, err);
      EnumerationOptions opt;
      opt.diagnose = diagnose;
      const auto cls = enumerate_equivalent({v.pcs, *parse_vary_mode(vary), scale_max}, opt);
      if (count_only) {
        out << cls.count << '\n';
      } else {
        out << render_class(cls, diagnose, format_of(format));
      }
      return 0;
    }
    if (ver->parsed()) {
      const auto v = load_pcs(input, scale_max);
      print_warnings(v.warnings, err);
      const auto rep = verify(v.pcs, tol);
      out << io::render_verification(v.pcs, rep, format_of(format));
      err << "timing: closed form " << rep.analytical_time.count() << " ns, simplex " << rep.simplex_time.count()
          << " ns\n";
      return rep.pass ? 0 : 2;
    }
    if (agg->parsed()) {
      const auto doc = io::parse_study(io::read_file(input), scale_max);
      print_warnings(doc.warnings, err);
      out << io::render_aggregation(solve_study(doc.study), format_of(format));
      return 0;
    }
    if (srv->parsed()) {
      service::Options opt;
      opt.default_scale_max = scale_max;
      opt.max_candidates = max_candidates;
      if (!static_dir.empty()) opt.static_dir = static_dir;
      if (!service::serve(host, port, opt, err)) {
        err << "error: cannot bind " << host << ":" << port << '\n';
        return 1;
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace bwm::cli
