#include "eqw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "eqw/apps.hpp"
#include "eqw/bounds.hpp"
#include "eqw/io.hpp"
#include "eqw/pade.hpp"
#include "eqw/prony.hpp"

namespace eqw::cli {

namespace {

struct CommandInfo {
  Command command;
  std::string_view name;
  std::vector<std::string_view> parameters;
};

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table = {
      {Command::Pade, "pade", {"n", "h", "h-radius", "tol", "max-iter", "precision"}},
      {Command::Prony, "prony", {"grid", "tol", "max-iter", "precision"}},
      {Command::PronyClassical, "prony-classical", {"rank-tol", "sep-tol", "residual-tol", "tol", "max-iter"}},
      {Command::ChebNodes, "cheb-nodes", {"n", "variant", "tol", "max-iter", "precision"}},
      {Command::Quadrature, "quadrature", {"n", "variant", "kernel", "x", "tol", "max-iter", "precision"}},
      {Command::DiffFormula, "diff-formula", {"t", "n", "tol", "max-iter", "precision"}},
      {Command::VerifyBounds, "verify-bounds", {"n", "a", "trials", "seed", "exec"}},
      {Command::Eps, "eps", {"n"}},
  };
  return table;
}

const CommandInfo& info(Command c) {
  for (const CommandInfo& i : commands())
    if (i.command == c) return i;
  fail(ErrorKind::InvalidArgument, "unknown command");
}

// Typed access to the parameter map; every lookup validates.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  std::string text(const std::string& key, const std::string& fallback) const {
    const auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second;
  }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) {
      if (!fallback) fail(ErrorKind::InvalidArgument, "missing --" + key);
      return *fallback;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || !std::isfinite(v))
      fail(ErrorKind::InvalidArgument, "--" + key + " expects a finite number, got '" + it->second + "'");
    return v;
  }

  long long integer(const std::string& key, std::optional<long long> fallback = std::nullopt) const {
    const auto it = raw_.find(key);
    if (it == raw_.end()) {
      if (!fallback) fail(ErrorKind::InvalidArgument, "missing --" + key);
      return *fallback;
    }
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(it->second, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != it->second.size() || it->second.empty())
      fail(ErrorKind::InvalidArgument, "--" + key + " expects an integer, got '" + it->second + "'");
    return v;
  }

  int count(const std::string& key, int min, std::optional<long long> fallback = std::nullopt) const {
    const long long v = integer(key, fallback);
    if (v < min || v > 1000000000)
      fail(ErrorKind::InvalidArgument, "--" + key + " must be at least " + std::to_string(min));
    return static_cast<int>(v);
  }

 private:
  const std::map<std::string, std::string>& raw_;
};

MomentOptions moment_options(const Params& p, int cap) {
  MomentOptions o;
  o.max_n = cap;
  o.roots.tol = p.real("tol", o.roots.tol);
  require(o.roots.tol > 0.0, ErrorKind::InvalidArgument, "--tol must be positive");
  o.roots.max_iter = p.count("max-iter", 1, o.roots.max_iter);
  const std::string prec = p.text("precision", "adaptive");
  if (prec == "double")
    o.precision = Precision::Double;
  else if (prec == "adaptive")
    o.precision = Precision::Adaptive;
  else
    fail(ErrorKind::InvalidArgument, "--precision must be double or adaptive");
  return o;
}

QuadratureVariant variant_of(const Params& p) {
  const std::string v = p.text("variant", "standard");
  if (v == "standard") return QuadratureVariant::Standard;
  if (v == "shifted") return QuadratureVariant::Shifted;
  fail(ErrorKind::InvalidArgument, "--variant must be standard or shifted");
}

void check_n(int n, int cap) {
  if (n > cap)
    fail(ErrorKind::InvalidArgument, "n = " + std::to_string(n) + " exceeds the precision cap " +
                                         std::to_string(cap) + " (set EQW_MAX_N to override)");
}

const std::filesystem::path& need_input(const JobSpec& spec, const char* flag) {
  if (!spec.input_path) fail(ErrorKind::InvalidArgument, std::string("missing ") + flag);
  return *spec.input_path;
}

using io::Json;

Json node_block(const NodeSet& nodes) { return io::to_json(nodes.values()); }

Json run_pade(const JobSpec& spec, const Params& p, int cap, std::optional<PadeInterpolant>& result) {
  const io::ValuesDocument fdoc = io::read_values(need_input(spec, "--f"));
  const int n = p.count("n", 1, fdoc.n);
  check_n(n, cap);
  const MomentOptions opts = moment_options(p, cap);
  const std::string hname = p.text("h", "exp");
  Kernel h = ExpKernel{};
  if (hname == "geometric") {
    h = GeometricKernel{};
  } else if (hname != "exp") {
    const io::ValuesDocument hdoc = io::read_values(hname);
    const double radius = p.real("h-radius", std::numeric_limits<double>::infinity());
    require(radius > 0.0, ErrorKind::InvalidArgument, "--h-radius must be positive");
    h = TaylorKernel{TaylorSeries(hdoc.values), radius};
  }
  result.emplace(solve_pade(TaylorSeries(fdoc.values), h, n, opts));
  const PadeInterpolant& H = *result;
  const TaylorSeries taylor = taylor_of_interpolant(H, n);
  Json doc;
  doc["command"] = "pade";
  doc["n"] = n;
  doc["kernel"] = hname == "exp" || hname == "geometric" ? hname : "taylor";
  doc["mu"] = io::to_json(H.mu());
  doc["nodes"] = node_block(H.nodes());
  doc["taylor"] = io::to_json(taylor.coefficients());
  doc["moment_residual"] = H.moment_residual();
  return doc;
}

Json run_prony(const JobSpec& spec, const Params& p, int cap, std::optional<ExpInterpolant>& result) {
  const io::ValuesDocument table = io::read_values(need_input(spec, "--table"));
  if (static_cast<int>(table.values.size()) != table.n + 1)
    fail(ErrorKind::InvalidArgument, "table needs n + 1 values g(0)..g(n)");
  check_n(table.n, cap);
  const MomentOptions opts = moment_options(p, cap);
  if (p.has("grid")) {
    std::istringstream in(p.text("grid", ""));
    double a = 0.0;
    double b = 0.0;
    std::string rest;
    if (!(in >> a >> b) || (in >> rest))
      fail(ErrorKind::InvalidArgument, "--grid expects two numbers a b");
    result.emplace(rescale_to_grid(table.values, a, b, opts));
  } else {
    result.emplace(solve_equal_weight_prony(SampleTable(table.values), opts));
  }
  const ExpInterpolant& H = *result;
  Json doc;
  doc["command"] = "prony";
  doc["n"] = H.n();
  doc["mu"] = io::to_json(H.mu());
  doc["bases"] = io::to_json(H.bases().values());
  Json freqs = Json::array();
  for (const Frequency& f : H.frequencies()) freqs.push_back(io::to_json(f));
  doc["frequencies"] = freqs;
  if (H.grid()) doc["grid"] = Json::array({H.grid()->a, H.grid()->b});
  Json fit = Json::array();
  double worst = 0.0;
  for (int m = 0; m <= H.n(); ++m) {
    const double x = H.grid() ? H.grid()->a + (H.grid()->b - H.grid()->a) * m / H.n() : m;
    const Complex value = evaluate_exp(H, x);
    worst = std::max(worst, std::abs(value - table.values[static_cast<std::size_t>(m)]));
    fit.push_back(io::to_json(value));
  }
  doc["fitted"] = fit;
  doc["interpolation_error"] = worst;
  doc["moment_residual"] = H.moment_residual();
  return doc;
}

Json run_classical(const JobSpec& spec, const Params& p, bool& unsolvable) {
  const io::ValuesDocument mdoc = io::read_values(need_input(spec, "--moments"));
  ClassicalOptions opts;
  opts.rank_tol = p.real("rank-tol", opts.rank_tol);
  opts.separation_tol = p.real("sep-tol", opts.separation_tol);
  opts.residual_tol = p.real("residual-tol", opts.residual_tol);
  opts.roots.tol = p.real("tol", opts.roots.tol);
  opts.roots.max_iter = p.count("max-iter", 1, opts.roots.max_iter);
  require(opts.rank_tol >= 0.0 && opts.separation_tol >= 0.0 && opts.residual_tol > 0.0,
          ErrorKind::InvalidArgument, "tolerances must be nonnegative");
  const ClassicalResult result = solve_classical_prony(WeightedMoments(mdoc.values), opts);
  Json doc;
  doc["command"] = "prony-classical";
  doc["n"] = static_cast<int>(mdoc.values.size()) / 2;
  if (const auto* u = std::get_if<Unsolvable>(&result)) {
    unsolvable = true;
    doc["status"] = "unsolvable";
    doc["reason"] = std::string(to_string(u->reason));
    doc["measure"] = u->measure;
    doc["detail"] = u->detail;
    return doc;
  }
  const auto& sol = std::get<ClassicalSolution>(result);
  doc["status"] = "solved";
  doc["weights"] = io::to_json(sol.weights);
  doc["bases"] = io::to_json(sol.bases);
  Json freqs = Json::array();
  for (const Frequency& f : sol.frequencies) freqs.push_back(io::to_json(f));
  doc["frequencies"] = freqs;
  doc["residual"] = sol.residual;
  return doc;
}

Json rule_json(const QuadratureRule& rule) {
  Json doc;
  doc["n"] = rule.n;
  doc["variant"] = std::string(to_string(rule.variant));
  doc["weight"] = rule.weight;
  doc["nodes"] = node_block(rule.nodes);
  doc["all_real"] = all_nodes_real(rule.nodes);
  doc["moment_residual"] = rule.moment_residual;
  return doc;
}

Integrand kernel_of(const std::string& name) {
  if (name == "exp") return Integrand::complex([](Complex w) { return std::exp(w); });
  if (name == "cos") return Integrand::complex([](Complex w) { return std::cos(w); });
  if (name == "sin") return Integrand::complex([](Complex w) { return std::sin(w); });
  const std::string prefix = "monomial:";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    int d = -1;
    try {
      d = std::stoi(name.substr(prefix.size()), &used);
    } catch (const std::exception&) {
      d = -1;
    }
    if (d < 0 || used != name.size() - prefix.size())
      fail(ErrorKind::InvalidArgument, "monomial degree must be a nonnegative integer");
    return Integrand::complex([d](Complex w) { return std::pow(w, d); });
  }
  fail(ErrorKind::InvalidArgument, "--kernel must be exp, cos, sin or monomial:<d>");
}

Json run_eps(const Params& p) {
  const int n = p.count("n", 2);
  const EpsilonN e = solve_epsilon_equation(n);
  Json doc;
  doc["command"] = "eps";
  doc["n"] = n;
  doc["epsilon_exact"] = e.epsilon_exact;
  doc["epsilon_closed"] = e.epsilon_closed;
  doc["equation_residual"] = epsilon_function(e.epsilon_exact, n);
  doc["iterations"] = e.iterations;
  return doc;
}

Json run_verify(const Params& p, int cap) {
  const int n = p.count("n", 2);
  check_n(n, cap);
  const double a = p.real("a", 1.0);
  require(a >= 0.0, ErrorKind::InvalidArgument, "--a must be nonnegative");
  const int trials = p.count("trials", 1, 1000);
  const long long seed = p.integer("seed", static_cast<long long>(kDefaultSeed));
  require(seed >= 0, ErrorKind::InvalidArgument, "--seed must be nonnegative");
  const std::string exec_name = p.text("exec", "auto");
  kernels::Exec exec = kernels::Exec::Auto;
  if (exec_name == "serial")
    exec = kernels::Exec::Serial;
  else if (exec_name == "parallel")
    exec = kernels::Exec::Parallel;
  else if (exec_name != "auto")
    fail(ErrorKind::InvalidArgument, "--exec must be serial, parallel or auto");
  const TrialReport r = verify_bound_randomized(n, a, trials, static_cast<std::uint64_t>(seed), exec);
  Json doc;
  doc["command"] = "verify-bounds";
  doc["n"] = r.n;
  doc["a"] = r.a;
  doc["trials"] = r.trials;
  doc["seed"] = r.seed;
  doc["bound"] = r.bound;
  doc["theorem2_sharp"] = r.theorem2_sharp;
  doc["violations"] = r.violations;
  doc["combined_violations"] = r.combined_violations;
  doc["max_ratio"] = r.max_ratio;
  doc["max_moment_residual"] = r.max_moment_residual;
  return doc;
}

void check_parameters(const JobSpec& spec) {
  const auto allowed = allowed_parameters(spec.command);
  for (const auto& [key, value] : spec.parameters)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(ErrorKind::InvalidArgument,
           "--" + key + " is not a parameter of " + std::string(to_string(spec.command)));
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  for (const CommandInfo& i : commands())
    if (i.command == c) return i.name;
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
  for (const CommandInfo& i : commands())
    if (i.name == name) return i.command;
  return std::nullopt;
}

std::vector<std::string_view> command_names() {
  std::vector<std::string_view> out;
  for (const CommandInfo& i : commands()) out.push_back(i.name);
  return out;
}

std::vector<std::string_view> allowed_parameters(Command c) { return info(c).parameters; }

int precision_cap(std::ostream& err) {
  const char* env = std::getenv("EQW_MAX_N");
  if (env == nullptr) return kDefaultMaxN;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 100000)
    fail(ErrorKind::InvalidArgument, std::string("EQW_MAX_N must be a positive integer, got '") + env + "'");
  err << "warning: precision cap raised to n = " << v
      << "; the moment to node map is ill-conditioned for large n and results may be inaccurate\n";
  return static_cast<int>(v);
}

int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    check_parameters(spec);
    const Params p(spec.parameters);
    const int cap = precision_cap(err);
    Json doc;
    bool unsolvable = false;
    const NodeSet* csv_nodes = nullptr;
    std::optional<QuadratureRule> rule;
    std::optional<DiffFormula> diff;
    std::optional<PadeInterpolant> pade;
    std::optional<ExpInterpolant> prony;
    switch (spec.command) {
      case Command::Pade:
        doc = run_pade(spec, p, cap, pade);
        csv_nodes = &pade->nodes();
        break;
      case Command::Prony:
        doc = run_prony(spec, p, cap, prony);
        csv_nodes = &prony->bases();
        break;
      case Command::PronyClassical:
        doc = run_classical(spec, p, unsolvable);
        break;
      case Command::ChebNodes: {
        const int n = p.count("n", 1);
        check_n(n, cap);
        rule.emplace(chebyshev_nodes(n, variant_of(p), moment_options(p, cap)));
        doc["command"] = "cheb-nodes";
        const Json block = rule_json(*rule);
        for (auto it = block.begin(); it != block.end(); ++it) doc[it.key()] = it.value();
        csv_nodes = &rule->nodes;
        break;
      }
      case Command::Quadrature: {
        const int n = p.count("n", 1);
        check_n(n, cap);
        const double x = p.real("x", 1.0);
        require(x > 0.0, ErrorKind::InvalidArgument, "--x must be positive");
        const std::string kname = p.text("kernel", "exp");
        const Integrand h = kernel_of(kname);
        rule.emplace(chebyshev_nodes(n, variant_of(p), moment_options(p, cap)));
        doc["command"] = "quadrature";
        const Json block = rule_json(*rule);
        for (auto it = block.begin(); it != block.end(); ++it) doc[it.key()] = it.value();
        doc["kernel"] = kname;
        doc["x"] = x;
        doc["integral"] = io::to_json(integrate(*rule, h, x));
        csv_nodes = &rule->nodes;
        break;
      }
      case Command::DiffFormula: {
        const double t = p.real("t");
        const int n = p.count("n", 2);
        check_n(n, cap);
        diff.emplace(diff_formula(t, n, moment_options(p, cap)));
        doc["command"] = "diff-formula";
        doc["t"] = diff->t;
        doc["n"] = diff->n;
        doc["mu"] = diff->mu;
        doc["nodes"] = node_block(diff->nodes);
        doc["max_abs_node"] = diff->nodes.max_abs();
        doc["node_bound"] = diff->node_bound;
        doc["envelope"] = Json{{"gamma", diff->gamma}, {"a", diff->a}, {"r0", diff->t},
                               {"radius", 1.0 / ((1.0 + 2.0 * diff->gamma) * diff->a)}};
        doc["moment_residual"] = diff->moment_residual;
        csv_nodes = &diff->nodes;
        break;
      }
      case Command::VerifyBounds:
        doc = run_verify(p, cap);
        break;
      case Command::Eps:
        doc = run_eps(p);
        break;
    }

    const std::string text = io::dump(doc);
    if (spec.output_path) {
      std::ofstream file(*spec.output_path);
      if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + spec.output_path->string());
      file << text;
    } else {
      out << text;
    }
    if (spec.csv_path) {
      if (csv_nodes == nullptr)
        fail(ErrorKind::InvalidArgument, "--csv is not available for " + std::string(to_string(spec.command)));
      std::ofstream file(*spec.csv_path);
      if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + spec.csv_path->string());
      io::write_nodes_csv(file, csv_nodes->values());
    }
    if (unsolvable) {
      err << "error: Unsolvable: " << doc["reason"].get<std::string>() << ": "
          << doc["detail"].get<std::string>() << "\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.kind()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace eqw::cli
