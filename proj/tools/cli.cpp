#include "cli.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "descents/arrays.hpp"
#include "descents/chains.hpp"
#include "descents/diagnostics.hpp"
#include "descents/errors.hpp"
#include "descents/genfun.hpp"
#include "descents/kernels.hpp"
#include "descents/moments.hpp"
#include "descents/oracle.hpp"
#include "descents/sampling.hpp"
#include "descents/serialize.hpp"

namespace descents::cli {

namespace {

// Expression parsing ---------------------------------------------------------

struct Node {
  char op = 0;  // 0 literal, 'n' variable, or one of + - * / and 'u' (negation)
  Rational value;
  std::unique_ptr<Node> a, b;

  Rational eval(long n) const {
    switch (op) {
      case 0: return value;
      case 'n': return Rational(n);
      case 'u': return -a->eval(n);
      case '+': return a->eval(n) + b->eval(n);
      case '-': return a->eval(n) - b->eval(n);
      case '*': return a->eval(n) * b->eval(n);
      default: {
        Rational d = b->eval(n);
        if (sgn(d) == 0) throw std::invalid_argument("division by zero at n=" + std::to_string(n));
        return a->eval(n) / d;
      }
    }
  }
};

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  std::unique_ptr<Node> parse() {
    auto e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool take(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("bad expression \"" + s_ + "\": " + what);
  }
  static std::unique_ptr<Node> binary(char op, std::unique_ptr<Node> a, std::unique_ptr<Node> b) {
    auto n = std::make_unique<Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
  std::unique_ptr<Node> sum() {
    auto e = product();
    for (;;) {
      if (take('+')) e = binary('+', std::move(e), product());
      else if (take('-')) e = binary('-', std::move(e), product());
      else return e;
    }
  }
  std::unique_ptr<Node> product() {
    auto e = unary();
    for (;;) {
      if (take('*')) e = binary('*', std::move(e), unary());
      else if (take('/')) e = binary('/', std::move(e), unary());
      else return e;
    }
  }
  std::unique_ptr<Node> unary() {
    if (take('-')) return binary('u', unary(), nullptr);
    if (take('+')) return unary();
    return atom();
  }
  std::unique_ptr<Node> atom() {
    skip();
    if (take('(')) {
      auto e = sum();
      if (!take(')')) fail("missing ')'");
      return e;
    }
    if (pos_ < s_.size() && s_[pos_] == 'n') {
      ++pos_;
      auto v = std::make_unique<Node>();
      v->op = 'n';
      return maybe_implicit(std::move(v));
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
    auto v = std::make_unique<Node>();
    v->value = Rational(BigInt(s_.substr(start, pos_ - start)));
    return maybe_implicit(std::move(v));
  }
  // "2n" and "3(n+1)" read as products
  std::unique_ptr<Node> maybe_implicit(std::unique_ptr<Node> left) {
    if (pos_ < s_.size() && (s_[pos_] == 'n' || s_[pos_] == '(')) return binary('*', std::move(left), atom());
    return left;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

// Helpers --------------------------------------------------------------------

constexpr int kPass = 0;
constexpr int kVerdictFailed = 1;
constexpr int kUsage = 2;

struct Config {
  std::string cache_dir;
  bool no_cache = false;
  unsigned threads = 1;
  Budget budget;
  std::string format = "csv";
};

std::optional<std::filesystem::path> cache_path(const Config& cfg, const std::string& key) {
  if (cfg.no_cache) return std::nullopt;
  std::string dir = cfg.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("DESCENTS_CACHE_DIR")) dir = env;
  if (dir.empty()) return std::nullopt;
  return std::filesystem::path(dir) / (key + "-v" + std::to_string(kSchemaVersion) + ".json");
}

std::optional<Json> cache_load(const std::optional<std::filesystem::path>& path) {
  if (!path || !std::filesystem::exists(*path)) return std::nullopt;
  std::ifstream in(*path);
  try {
    return Json::parse(in);
  } catch (const Json::exception&) {
    return std::nullopt;  // unreadable entries are recomputed and overwritten
  }
}

void cache_store(const std::optional<std::filesystem::path>& path, const Json& j) {
  if (!path) return;
  std::filesystem::create_directories(path->parent_path());
  auto tmp = *path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, *path);
}

StatisticId statistic_id(const std::string& text, const std::string& cycle_type) {
  StatisticId id(parse_statistic(text));
  if (id.kind == Statistic::Conjugacy) {
    if (cycle_type.empty()) throw std::invalid_argument("conjugacy needs --cycle-type, e.g. --cycle-type 0,2");
    id.cycle_type = parse_cycle_type(cycle_type);
  }
  return id;
}

std::string table_key(const StatisticId& id, int N) {
  std::string key = "table-" + name(id.kind);
  if (id.kind == Statistic::Conjugacy)
    for (int c : id.cycle_type.counts) key += "-" + std::to_string(c);
  return key + "-N" + std::to_string(N);
}

DescentArray cached_rows(const StatisticId& id, int N, const Config& cfg) {
  auto path = cache_path(cfg, table_key(id, N));
  if (auto j = cache_load(path)) {
    DescentArray t = descent_array_from_json(*j);
    if (t.statistic == id) return t;
  }
  DescentArray t = build_rows(id, N, cfg.budget);
  cache_store(path, to_json(t));
  return t;
}

BivariateArray cached_bivariate(int N, const Config& cfg) {
  auto path = cache_path(cfg, "bitable-N" + std::to_string(N));
  if (auto j = cache_load(path)) return bivariate_array_from_json(*j);
  BivariateArray t = build_bivariate(N, cfg.budget);
  cache_store(path, to_json(t));
  return t;
}

void require_positive(int n, const std::string& flag) {
  if (n < 1) throw CLI::ValidationError(flag, "must be at least 1");
}

// Subcommands ----------------------------------------------------------------

int cmd_table(const StatisticId& id, int N, const Config& cfg, std::ostream& out) {
  if (id.kind != Statistic::Conjugacy) require_positive(N, "--n");
  DescentArray t = cached_rows(id, id.kind == Statistic::Conjugacy ? id.cycle_type.size() : N, cfg);
  if (cfg.format == "json") out << to_json(t).dump(2) << '\n';
  else write_csv(out, t);
  return kPass;
}

int cmd_bitable(int N, const Config& cfg, std::ostream& out) {
  require_positive(N, "--n");
  BivariateArray t = cached_bivariate(N, cfg);
  if (cfg.format == "json") out << to_json(t).dump(2) << '\n';
  else write_csv(out, t);
  return kPass;
}

int cmd_sample(Statistic s, int N, std::uint64_t paths, std::uint64_t seed, const Config& cfg, std::ostream& out) {
  require_positive(N, "--n");
  if (paths < 1) throw CLI::ValidationError("--paths", "must be at least 1");
  TransitionKernel kernel = kernel_for(s);
  SampleOptions opts;
  opts.threads = cfg.threads;
  SampleResult r = sample(kernel, N, paths, seed, opts);
  if (cfg.format == "json") {
    Json j = sample_summary(r);
    j["statistic"] = name(s);
    j["seed"] = std::to_string(seed);
    j["finals"] = r.finals;
    out << j.dump(2) << '\n';
  } else {
    write_sample_csv(out, r);
  }
  return kPass;
}

std::optional<MomentKind> kind_for(int order, bool central) {
  if (order == 1) return central ? std::nullopt : std::optional(MomentKind::Mean);
  if (order == 2 && central) return MomentKind::Variance;
  if (order == 3 && !central) return MomentKind::RawThird;
  if (order == 4 && central) return MomentKind::FourthCentralLeading;
  return std::nullopt;
}

int cmd_moments(Statistic s, int N, int order, bool central, const Config& cfg, std::ostream& out) {
  require_positive(N, "--n");
  if (order < 1 || order > 4) throw CLI::ValidationError("--order", "must be 1..4");
  Json j;
  j["statistic"] = name(s);
  j["n"] = N;
  bool ok = true;
  auto closed = [&](MomentKind kind, const Rational& table_value) {
    Json c;
    c["kind"] = moment_kind_name(kind);
    for (const auto& e : moment_catalog())
      if (e.statistic == s && e.kind == kind) c["formula"] = e.formula;
    try {
      Rational v = closed_moment(s, kind, N);
      c["value"] = v.get_str();
      if (kind == MomentKind::FourthCentralLeading) {
        c["leading_term_only"] = true;
      } else {
        c["match"] = v == table_value;
        ok = ok && v == table_value;
      }
    } catch (const CatalogMiss& e) {
      c["outside_domain"] = e.what();
    }
    return c;
  };
  if (s == Statistic::TwoSided) {
    BivariateArray t = cached_bivariate(N, cfg);
    Rational cov = table_covariance(t.table(N));
    j["covariance"] = cov.get_str();
    j["closed_form"] = closed(MomentKind::Covariance, cov);
  } else {
    const Row row = cached_rows(StatisticId(s), N, cfg).row(object_size(s, N));
    Rational v = row_moment(row, order, central);
    j["order"] = order;
    j["central"] = central;
    j["table_value"] = v.get_str();
    auto kind = kind_for(order, central);
    bool listed = false;
    if (kind)
      for (const auto& e : moment_catalog()) listed = listed || (e.statistic == s && e.kind == *kind);
    j["closed_form"] = listed ? closed(*kind, v) : Json(nullptr);
    if (s == Statistic::LongestAlt && order == 2 && central) {
      Rational printed = ratio(8 * N, 45) - ratio(13, 80);
      Rational literature = ratio(8 * N, 45) - ratio(13, 180);
      j["comparison"] = {{"8n/45-13/80", printed.get_str()},
                         {"8n/45-13/180", literature.get_str()},
                         {"matches_8n/45-13/80", printed == v},
                         {"matches_8n/45-13/180", literature == v}};
    }
  }
  j["pass"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kPass : kVerdictFailed;
}

int cmd_clt(Statistic s, int N, std::ostream& out) {
  require_positive(N, "--n");
  out << to_json(ks_report(s, N)).dump(2) << '\n';
  return kPass;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

int cmd_derive(int d, const std::string& g_text, int N, int base_n, const std::string& base_text, std::ostream& out) {
  if (d < 1) throw CLI::ValidationError("--d", "must be at least 1");
  auto parts = split(g_text, ',');
  if (static_cast<int>(parts.size()) != d + 1)
    throw CLI::ValidationError("--g", "expects d+1 = " + std::to_string(d + 1) + " comma-separated coefficients");
  std::vector<std::function<Rational(long)>> coeffs;
  for (const auto& p : parts) coeffs.push_back(parse_expression(p));
  GrowthRatio gr;
  gr.degree = d;
  gr.g = [coeffs](int n) {
    std::vector<Rational> c;
    for (const auto& f : coeffs) c.push_back(f(n));
    return Polynomial(std::move(c));
  };
  for (int n = base_n; n < N; ++n)
    if (gr.g(n).degree() != d)
      throw CLI::ValidationError("--g", "leading coefficient vanishes at n=" + std::to_string(n));

  // Base row: given explicitly, or extracted from f_{base}(k) = prod_{j<base} g_j(k).
  Row base;
  if (!base_text.empty()) {
    for (const auto& v : split(base_text, ',')) base.values.emplace_back(v);
  } else {
    auto f = [&gr, base_n](long k) {
      Rational prod = 1;
      for (int j = 0; j < base_n; ++j) prod *= gr.g(j)(k);
      if (prod.get_den() != 1) throw ConsistencyFailure("f_n(k) is not an integer");
      return BigInt(prod.get_num());
    };
    base.values = extract_from_rational(f, static_cast<long>(d) * base_n + 1, static_cast<long>(d) * base_n);
  }

  RecurrenceScheme scheme = derived_scheme(gr);
  RepresentabilityVerdict verdict = representability(scheme, base_n, base, N);
  Json j;
  j["d"] = d;
  j["scheme"] = scheme_to_json(scheme, base_n, N);
  j["verdict"] = to_json(verdict);
  if (verdict.kernel) {
    Json probs = Json::array();
    for (int n = base_n; n < N; ++n) {
      Json step = Json::array();
      for (const auto& m : verdict.kernel->moves(n)) step.push_back(m.probability.to_string());
      probs.push_back({{"n", n}, {"probabilities", std::move(step)}});
    }
    j["kernel"] = std::move(probs);
  }
  try {
    Json rows = Json::array();
    int n = base_n;
    for (const auto& r : apply_scheme(scheme, base_n, base, N)) {
      Json vals = Json::array();
      for (const auto& v : r.values) vals.push_back(v.get_str());
      rows.push_back({{"n", n++}, {"k_min", r.k_min}, {"values", std::move(vals)}});
    }
    j["rows"] = std::move(rows);
  } catch (const ConsistencyFailure& e) {
    j["rows_error"] = e.what();
  }
  out << j.dump(2) << '\n';
  return verdict.representable() ? kPass : kVerdictFailed;
}

struct CheckFlags {
  bool log_concave = false, real_roots = false, martingale = false, oracle = false;
};

int cmd_check(const StatisticId& id, int N, CheckFlags flags, const Config& cfg, std::ostream& out) {
  const Statistic s = id.kind;
  if (s != Statistic::Conjugacy) require_positive(N, "--n");
  const bool any = flags.log_concave || flags.real_roots || flags.martingale || flags.oracle;
  const bool has_kernel = s == Statistic::TwoSided || [&] {
    for (Statistic k : univariate_kernel_statistics())
      if (k == s) return true;
    return false;
  }();
  const bool has_oracle = s != Statistic::TypeD;
  if (!any) {
    flags.log_concave = flags.real_roots = s != Statistic::TwoSided;
    flags.martingale = has_kernel;
    flags.oracle = has_oracle;
  }
  if (flags.martingale && !has_kernel)
    throw CLI::ValidationError("--martingale", name(s) + " has no growth chain");
  if (flags.oracle && !has_oracle) throw CLI::ValidationError("--oracle", "no brute-force enumeration for " + name(s));

  Json j;
  j["statistic"] = name(id);
  j["n"] = N;
  bool ok = true;
  const int top = s == Statistic::Conjugacy ? id.cycle_type.size() : N;
  std::optional<DescentArray> rows;
  auto table = [&]() -> const DescentArray& {
    if (!rows) rows = cached_rows(id, top, cfg);
    return *rows;
  };

  if (flags.log_concave && s != Statistic::TwoSided) {
    Json r = {{"pass", true}};
    for (const auto& [size, row] : table().rows) {
      auto rep = log_concavity(row.values);
      if (!rep.log_concave) {
        r = {{"pass", false},
             {"size", size},
             {"k", row.k_min + rep.index},
             {"triple", {rep.left.get_str(), rep.middle.get_str(), rep.right.get_str()}}};
        ok = false;
        break;
      }
    }
    j["log_concave"] = r;
  }
  if (flags.real_roots && s != Statistic::TwoSided) {
    Json r = {{"pass", true}};
    for (const auto& [size, row] : table().rows) {
      if (row.sum() == 0) continue;
      auto v = real_root_check(row);
      if (!v.all_real) {
        r = {{"pass", false}, {"size", size}, {"degree", v.degree}, {"real_roots", v.real_roots}};
        ok = false;
        break;
      }
    }
    j["real_roots"] = r;
  }
  if (flags.martingale) {
    Json r;
    try {
      MartingaleVerdict v;
      if (s == Statistic::TwoSided) {
        auto k = two_sided_kernel();
        v = verify_martingale(k, martingalize(k, N), N);
      } else {
        auto k = kernel_for(s);
        if (N < k.base_step) throw CLI::ValidationError("--n", "the chain starts at n=" + std::to_string(k.base_step));
        v = verify_martingale(k, martingalize(k, N), N);
      }
      r["pass"] = v.passed();
      if (v.failure)
        r["witness"] = {{"n", v.failure->n},
                        {"k", v.failure->k},
                        {"l", v.failure->l},
                        {"expected_next", v.failure->expected_next.get_str()},
                        {"current", v.failure->current.get_str()}};
    } catch (const DriftNotAffine& e) {
      r = {{"pass", false}, {"error", e.what()}};
    } catch (const KernelInvalid& e) {
      r = {{"pass", false}, {"error", e.what()}};
    }
    ok = ok && r["pass"].get<bool>();
    j["martingale"] = r;
  }
  if (flags.oracle) {
    OracleOptions opt{cfg.budget, cfg.threads};
    Json r = {{"pass", true}};
    if (s == Statistic::TwoSided) {
      BivariateArray t = cached_bivariate(N, cfg);
      for (int n = 1; n <= N; ++n)
        if (enumerate_joint(n, opt) != t.table(n)) {
          r = {{"pass", false}, {"n", n}};
          break;
        }
    } else if (s == Statistic::Conjugacy) {
      if (!enumerate_rows(id, top, opt).same_values(table().row(top))) r = {{"pass", false}, {"size", top}};
    } else {
      for (int n = 1; n <= N; ++n) {
        const Row& built = table().row(object_size(s, n));
        if (!enumerate_rows(id, n, opt).same_values(built)) {
          r = {{"pass", false}, {"size", object_size(s, n)}};
          break;
        }
      }
    }
    ok = ok && r["pass"].get<bool>();
    j["oracle"] = r;
  }
  j["pass"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kPass : kVerdictFailed;
}

}  // namespace

std::function<Rational(long)> parse_expression(const std::string& text) {
  std::shared_ptr<Node> root = Parser(text).parse();
  return [root](long n) { return root->eval(n); };
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact descent statistics, growth chains and diagnostics", "descents"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--cache-dir", cfg.cache_dir, "Table cache directory (default: $DESCENTS_CACHE_DIR; unset disables)");
  app.add_flag("--no-cache", cfg.no_cache, "Bypass the table cache");
  app.add_option("--threads", cfg.threads, "Worker threads for sampling and enumeration")->check(CLI::Range(1u, 1024u));
  app.add_option("--max-n", cfg.budget.max_n, "Largest table index")->check(CLI::PositiveNumber);
  app.add_option("--max-objects", cfg.budget.max_objects, "Largest brute-force family")->check(CLI::PositiveNumber);

  std::string stat, cycle_type;
  int N = 0, derive_n = 6;

  auto* table = app.add_subcommand("table", "Distribution table of a statistic");
  table->add_option("statistic", stat)->required();
  table->add_option("--n", N, "Largest row (half-size for matchings)");
  table->add_option("--cycle-type", cycle_type, "Cycle multiplicities for conjugacy, e.g. 0,2");
  table->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* bitable = app.add_subcommand("bitable", "Joint (des, ides) tables");
  bitable->add_option("--n", N)->required();
  bitable->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  std::uint64_t paths = 1, seed = 0;
  auto* samp = app.add_subcommand("sample", "Monte Carlo paths of a growth chain");
  samp->add_option("statistic", stat)->required();
  samp->add_option("--n", N)->required();
  samp->add_option("--paths", paths)->required();
  samp->add_option("--seed", seed)->required();
  samp->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  int order = 1;
  bool central = false;
  auto* mom = app.add_subcommand("moments", "Exact table moments against closed forms");
  mom->add_option("statistic", stat)->required();
  mom->add_option("--n", N)->required();
  mom->add_option("--order", order)->check(CLI::Range(1, 4));
  mom->add_flag("--central", central);

  auto* clt = app.add_subcommand("clt", "Kolmogorov distance to the normal");
  clt->add_option("statistic", stat)->required();
  clt->add_option("--n", N)->required();

  int d = 1, base_n = 0;
  std::string g_text, base_text;
  auto* derive = app.add_subcommand("derive", "Recurrence from a growth ratio g_n(k)");
  derive->add_option("--d", d)->required();
  derive->add_option("--g", g_text, "Ascending coefficients of g_n(k), each an expression in n")->required();
  derive->add_option("--n", derive_n, "Last step")->default_val(6);
  derive->add_option("--base-n", base_n, "Step of the base row")->default_val(0);
  derive->add_option("--base-row", base_text, "Base row entries from k=0 (default: extracted from g)");

  CheckFlags flags;
  auto* check = app.add_subcommand("check", "Diagnostic verdicts");
  check->add_option("statistic", stat)->required();
  check->add_option("--n", N);
  check->add_option("--cycle-type", cycle_type);
  check->add_flag("--log-concave", flags.log_concave);
  check->add_flag("--real-roots", flags.real_roots);
  check->add_flag("--martingale", flags.martingale);
  check->add_flag("--oracle", flags.oracle);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kUsage;
  }

  try {
    if (*table) return cmd_table(statistic_id(stat, cycle_type), N, cfg, out);
    if (*bitable) return cmd_bitable(N, cfg, out);
    if (*samp) return cmd_sample(parse_statistic(stat), N, paths, seed, cfg, out);
    if (*mom) return cmd_moments(parse_statistic(stat), N, order, central, cfg, out);
    if (*clt) return cmd_clt(parse_statistic(stat), N, out);
    if (*derive) return cmd_derive(d, g_text, derive_n, base_n, base_text, out);
    if (*check) return cmd_check(statistic_id(stat, cycle_type), N, flags, cfg, out);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceBudgetExceeded& e) {
    err << "resource budget exceeded: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownStatistic& e) {
    err << "unknown statistic: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidCycleType& e) {
    err << "invalid cycle type: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "verdict failed: " << e.what() << '\n';
    return kVerdictFailed;
  }
  return kUsage;
}

}  // namespace descents::cli
