#include "blc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "blc/cache.hpp"
#include "blc/constant.hpp"
#include "blc/errors.hpp"
#include "blc/homogeneous.hpp"
#include "blc/io.hpp"
#include "blc/lie.hpp"
#include "blc/oracle.hpp"

#ifndef BLC_VERSION
#define BLC_VERSION "0.0.0"
#endif

namespace blc::cli {

using io::json;

std::string version() { return BLC_VERSION; }

namespace {

struct Flags {
  std::string in;
  std::string format = "json";
  std::string haar;
  std::string p;
  std::uint64_t seed = 0;
  std::size_t order_cap = 4096;
  std::size_t restarts = 8;
  double tol = 1e-12;
  std::size_t max_sweeps = 10000;
  std::uint64_t budget = std::uint64_t{1} << 24;
  bool no_cache = false;
  bool candidates = false;
  std::size_t max_closure = 3;
  std::size_t pool_cap = 10000;
  std::string op = "canonicalize";
  std::size_t index = 0;
  std::string normal;
  std::string other;
  std::size_t n = 1;
  std::string alphas = "1,1/2";
  std::string m = "10";
  std::string box = "1/2";
  std::string eps = "1/10";
  std::uint64_t scan_budget = 100000000;
};

struct Context {
  Flags f;
  json cache_info = json::object();
  std::string digest;
  int exit_code = kOk;
};

std::optional<HaarMode> haar_override(const Flags& f) {
  if (f.haar.empty()) return std::nullopt;
  if (f.haar == "counting") return HaarMode::Counting;
  if (f.haar == "probability") return HaarMode::Probability;
  throw PreconditionError("--haar must be counting or probability, got '" + f.haar + "'");
}

json load_input(Context& ctx) {
  if (ctx.f.in.empty()) throw PreconditionError("--in is required");
  json j = io::parse_json(io::read_file(ctx.f.in), ctx.f.in);
  ctx.digest = content_digest(j.dump());
  return j;
}

BLDatum load_datum(Context& ctx) {
  json j = load_input(ctx);
  BLDatum d = io::datum_from_json(j, GroupLimits{ctx.f.order_cap}, haar_override(ctx.f));
  if (!ctx.f.p.empty()) {
    auto p = parse_exponents(ctx.f.p);
    if (p.size() != d.size())
      throw PreconditionError("--p lists " + std::to_string(p.size()) + " exponents for J=" + std::to_string(d.size()));
    d = d.with_exponents(std::move(p));
  }
  return d;
}

std::vector<Exponent> lie_exponents(const Context& ctx, const json& j, const CompactLieDatum& d) {
  std::vector<Exponent> p;
  if (!ctx.f.p.empty())
    p = parse_exponents(ctx.f.p);
  else if (auto fp = io::exponents_from_json(j))
    p = *fp;
  else
    throw PreconditionError("exponents missing: pass --p or add \"p\" to the input");
  if (p.size() != d.size())
    throw PreconditionError("got " + std::to_string(p.size()) + " exponents for " + std::to_string(d.size()) + " maps");
  return p;
}

std::vector<Rational> parse_rationals(const std::string& list) {
  std::vector<Rational> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(Rational::parse(item));
    } catch (const std::exception& e) {
      throw PreconditionError("cannot parse '" + item + "': " + e.what());
    }
  }
  return out;
}

json subgroup_labels(const Subgroup& s) {
  json out = json::array();
  for (auto x : s.members()) out.push_back(s.parent()->label(x));
  return out;
}

json constant_json(const BLDatum& d, const ConstantReport& r, bool with_candidates) {
  json j;
  j["value"] = io::exact_to_json(r.value);
  j["value_approx"] = r.value.to_double();
  j["value_text"] = r.value.str();
  j["argmax"] = io::subgroup_to_json(r.argmax);
  j["argmax_labels"] = subgroup_labels(r.argmax);
  j["saturated"] = r.saturated;
  j["ties"] = r.ties;
  j["canonicalized"] = r.canonicalized;
  if (!r.input_tag.is_canonical) j["canonical_witness"] = r.input_tag.witness;
  j["subgroups"] = r.subgroup_count;
  j["evaluated"] = r.evaluated;
  j["mixed_haar"] = d.mixed_haar();
  json ext = json::array();
  for (const auto& f : extremizer(d, r)) {
    json support = json::array();
    for (std::size_t y = 0; y < f.size(); ++y)
      if (!f[y].is_zero()) support.push_back(y);
    ext.push_back(support);
  }
  j["extremizer_supports"] = ext;
  if (with_candidates) {
    json c = json::array();
    for (const auto& cand : r.candidates)
      c.push_back({{"subgroup", io::subgroup_to_json(cand.subgroup)}, {"value", io::exact_to_json(cand.value)}});
    j["candidates"] = c;
  }
  return j;
}

ConstantReport compute_constant(Context& ctx, const BLDatum& d, bool keep_candidates) {
  SubgroupCache cache(default_cache_dir(), !ctx.f.no_cache);
  ConstantOptions opt;
  opt.limits = GroupLimits{ctx.f.order_cap};
  opt.keep_candidates = keep_candidates;
  opt.provider = [&](const GroupPtr& g) { return cache.get(g, opt.limits); };
  ConstantReport r = bl_constant(d, opt);
  ctx.cache_info["subgroup_lattice"] = {
      {"enabled", cache.enabled()}, {"hits", cache.hits()}, {"misses", cache.misses()}};
  return r;
}

OracleOptions oracle_options(const Flags& f) {
  OracleOptions o;
  o.restarts = f.restarts;
  o.seed = f.seed;
  o.ascent.tol = f.tol;
  o.ascent.max_sweeps = f.max_sweeps;
  return o;
}

json oracle_json(const OracleResult& r) {
  json runs = json::array();
  bool monotone = true;
  for (const auto& t : r.traces) {
    for (std::size_t i = 1; i < t.values.size(); ++i) monotone &= t.values[i] >= t.values[i - 1];
    runs.push_back({{"iterations", t.iterations}, {"converged", t.converged}, {"final", t.values.back()}});
  }
  return {{"value", r.value}, {"random_best", r.random_best}, {"runs", runs}, {"monotone", monotone}};
}

// ------------------------------------------------------------- commands

json cmd_constant(Context& ctx) {
  BLDatum d = load_datum(ctx);
  ConstantReport r = compute_constant(ctx, d, ctx.f.candidates);
  return constant_json(d, r, ctx.f.candidates);
}

json cmd_oracle(Context& ctx) {
  BLDatum d = load_datum(ctx);
  return oracle_json(oracle_constant(d, oracle_options(ctx.f)));
}

json cmd_verify(Context& ctx) {
  BLDatum d = load_datum(ctx);
  ConstantReport r = compute_constant(ctx, d, false);
  json out;
  out["formula"] = constant_json(d, r, false);
  OracleResult o = oracle_constant(d, oracle_options(ctx.f));
  out["oracle"] = oracle_json(o);
  const double exact = r.value.to_double();
  const double rel = std::fabs(o.value - exact) / exact;
  out["oracle"]["relative_error"] = rel;
  bool ok = rel <= 1e-9;
  out["oracle"]["within_1e-9"] = ok;
  try {
    ExhaustiveResult e = exhaustive_indicator_search(d, ctx.f.budget);
    bool eq = e.value == r.value;
    out["exhaustive"] = {{"value", io::exact_to_json(e.value)},
                         {"value_text", e.value.str()},
                         {"argmax_sets", e.argmax_sets},
                         {"tuples", e.tuples},
                         {"equal", eq}};
    ok &= eq;
  } catch (const BudgetError& e) {
    out["exhaustive"] = {{"skipped", e.what()}};
  }
  out["agree"] = ok;
  if (!ok) ctx.exit_code = kCheckFailed;
  return out;
}

json cmd_polytope(Context& ctx) {
  json j = load_input(ctx);
  CompactLieDatum d = io::lie_from_json(j);
  IdealPool pool = kernel_lattice_pool(d, {}, ctx.f.max_closure, ctx.f.pool_cap);
  RationalPolytope poly = bl_polytope(d, pool.ideals);
  VertexReport v = vertices(poly);
  json out;
  json ideals = json::array();
  for (const auto& n : pool.ideals) ideals.push_back(io::ideal_to_json(n));
  out["pool"] = {{"ideals", ideals}, {"stabilized", pool.stabilized}, {"rounds", pool.rounds}};
  out["polytope"] = io::polytope_to_json(poly, &v);
  if (!ctx.f.p.empty() || io::exponents_from_json(j)) {
    auto p = lie_exponents(ctx, j, d);
    out["membership"] = membership(poly, p);
  }
  return out;
}

json part_json(const PartVerdict& p) {
  json j = {{"verdict", verdict_name(p.verdict)}, {"complete", p.complete}, {"pool_size", p.pool_size}};
  if (p.violator) j["violator"] = io::violation_to_json(*p.violator);
  return j;
}

json cmd_check_codim(Context& ctx) {
  json j = load_input(ctx);
  CompactLieDatum d = io::lie_from_json(j);
  auto p = lie_exponents(ctx, j, d);
  FinitenessOptions opt;
  opt.max_closure = ctx.f.max_closure;
  opt.pool_cap = ctx.f.pool_cap;
  FinitenessReport rep = finiteness(d, p, opt);
  json out;
  out["verdict"] = verdict_name(rep.verdict);
  if (rep.violator) out["violator"] = io::violation_to_json(*rep.violator);
  out["semisimple"] = part_json(rep.semisimple);
  out["torus"] = part_json(rep.torus);
  out["torus"]["stabilized"] = rep.torus_pool.stabilized;
  if (!rep.note.empty()) out["note"] = rep.note;
  if (rep.verdict == Verdict::Finite) out["constant_under_probability_haar"] = 1;
  json ps = json::array();
  for (const auto& e : p) ps.push_back(e.str());
  out["p"] = ps;
  if (rep.verdict == Verdict::Undecided) ctx.exit_code = kUndecided;
  return out;
}

std::string contract_text(const std::strong_ordering& o, bool equality) {
  if (equality) return o == 0 ? "equal" : "VIOLATED";
  return o <= 0 ? "holds" : "VIOLATED";
}

json cmd_reduce(Context& ctx) {
  BLDatum d = load_datum(ctx);
  ConstantReport before = compute_constant(ctx, d, false);
  json out;
  out["op"] = ctx.f.op;
  out["input_constant"] = io::exact_to_json(before.value);
  auto emit = [&](const std::string& key, const BLDatum& r) {
    ConstantReport c = compute_constant(ctx, r, false);
    out[key] = {{"datum", io::datum_to_json(r)}, {"constant", io::exact_to_json(c.value)},
                {"constant_text", c.value.str()}};
    return c.value;
  };
  bool ok = true;
  if (ctx.f.op == "canonicalize") {
    CanonicalForm cf = canonicalize(d);
    out["input_canonical"] = cf.input_tag.is_canonical;
    if (!cf.input_tag.is_canonical) out["canonical_witness"] = cf.input_tag.witness;
    auto v = emit("output", cf.datum);
    out["contract"] = contract_text(compare(before.value, v), true);
  } else if (ctx.f.op == "drop-infinite") {
    auto v = emit("output", drop_infinite_exponent(d, ctx.f.index));
    out["contract"] = contract_text(compare(before.value, v), true);
  } else if (ctx.f.op == "reduce-p1") {
    auto v = emit("output", reduce_p1(d, ctx.f.index));
    out["contract"] = contract_text(compare(before.value, v), true);
  } else if (ctx.f.op == "quotient-split") {
    std::vector<Element> members;
    for (const auto& q : parse_rationals(ctx.f.normal)) {
      if (!q.is_integer() || q.sign() < 0) throw PreconditionError("--normal lists element indices");
      members.push_back(static_cast<Element>(q.num()));
    }
    Subgroup n = Subgroup::from_members(d.group, members);
    QuotientSplit s = quotient_split(d, n);
    auto a = emit("restricted", s.restricted);
    auto b = emit("quotient", s.quotient);
    out["contract"] = contract_text(compare(before.value, a * b), false);
  } else if (ctx.f.op == "product") {
    if (ctx.f.other.empty()) throw PreconditionError("--other is required for the product op");
    json oj = io::parse_json(io::read_file(ctx.f.other), ctx.f.other);
    BLDatum e = io::datum_from_json(oj, GroupLimits{ctx.f.order_cap}, haar_override(ctx.f));
    ConstantReport ce = compute_constant(ctx, e, false);
    auto v = emit("output", split_product(d, e, GroupLimits{ctx.f.order_cap}));
    out["other_constant"] = io::exact_to_json(ce.value);
    out["contract"] = contract_text(compare(before.value * ce.value, v), true);
  } else {
    throw PreconditionError("unknown --op '" + ctx.f.op +
                            "' (canonicalize, drop-infinite, reduce-p1, quotient-split, product)");
  }
  ok = out["contract"] != "VIOLATED";
  if (!ok) ctx.exit_code = kCheckFailed;
  return out;
}

json cmd_heisenberg(Context& ctx) {
  auto alphas = parse_rationals(ctx.f.alphas);
  Rational m = Rational::parse(ctx.f.m);
  Rational h = Rational::parse(ctx.f.box);
  Rational eps = Rational::parse(ctx.f.eps);
  ctx.digest = content_digest(ctx.f.alphas + "|" + ctx.f.m + "|" + ctx.f.box + "|" + ctx.f.eps + "|" +
                              std::to_string(ctx.f.n));
  DivergenceWitness w = divergence_witness(ctx.f.n, alphas, m, h, eps, ctx.f.scan_budget);

  json out;
  out["n"] = ctx.f.n;
  out["alphas"] = json::array();
  for (const auto& a : alphas) out["alphas"].push_back(a.str());
  out["M"] = m.str();
  out["box_halfwidth"] = h.str();
  out["unit_volume"] = w.unit_volume.str();
  out["terms"] = w.terms;
  out["lower_bound"] = w.lower_bound.str();
  out["exceeds_M"] = w.lower_bound > m;
  out["witness"] = io::witness_to_json(w.approximation);
  out["witness_verified"] = verify_witness(w.approximation, alphas);

  const std::string dims = std::to_string(2 * ctx.f.n + 1);
  std::vector<std::string> story;
  story.push_back("U is the open coordinate box of half-width " + h.str() + " in H^" + std::to_string(ctx.f.n) +
                  " (dimension " + dims + "), |U| = " + w.unit_volume.str() + ".");
  story.push_back("Inputs are the indicators of (0,[-" + eps.str() + "," + eps.str() +
                  "]) U pushed to each quotient; eps < half-width.");
  story.push_back("Found " + std::to_string(w.terms) + " times t_m, each within " + eps.str() +
                  " of an integer multiple of every alpha, spaced at least " + w.approximation.spacing.str() +
                  " apart.");
  story.push_back("(0,t_m)^-1 U only shifts the central coordinate by -t_m, so the translates are disjoint.");
  story.push_back("Each translate adds exactly |U| to the form, so the form is at least " +
                  std::to_string(w.terms) + " * " + w.unit_volume.str() + " = " + w.lower_bound.str() + " > " +
                  m.str() + ".");
  story.push_back("The input norms do not depend on M, so no finite constant bounds the form.");
  out["narrative"] = story;
  return out;
}

// ------------------------------------------------------------ rendering

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

std::string render(const json& report, const std::string& format) {
  if (format == "table") {
    std::ostringstream os;
    if (report.contains("results") && report["results"].contains("narrative")) {
      for (const auto& line : report["results"]["narrative"]) os << line.get<std::string>() << '\n';
      os << '\n';
    }
    json rest = report;
    if (rest.contains("results")) rest["results"].erase("narrative");
    flatten(rest, "", os);
    return os.str();
  }
  return report.dump(2) + "\n";
}

}  // namespace

Output run(const std::vector<std::string>& args) {
  CLI::App app{"Brascamp-Lieb constants for finite groups and compact Lie data", "blc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  app.option_defaults()->always_capture_default();

  Context ctx;
  Flags& f = ctx.f;
  using Handler = std::function<json(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto common = [&](CLI::App* s) {
    s->add_option("--format", f.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    s->add_option("--seed", f.seed, "random seed");
  };
  auto datum_flags = [&](CLI::App* s) {
    s->add_option("--in", f.in, "datum JSON file")->required();
    s->add_option("--haar", f.haar, "override every Haar measure: counting or probability");
    s->add_option("--p", f.p, "override exponents, e.g. 2,inf,3/2");
    s->add_option("--order-cap", f.order_cap, "largest group order accepted");
    s->add_flag("--no-cache", f.no_cache, "do not read or write the subgroup cache");
  };
  auto oracle_flags = [&](CLI::App* s) {
    s->add_option("--restarts", f.restarts, "random restarts")->check(CLI::PositiveNumber);
    s->add_option("--tol", f.tol, "relative gain that stops an ascent");
    s->add_option("--max-sweeps", f.max_sweeps, "sweep limit per ascent");
  };
  auto lie_flags = [&](CLI::App* s) {
    s->add_option("--in", f.in, "Lie datum JSON file")->required();
    s->add_option("--p", f.p, "exponents, e.g. 3/2,2,2");
    s->add_option("--max-closure", f.max_closure, "lattice closure rounds");
    s->add_option("--pool-cap", f.pool_cap, "largest ideal pool");
  };

  auto* c_const = app.add_subcommand("constant", "exact constant by the subgroup formula");
  common(c_const);
  datum_flags(c_const);
  c_const->add_flag("--candidates", f.candidates, "list every evaluated subgroup");
  commands.emplace_back(c_const, cmd_constant);

  auto* c_oracle = app.add_subcommand("oracle", "numerical lower bound by alternating ascent");
  common(c_oracle);
  datum_flags(c_oracle);
  oracle_flags(c_oracle);
  commands.emplace_back(c_oracle, cmd_oracle);

  auto* c_verify = app.add_subcommand("verify", "constant, oracle and exhaustive search, cross-checked");
  common(c_verify);
  datum_flags(c_verify);
  oracle_flags(c_verify);
  c_verify->add_option("--budget", f.budget, "largest number of indicator tuples for the exhaustive search");
  commands.emplace_back(c_verify, cmd_verify);

  auto* c_poly = app.add_subcommand("polytope", "ideal pool, halfspaces and vertices");
  common(c_poly);
  lie_flags(c_poly);
  commands.emplace_back(c_poly, cmd_polytope);

  auto* c_codim = app.add_subcommand("check-codim", "finiteness verdict from the codimension conditions");
  common(c_codim);
  lie_flags(c_codim);
  commands.emplace_back(c_codim, cmd_check_codim);

  auto* c_reduce = app.add_subcommand("reduce", "apply a reduction and compare constants");
  common(c_reduce);
  datum_flags(c_reduce);
  c_reduce->add_option("--op", f.op, "canonicalize, drop-infinite, reduce-p1, quotient-split, product");
  c_reduce->add_option("--index", f.index, "exponent index for drop-infinite and reduce-p1");
  c_reduce->add_option("--normal", f.normal, "members of N for quotient-split, e.g. 0,2");
  c_reduce->add_option("--other", f.other, "second datum file for product");
  commands.emplace_back(c_reduce, cmd_reduce);

  auto* c_heis = app.add_subcommand("heisenberg-demo", "divergence witness on the Heisenberg group");
  common(c_heis);
  c_heis->add_option("--n", f.n, "complex dimension")->check(CLI::PositiveNumber);
  c_heis->add_option("--alphas", f.alphas, "positive rationals, e.g. 1,1/2");
  c_heis->add_option("--M", f.m, "bound to exceed");
  c_heis->add_option("--box", f.box, "box half-width");
  c_heis->add_option("--eps", f.eps, "approximation tolerance");
  c_heis->add_option("--budget", f.scan_budget, "candidate scan budget");
  commands.emplace_back(c_heis, cmd_heisenberg);

  Output res;
  std::vector<std::string> argv_store{"blc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    res.out = out.str();
    res.err = err.str();
    res.exit_code = code == 0 ? kOk : kPrecondition;
    return res;
  }

  CLI::App* chosen = nullptr;
  Handler handler;
  for (auto& [sub, h] : commands)
    if (sub->parsed()) {
      chosen = sub;
      handler = h;
    }

  json flags = json::object();
  for (const CLI::Option* opt : chosen->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string& name = opt->get_lnames()[0];
    if (opt->get_expected_min() == 0)
      flags[name] = opt->count() > 0;
    else
      flags[name] = opt->count() > 0 ? opt->results().front() : opt->get_default_str();
  }

  json report;
  report["version"] = version();
  report["command"] = {{"name", chosen->get_name()}, {"flags", flags}};
  const auto start = std::chrono::steady_clock::now();
  try {
    report["results"] = handler(ctx);
  } catch (const PreconditionError& e) {
    report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
    ctx.exit_code = kPrecondition;
  } catch (const UndecidedError& e) {
    report["error"] = {{"kind", "undecided"}, {"message", e.what()}};
    ctx.exit_code = kBudget;
  } catch (const BudgetError& e) {
    report["error"] = {{"kind", "budget"}, {"message", e.what()}};
    ctx.exit_code = kBudget;
  } catch (const NumericError& e) {
    report["error"] = {{"kind", "numeric"}, {"message", e.what()}};
    ctx.exit_code = kPrecondition;
  } catch (const std::exception& e) {
    report["error"] = {{"kind", "precondition"}, {"message", e.what()}};
    ctx.exit_code = kPrecondition;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report["timing"] = {{"seconds", secs}};
  report["digest"] = ctx.digest;
  report["cache"] = ctx.cache_info;
  report["exit_code"] = ctx.exit_code;
  res.exit_code = ctx.exit_code;
  res.out = render(report, f.format);
  if (report.contains("error")) res.err = report["error"]["message"].get<std::string>() + "\n";
  return res;
}

}  // namespace blc::cli
