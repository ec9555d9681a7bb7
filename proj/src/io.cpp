#include "blc/io.hpp"

#include <fstream>
#include <sstream>

#include "blc/errors.hpp"

namespace blc::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(origin + ": invalid JSON: " + e.what());
  }
}

namespace {

template <typename T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed ") + what + ": " + e.what());
  }
}

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw PreconditionError(std::string(what) + " is missing the \"" + key + "\" field");
  return j.at(key);
}

}  // namespace

GroupPtr group_from_json(const json& j, const GroupLimits& limits) {
  if (!j.is_object()) throw PreconditionError("group spec must be an object");
  if (j.contains("cyclic")) {
    auto moduli = get_as<std::vector<std::size_t>>(j.at("cyclic"), "cyclic moduli");
    return make_cyclic_product(moduli, limits);
  }
  if (j.contains("symmetric")) return make_symmetric_group(get_as<std::size_t>(j.at("symmetric"), "degree"), limits);
  if (j.contains("table")) {
    auto table = get_as<std::vector<std::vector<Element>>>(j.at("table"), "Cayley table");
    if (j.contains("order") && get_as<std::size_t>(j.at("order"), "order") != table.size())
      throw PreconditionError("\"order\" does not match the table size");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = get_as<std::vector<std::string>>(j.at("labels"), "labels");
    return FiniteGroup::from_table(table, std::move(labels), limits);
  }
  if (j.contains("generators")) {
    auto degree = get_as<std::size_t>(require(j, "degree", "permutation group spec"), "degree");
    auto gens = get_as<std::vector<std::vector<std::size_t>>>(j.at("generators"), "generators");
    return make_permutation_group(degree, gens, limits);
  }
  throw PreconditionError("group spec needs one of \"cyclic\", \"symmetric\", \"table\", \"generators\"");
}

json group_to_json(const FiniteGroup& g) {
  json j;
  j["order"] = g.order();
  j["table"] = g.rows();
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

Haar haar_from_json(const json& j, std::size_t order) {
  if (!j.is_string()) throw PreconditionError("Haar measure must be a string");
  auto s = j.get<std::string>();
  if (s == "counting") return Haar::counting();
  if (s == "probability") return Haar::probability(order);
  try {
    Rational atom = Rational::parse(s);
    if (atom.sign() <= 0) throw PreconditionError("Haar atom must be positive");
    return Haar::from_atom(atom, order);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw PreconditionError("unknown Haar measure '" + s + "'");
  }
}

json haar_to_json(const Haar& h) { return h.label(); }

std::optional<std::vector<Exponent>> exponents_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p")) return std::nullopt;
  std::vector<Exponent> out;
  for (const auto& e : j.at("p")) {
    if (e.is_string())
      out.push_back(Exponent::parse(e.get<std::string>()));
    else if (e.is_number_integer())
      out.push_back(Exponent::finite(Rational(e.get<std::int64_t>())));
    else
      throw PreconditionError("exponents must be strings or integers");
  }
  return out;
}

BLDatum datum_from_json(const json& j, const GroupLimits& limits, std::optional<HaarMode> haar_override) {
  GroupPtr g = group_from_json(require(j, "group", "datum"), limits);
  const json& cods = require(j, "codomains", "datum");
  const json& maps = require(j, "maps", "datum");
  if (!cods.is_array() || !maps.is_array() || cods.size() != maps.size())
    throw PreconditionError("datum needs equally long \"codomains\" and \"maps\" arrays");
  std::vector<Homomorphism> hs;
  std::vector<GroupPtr> cg;
  for (std::size_t k = 0; k < cods.size(); ++k) {
    cg.push_back(group_from_json(cods[k], limits));
    auto images = get_as<std::vector<Element>>(maps[k], "map");
    hs.push_back(Homomorphism::make(g, cg.back(), std::move(images)));
  }
  auto p = exponents_from_json(j);
  if (!p) throw PreconditionError("datum is missing the \"p\" field");

  Haar hg = Haar::probability(g->order());
  std::vector<Haar> hc;
  for (const auto& c : cg) hc.push_back(Haar::probability(c->order()));
  if (haar_override) {
    hg = Haar::of_mode(*haar_override, g->order());
    for (std::size_t k = 0; k < cg.size(); ++k) hc[k] = Haar::of_mode(*haar_override, cg[k]->order());
  } else if (j.contains("haar")) {
    const json& h = j.at("haar");
    if (h.is_string()) {
      hg = haar_from_json(h, g->order());
      for (std::size_t k = 0; k < cg.size(); ++k) hc[k] = haar_from_json(h, cg[k]->order());
    } else {
      if (h.contains("G")) hg = haar_from_json(h.at("G"), g->order());
      if (h.contains("codomains")) {
        const json& hcj = h.at("codomains");
        if (!hcj.is_array() || hcj.size() != cg.size())
          throw PreconditionError("\"haar.codomains\" must list one measure per codomain");
        for (std::size_t k = 0; k < cg.size(); ++k) hc[k] = haar_from_json(hcj[k], cg[k]->order());
      }
    }
  }
  return BLDatum::make(g, std::move(hs), std::move(*p), hg, std::move(hc));
}

json datum_to_json(const BLDatum& d) {
  json j;
  j["group"] = group_to_json(*d.group);
  j["codomains"] = json::array();
  j["maps"] = json::array();
  j["p"] = json::array();
  json hc = json::array();
  for (std::size_t k = 0; k < d.size(); ++k) {
    j["codomains"].push_back(group_to_json(*d.codomains[k]));
    j["maps"].push_back(d.maps[k].images());
    j["p"].push_back(d.exponents[k].str());
    hc.push_back(haar_to_json(d.haar_codomains[k]));
  }
  j["haar"] = {{"G", haar_to_json(d.haar_group)}, {"codomains", hc}};
  return j;
}

CompactLieDatum lie_from_json(const json& j) {
  std::vector<std::size_t> simple;
  if (j.contains("simple_dims")) simple = get_as<std::vector<std::size_t>>(j.at("simple_dims"), "simple_dims");
  std::size_t torus = j.contains("torus_dim") ? get_as<std::size_t>(j.at("torus_dim"), "torus_dim") : 0;
  std::vector<LinearizedMap> maps;
  for (const auto& m : require(j, "maps", "Lie datum")) {
    LinearizedMap lm;
    if (m.contains("kept_simple")) lm.kept_simple = get_as<std::vector<std::size_t>>(m.at("kept_simple"), "kept_simple");
    if (m.contains("torus_matrix")) {
      for (const auto& row : m.at("torus_matrix")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rational_from_json(v));
        lm.torus_matrix.push_back(std::move(r));
      }
    }
    maps.push_back(std::move(lm));
  }
  return CompactLieDatum::make(std::move(simple), torus, std::move(maps));
}

json lie_to_json(const CompactLieDatum& d) {
  json j;
  j["simple_dims"] = d.simple_dims;
  j["torus_dim"] = d.torus_dim;
  j["maps"] = json::array();
  for (const auto& m : d.maps) {
    json mj;
    mj["kept_simple"] = m.kept_simple;
    json rows = json::array();
    for (const auto& row : m.torus_matrix) {
      json r = json::array();
      for (const auto& v : row) r.push_back(rational_to_json(v));
      rows.push_back(r);
    }
    mj["torus_matrix"] = rows;
    j["maps"].push_back(mj);
  }
  return j;
}

json rational_to_json(const Rational& q) {
  if (q.is_integer()) return q.num();
  return q.str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw PreconditionError(std::string("bad rational: ") + e.what());
    }
  }
  throw PreconditionError("rationals must be integers or strings like \"1/2\"");
}

json exact_to_json(const ExactValue& v) {
  json primes = json::object();
  for (const auto& [p, e] : v.exponents()) primes[std::to_string(p)] = e.str();
  return {{"primes", primes}};
}

ExactValue exact_from_json(const json& j) {
  ExactValue::Exponents exps;
  for (const auto& [k, v] : require(j, "primes", "exact value").items()) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(k);
    } catch (const std::exception&) {
      throw PreconditionError("bad prime key '" + k + "'");
    }
    exps[p] = Rational::parse(get_as<std::string>(v, "exponent"));
  }
  return ExactValue::from_exponents(exps);
}

json subgroup_to_json(const Subgroup& s) { return s.members(); }

json ideal_to_json(const IdealSpec& s) {
  json rows = json::array();
  for (const auto& row : s.torus_basis) {
    json r = json::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    rows.push_back(r);
  }
  return {{"simple_part", s.simple_part}, {"torus_basis", rows}, {"text", s.str()}};
}

json violation_to_json(const Violation& v) {
  return {{"ideal", ideal_to_json(v.ideal)}, {"slack", v.slack.str()}};
}

json polytope_to_json(const RationalPolytope& p, const VertexReport* vertices) {
  json hs = json::array();
  for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
    const auto& h = p.halfspaces[i];
    json c = json::array();
    for (const auto& v : h.coeffs) c.push_back(rational_to_json(v));
    json hj = {{"coeffs", c}, {"bound", rational_to_json(h.bound)}};
    if (vertices) hj["redundant"] = static_cast<bool>(vertices->redundant[i]);
    hs.push_back(hj);
  }
  json j = {{"dim", p.dim}, {"halfspaces", hs}, {"box", "0 <= x_j <= 1"}};
  if (vertices) {
    json vs = json::array();
    for (const auto& pt : vertices->points) {
      json v = json::array();
      for (const auto& x : pt) v.push_back(x.str());
      vs.push_back(v);
    }
    j["vertices"] = vs;
  }
  return j;
}

json witness_to_json(const ApproximationWitness& w) {
  json times = json::array();
  for (const auto& t : w.times) times.push_back(t.str());
  return {{"times", times},
          {"integers", w.integers},
          {"eps", w.eps.str()},
          {"spacing", w.spacing.str()},
          {"candidates_scanned", w.scanned}};
}

}  // namespace blc::io
