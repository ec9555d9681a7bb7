#include "blc/constant.hpp"

#include "blc/errors.hpp"

namespace blc {

ExactValue ratio(const BLDatum& d, const Subgroup& h) {
  if (h.parent() != d.group) throw PreconditionError("ratio: subgroup is not in G");
  ExactValue v = ExactValue::from_rational(d.haar_group.mass(h.order()));
  for (std::size_t j = 0; j < d.size(); ++j) {
    Rational inv = d.exponents[j].reciprocal();
    if (inv.is_zero()) continue;
    Subgroup img = image(d.maps[j], h);
    v /= ExactValue::from_rational(d.haar_codomains[j].mass(img.order())).pow(inv);
  }
  return v;
}

Subgroup saturate(const BLDatum& d, const Subgroup& h) {
  if (h.parent() != d.group) throw PreconditionError("saturate: subgroup is not in G");
  Subgroup s = Subgroup::whole(d.group);
  for (const auto& m : d.maps) s = intersect(s, preimage(m, image(m, h)));
  return s;
}

bool is_saturated(const BLDatum& d, const Subgroup& h) { return saturate(d, h) == h; }

ConstantReport bl_constant(const BLDatum& d, const ConstantOptions& options) {
  CanonicalForm cf = canonicalize(d);
  const BLDatum& c = cf.datum;

  std::vector<Subgroup> subgroups =
      options.provider ? options.provider(c.group) : all_subgroups(c.group, options.limits);

  ConstantReport report;
  report.input_tag = cf.input_tag;
  report.canonicalized = !cf.input_tag.is_canonical;
  report.subgroup_count = subgroups.size();

  std::optional<std::size_t> best;
  ExactValue best_value;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    const Subgroup& h = subgroups[i];
    if (!options.all_subgroups && !is_saturated(c, h)) continue;
    ExactValue v = ratio(c, h);
    ++report.evaluated;
    if (!best) {
      best = i;
      best_value = v;
    } else {
      auto ord = compare(v, best_value);
      if (ord > 0) {
        best = i;
        best_value = v;
        report.ties = false;
      } else if (ord == 0) {
        report.ties = true;
      }
    }
    if (options.keep_candidates) report.candidates.push_back({h, v});
  }
  if (!best) throw PreconditionError("no subgroups evaluated");

  report.value = best_value;
  const Subgroup& winner = subgroups[*best];
  report.argmax = report.canonicalized ? preimage(cf.projection, winner) : winner;
  report.saturated = is_saturated(d, report.argmax);
  return report;
}

std::vector<std::vector<Rational>> extremizer(const BLDatum& d, const ConstantReport& report) {
  if (report.argmax.parent() != d.group) throw PreconditionError("extremizer: report does not belong to this datum");
  std::vector<std::vector<Rational>> out;
  for (std::size_t j = 0; j < d.size(); ++j) {
    Subgroup img = image(d.maps[j], report.argmax);
    std::vector<Rational> f(d.codomains[j]->order(), Rational(0));
    for (auto y : img.members()) f[y] = Rational(1);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace blc
