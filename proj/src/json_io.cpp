#include "equicount/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace eqc {
namespace io {

namespace {

json box_to_json(const Box& b, int dim) {
  json out = json::array();
  for (int a = 0; a < dim; ++a)
    out.push_back({b.axes[static_cast<std::size_t>(a)].lo, b.axes[static_cast<std::size_t>(a)].hi});
  return out;
}

Box box_from_json(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw std::invalid_argument("box must list one [lo, hi] pair per axis");
  Box b;
  for (int a = 0; a < dim; ++a) {
    const json& pair = j[static_cast<std::size_t>(a)];
    if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("box axis must be [lo, hi]");
    b.axes[static_cast<std::size_t>(a)] = {pair[0].get<double>(), pair[1].get<double>()};
  }
  return b;
}

}  // namespace

json to_json(const ParameterSpace& s) {
  json bounds = json::array();
  json res = json::array();
  for (int a = 0; a < s.dimension(); ++a) {
    bounds.push_back({s.bound(a).lo, s.bound(a).hi});
    res.push_back(s.resolution(a));
  }
  return json{{"dimension", s.dimension()}, {"bounds", bounds}, {"resolution", res}};
}

ParameterSpace space_from_json(const json& j) {
  const int dim = j.at("dimension").get<int>();
  std::vector<Interval> bounds;
  std::vector<int> res;
  for (const json& b : j.at("bounds")) bounds.push_back({b.at(0).get<double>(), b.at(1).get<double>()});
  for (const json& r : j.at("resolution")) res.push_back(r.get<int>());
  if (static_cast<int>(bounds.size()) != dim || static_cast<int>(res.size()) != dim)
    throw std::invalid_argument("space bounds/resolution must match the dimension");
  return ParameterSpace(std::move(bounds), std::move(res));
}

json to_json(const WaveField& f) {
  json samples = json::array();
  for (const Complex& c : f.samples()) samples.push_back({c.real(), c.imag()});
  return json{{"space", to_json(f.space())}, {"samples", samples}};
}

WaveField field_from_json(const json& j) {
  ParameterSpace space = space_from_json(j.at("space"));
  std::vector<Complex> samples;
  samples.reserve(j.at("samples").size());
  for (const json& c : j.at("samples")) samples.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  return WaveField(std::move(space), std::move(samples));
}

json to_json(const Region& r) {
  json out = json::array();
  for (const Box& b : r.boxes()) out.push_back(box_to_json(b, r.dimension()));
  return out;
}

Region region_from_json(const ParameterSpace& space, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("region must be a list of boxes");
  std::vector<Box> boxes;
  boxes.reserve(j.size());
  for (const json& b : j) boxes.push_back(box_from_json(b, space.dimension()));
  return make_region(space, std::move(boxes));
}

json to_json(const Ensemble& e) {
  json cells = json::array();
  for (const Cell& c : e.cells()) {
    json cell{{"box", box_to_json(c.box, e.space().dimension())},
              {"lambda", c.box.measure(e.space().dimension())}};
    if (e.field()) cell["weight"] = e.field()->weight_in_box(c.box);
    cells.push_back(std::move(cell));
  }
  return json{{"rule", e.rule() == PartitionRule::equivolume ? "equivolume" : "equiamplitude"},
              {"n", e.size()},
              {"space", to_json(e.space())},
              {"cells", cells}};
}

Ensemble ensemble_from_json(const json& j, std::shared_ptr<const WaveField> field) {
  ParameterSpace space = space_from_json(j.at("space"));
  const std::string rule_name = j.at("rule").get<std::string>();
  PartitionRule rule;
  if (rule_name == "equivolume") {
    rule = PartitionRule::equivolume;
  } else if (rule_name == "equiamplitude") {
    rule = PartitionRule::equiamplitude;
  } else {
    throw std::invalid_argument("unknown partition rule: " + rule_name);
  }
  std::vector<Cell> cells;
  for (const json& c : j.at("cells")) cells.push_back(Cell{box_from_json(c.at("box"), space.dimension())});
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(cells.size()))
    throw std::invalid_argument("ensemble n does not match its cell count");
  return Ensemble::from_cells(std::move(space), std::move(cells), rule, std::move(field));
}

json to_json(const Rational& q) { return json::array({q.num(), q.den()}); }

json to_json(const IntervalProb& p) {
  return json{{"lo", to_json(p.lo)}, {"hi", to_json(p.hi)}, {"out_of_range", p.out_of_range}};
}

IntervalProb interval_from_json(const json& j) {
  const Rational lo(j.at("lo").at(0).get<std::int64_t>(), j.at("lo").at(1).get<std::int64_t>());
  const Rational hi(j.at("hi").at(0).get<std::int64_t>(), j.at("hi").at(1).get<std::int64_t>());
  return IntervalProb::from_bounds(lo, hi);
}

json to_json(const ConsistencyReport& rep) {
  json intervals = json::array();
  for (const IntervalProb& p : rep.intervals) intervals.push_back(to_json(p));
  json out{{"intervals", intervals}, {"verdict", rep.consistent ? "consistent" : "inconsistent"}};
  if (rep.intersection) out["intersection"] = to_json(*rep.intersection);
  if (rep.witnesses) out["witnesses"] = {rep.witnesses->first, rep.witnesses->second};
  return out;
}

json to_json(const AdditivityReport& rep) {
  return json{{"mu_beta", to_json(rep.mu_beta)},
              {"mu_beta_prime", to_json(rep.mu_beta_prime)},
              {"mu_union", to_json(rep.mu_union)},
              {"sum", to_json(rep.sum)},
              {"subset_holds", rep.subset_holds},
              {"exact_additivity", rep.exact_additivity},
              {"shared_superposition", rep.shared_superposition}};
}

json to_json(const BornContainmentReport& rep) {
  return json{{"interval", to_json(rep.interval)}, {"born", rep.born},
              {"contained", rep.contained},       {"margin_lo", rep.margin_lo},
              {"margin_hi", rep.margin_hi},       {"exact_partition", rep.exact_partition},
              {"exact_agreement_error", rep.exact_agreement_error}, {"pass", rep.pass}};
}

json to_json(const ValidationReport& rep) {
  return json{{"n", rep.n},
              {"max_pairwise_overlap", rep.max_pairwise_overlap},
              {"coverage_gap", rep.coverage_gap},
              {"lambda_sum_error", rep.lambda_sum_error},
              {"max_volume_deviation", rep.max_volume_deviation},
              {"max_weight_deviation", rep.max_weight_deviation},
              {"weight_sum_error", rep.weight_sum_error},
              {"cells_positive", rep.cells_positive}};
}

void write_file(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
}

json read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  json j;
  is >> j;
  return j;
}

}  // namespace io
}  // namespace eqc
