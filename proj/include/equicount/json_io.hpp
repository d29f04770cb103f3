#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "equicount/field.hpp"
#include "equicount/interval_prob.hpp"
#include "equicount/partition.hpp"
#include "equicount/rules.hpp"
#include "equicount/space.hpp"

namespace eqc {
namespace io {

using nlohmann::json;

// Schemas (documented in the README):
//   space    {"dimension": d, "bounds": [[lo,hi],...], "resolution": [n,...]}
//   field    {"space": <space>, "samples": [[re,im],...]}   x varies fastest
//   region   [ <box>, ... ] with box = [[lo,hi] per axis]
//   ensemble {"rule": "...", "n": n, "space": <space>,
//             "cells": [{"box": <box>, "lambda": l, "weight": w?}, ...]}
//   interval {"lo": [num,den], "hi": [num,den], "out_of_range": b}

json to_json(const ParameterSpace& s);
ParameterSpace space_from_json(const json& j);

json to_json(const WaveField& f);
WaveField field_from_json(const json& j);

json to_json(const Region& r);
Region region_from_json(const ParameterSpace& space, const json& j);

json to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j, std::shared_ptr<const WaveField> field = nullptr);

json to_json(const Rational& q);
json to_json(const IntervalProb& p);
IntervalProb interval_from_json(const json& j);

json to_json(const ConsistencyReport& rep);
json to_json(const AdditivityReport& rep);
json to_json(const BornContainmentReport& rep);
json to_json(const ValidationReport& rep);

void write_file(const std::string& path, const json& j);
json read_file(const std::string& path);

}  // namespace io
}  // namespace eqc
