#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "quasihyper/constructions.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/family.hpp"
#include "quasihyper/hypergraph.hpp"
#include "quasihyper/scalar.hpp"
#include "quasihyper/set_system.hpp"

namespace quasihyper::io {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path);

/// Text format or the JSON form {"k","n","edges"}; chosen by the first
/// non-blank character.
Hypergraph load_hypergraph(const std::string& path, std::vector<std::string>* warnings = nullptr);
Hypergraph hypergraph_from_json(const json& j, std::vector<std::string>* warnings = nullptr);
json to_json(const Hypergraph& h);

/// {"k": int, "sets": [[1-based elements], ...]}, order significant.
SetSystem setsystem_from_json(const json& j);
SetSystem load_setsystem(const std::string& path);
json to_json(const SetSystem& q);

/// {"k","n","sets","members"}; each member is a list of 0-based tuples or
/// one of the strings "complete" / "empty".
DirectedFamily family_from_json(const json& j);
json to_json(const DirectedFamily& g);

/// {"k","sets","functions":[spec,...]} or {"k","sets","type":...} applying one
/// generator to every member. Specs: {"type":"constant","value":"p/q"},
/// {"type":"random","seed":s,"resolution":r}, {"type":"table","values":[...]},
/// {"type":"indicator","tuples":[[...],...]}.
WeightEnsemble weights_from_json(const json& j, Vertex n);

/// {"k","classes":[[tag,...],...],"edges":[[global vertex ids],...]}.
json to_json(const PartiteHypergraph& m);
json to_json(const ISetSystem& b);

/// Exact values as "p/q" strings, floats as numbers.
json to_json(const Scalar& s);
json to_json(const mpz_class& z);
json to_json(const mpq_class& q);
Scalar scalar_from_json(const json& j);

}  // namespace quasihyper::io
