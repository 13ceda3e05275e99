#include "quasihyper/io.hpp"

#include <fstream>
#include <sstream>

#include "quasihyper/error.hpp"

namespace quasihyper::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

Tuple tuple_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("tuple must be an array");
  Tuple t;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw ParseError("tuple entries must be non-negative integers");
    t.push_back(static_cast<Vertex>(x.get<long long>()));
  }
  return t;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Hypergraph hypergraph_from_json(const json& j, std::vector<std::string>* warnings) {
  int k = get_as<int>(field(j, "k"), "k");
  long long n = get_as<long long>(field(j, "n"), "n");
  if (k < 1 || k > 16) throw ParseError("k must lie in [1,16]");
  if (n < 0 || n > (1LL << 31)) throw ParseError("n out of range");
  std::vector<Tuple> edges;
  for (const auto& e : field(j, "edges")) edges.push_back(tuple_from_json(e));
  for (const auto& e : edges)
    for (Vertex v : e)
      if (v >= static_cast<Vertex>(n)) throw ParseError("vertex " + std::to_string(v) + " out of range");
  std::size_t dups = 0;
  try {
    Hypergraph h(k, static_cast<Vertex>(n), edges, &dups);
    if (dups > 0 && warnings != nullptr) warnings->push_back(std::to_string(dups) + " duplicate edge(s) removed");
    return h;
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Hypergraph load_hypergraph(const std::string& path, std::vector<std::string>* warnings) {
  std::string text = read_file(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return hypergraph_from_json(parse_json(text), warnings);
  return parse_hypergraph(text, warnings);
}

json to_json(const Hypergraph& h) {
  json j;
  j["k"] = h.k();
  j["n"] = h.n();
  json edges = json::array();
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    edges.push_back(Tuple(e.begin(), e.end()));
  }
  j["edges"] = std::move(edges);
  return j;
}

SetSystem setsystem_from_json(const json& j) {
  int k = get_as<int>(field(j, "k"), "k");
  if (k < 1 || k > kMaxGround) throw ParseError("k must lie in [1,16]");
  std::vector<Subset> members;
  for (const auto& s : field(j, "sets")) {
    if (!s.is_array()) throw ParseError("each set must be an array");
    std::vector<int> elems;
    for (const auto& x : s) {
      if (!x.is_number_integer()) throw ParseError("set elements must be integers");
      int v = x.get<int>();
      if (v < 1 || v > k) throw ParseError("set element " + std::to_string(v) + " outside [1," + std::to_string(k) + "]");
      elems.push_back(v);
    }
    members.push_back(make_subset(elems));
  }
  try {
    return SetSystem(k, members);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

SetSystem load_setsystem(const std::string& path) { return setsystem_from_json(parse_json(read_file(path))); }

json to_json(const SetSystem& q) {
  json j;
  j["k"] = q.k();
  json sets = json::array();
  for (Subset s : q.members()) sets.push_back(subset_elements(s));
  j["sets"] = std::move(sets);
  return j;
}

DirectedFamily family_from_json(const json& j) {
  SetSystem q = setsystem_from_json(j);
  long long n = get_as<long long>(field(j, "n"), "n");
  if (n < 0 || n > (1LL << 20)) throw ParseError("n out of range");
  const json& members = field(j, "members");
  if (!members.is_array() || members.size() != q.size()) throw ParseError("need one member per set");
  std::vector<TupleSet> sets;
  for (std::size_t m = 0; m < q.size(); ++m) {
    int arity = subset_size(q[m]);
    const json& spec = members[m];
    if (spec.is_string()) {
      std::string s = spec.get<std::string>();
      if (s != "complete" && s != "empty") throw ParseError("member must be a tuple list, \"complete\" or \"empty\"");
      sets.emplace_back(arity, static_cast<Vertex>(n), s == "complete");
      continue;
    }
    TupleSet set(arity, static_cast<Vertex>(n));
    for (const auto& t : spec) {
      Tuple tup = tuple_from_json(t);
      if (tup.size() != static_cast<std::size_t>(arity)) throw ParseError("tuple arity differs from |Q|");
      for (Vertex v : tup)
        if (v >= static_cast<Vertex>(n)) throw ParseError("tuple vertex out of range");
      set.insert(tup);
    }
    sets.push_back(std::move(set));
  }
  return DirectedFamily(q, static_cast<Vertex>(n), std::move(sets));
}

json to_json(const DirectedFamily& g) {
  json j = to_json(g.sets());
  j["n"] = g.n();
  json members = json::array();
  for (std::size_t m = 0; m < g.size(); ++m) {
    json tuples = json::array();
    g.member(m).for_each([&](std::span<const Vertex> t) { tuples.push_back(Tuple(t.begin(), t.end())); });
    members.push_back(std::move(tuples));
  }
  j["members"] = std::move(members);
  return j;
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(mpq_class(mpz_class(j.dump(), 10)));
  if (j.is_number()) return Scalar::parse(j.dump());
  throw ParseError("expected a number or a \"p/q\" string");
}

namespace {

WeightFunction weight_from_json(const json& spec, int arity, Vertex n, std::size_t index) {
  std::string type = get_as<std::string>(field(spec, "type"), "type");
  if (type == "constant") return WeightFunction(arity, n, WeightFunction::Constant{scalar_from_json(field(spec, "value")).exact()});
  if (type == "random") {
    auto seed = get_as<std::uint64_t>(field(spec, "seed"), "seed");
    std::int64_t res = spec.contains("resolution") ? get_as<std::int64_t>(spec.at("resolution"), "resolution") : 1 << 16;
    return WeightFunction(arity, n, WeightFunction::Random{seed + index, res});
  }
  if (type == "table") {
    WeightFunction::Table t;
    for (const auto& v : field(spec, "values")) t.values.push_back(scalar_from_json(v).exact());
    return WeightFunction(arity, n, std::move(t));
  }
  if (type == "indicator") {
    TupleSet set(arity, n);
    for (const auto& t : field(spec, "tuples")) {
      Tuple tup = tuple_from_json(t);
      if (tup.size() != static_cast<std::size_t>(arity)) throw ParseError("tuple arity differs from |Q|");
      for (Vertex v : tup)
        if (v >= n) throw ParseError("tuple vertex out of range");
      set.insert(tup);
    }
    return WeightFunction(arity, n, WeightFunction::Indicator{std::move(set)});
  }
  throw ParseError("unknown weight type '" + type + "'");
}

}  // namespace

WeightEnsemble weights_from_json(const json& j, Vertex n) {
  SetSystem q = setsystem_from_json(j);
  std::vector<WeightFunction> fs;
  try {
    for (std::size_t m = 0; m < q.size(); ++m) {
      int arity = subset_size(q[m]);
      if (j.contains("functions")) {
        const json& list = j.at("functions");
        if (!list.is_array() || list.size() != q.size()) throw ParseError("need one weight function per set");
        fs.push_back(weight_from_json(list[m], arity, n, 0));
      } else {
        fs.push_back(weight_from_json(j, arity, n, m));
      }
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return WeightEnsemble(q, n, std::move(fs));
}

json to_json(const PartiteHypergraph& m) {
  json j;
  j["k"] = m.k();
  j["classes"] = m.tags();
  json edges = json::array();
  for (const auto& e : m.edges()) {
    json ids = json::array();
    for (int c = 0; c < m.k(); ++c) ids.push_back(m.global_id(c, e[static_cast<std::size_t>(c)]));
    edges.push_back(std::move(ids));
  }
  j["edges"] = std::move(edges);
  return j;
}

json to_json(const ISetSystem& b) {
  json j;
  j["n"] = b.n();
  j["i"] = b.i();
  if (b.seed()) j["seed"] = *b.seed();
  j["members"] = b.members();
  return j;
}

json to_json(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t()) != 0) return json(z.get_si());
  return json(z.get_str());
}

json to_json(const mpq_class& q) { return json(q.get_str()); }

json to_json(const Scalar& s) {
  if (s.is_exact()) return json(s.exact().get_str());
  return json(s.to_double());
}

}  // namespace quasihyper::io
