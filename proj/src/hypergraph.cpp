#include "quasihyper/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "quasihyper/error.hpp"

namespace quasihyper {

namespace {

// Small-buffer copy sorted in place; k is tiny so insertion sort wins.
struct SortedCopy {
  explicit SortedCopy(std::span<const Vertex> t) : size(t.size()) {
    if (size > kMax) throw InvalidArgument("tuple too long");
    std::copy(t.begin(), t.end(), buf);
    for (std::size_t i = 1; i < size; ++i)
      for (std::size_t j = i; j > 0 && buf[j - 1] > buf[j]; --j) std::swap(buf[j - 1], buf[j]);
  }
  bool distinct() const {
    for (std::size_t i = 1; i < size; ++i)
      if (buf[i - 1] == buf[i]) return false;
    return true;
  }
  std::span<const Vertex> view() const { return {buf, size}; }

  static constexpr std::size_t kMax = 32;
  Vertex buf[kMax];
  std::size_t size;
};

}  // namespace

Hypergraph::Hypergraph(int k, Vertex n, const std::vector<Tuple>& edges, std::size_t* duplicates)
    : k_(k), n_(n) {
  if (k < 1) throw InvalidArgument("uniformity must be at least 1");
  std::vector<Tuple> canon;
  canon.reserve(edges.size());
  for (const Tuple& e : edges) {
    if (e.size() != static_cast<std::size_t>(k))
      throw InvalidArgument("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
    Tuple s = e;
    std::sort(s.begin(), s.end());
    for (Vertex v : s)
      if (v >= n) throw InvalidArgument("vertex " + std::to_string(v) + " out of range [0," + std::to_string(n) + ")");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InvalidArgument("repeated vertex " + std::to_string(*std::adjacent_find(s.begin(), s.end())) +
                            " within an edge");
    canon.push_back(std::move(s));
  }
  std::sort(canon.begin(), canon.end());
  auto last = std::unique(canon.begin(), canon.end());
  if (duplicates != nullptr) *duplicates = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());
  data_.reserve(canon.size() * static_cast<std::size_t>(k));
  for (const Tuple& e : canon) data_.insert(data_.end(), e.begin(), e.end());
}

Hypergraph Hypergraph::empty(int k, Vertex n) { return Hypergraph(k, n, {}); }

Hypergraph Hypergraph::complete(int k, Vertex n) {
  std::vector<Tuple> edges;
  if (static_cast<Vertex>(k) <= n) {
    Tuple t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = static_cast<Vertex>(i);
    while (true) {
      edges.push_back(t);
      int i = k - 1;
      while (i >= 0 && t[static_cast<std::size_t>(i)] == n - static_cast<Vertex>(k - i)) --i;
      if (i < 0) break;
      ++t[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return Hypergraph(k, n, edges);
}

std::vector<Tuple> Hypergraph::edges() const {
  std::vector<Tuple> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < edge_count(); ++i) {
    auto e = edge(i);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

bool Hypergraph::contains(std::span<const Vertex> t) const {
  if (t.size() != static_cast<std::size_t>(k_)) return false;
  SortedCopy s(t);
  if (!s.distinct()) return false;
  auto key = s.view();
  std::size_t lo = 0, hi = edge_count();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto e = edge(mid);
    if (std::lexicographical_compare(e.begin(), e.end(), key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < edge_count() && std::equal(key.begin(), key.end(), edge(lo).begin());
}

namespace {

std::vector<std::uint64_t> read_integers(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\t' && *ptr != '\r'))
      throw ParseError("line " + std::to_string(line_no) + ": expected non-negative integers");
    i = static_cast<std::size_t>(ptr - line.data());
    out.push_back(v);
  }
  return out;
}

}  // namespace

Hypergraph parse_hypergraph(std::string_view text, std::vector<std::string>* warnings) {
  std::size_t pos = 0, line_no = 0;
  bool have_header = false;
  int k = 0;
  Vertex n = 0;
  std::vector<Tuple> edges;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    auto values = read_integers(line, line_no);
    if (!have_header) {
      if (values.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": header must be \"k n\"");
      if (values[0] < 1 || values[0] > 16) throw ParseError("uniformity k must be in [1,16]");
      if (values[1] > std::numeric_limits<Vertex>::max()) throw ParseError("vertex count too large");
      k = static_cast<int>(values[0]);
      n = static_cast<Vertex>(values[1]);
      have_header = true;
    } else {
      if (values.size() != static_cast<std::size_t>(k))
        throw ParseError("line " + std::to_string(line_no) + ": edge has " + std::to_string(values.size()) +
                         " entries, expected " + std::to_string(k));
      Tuple e;
      for (auto v : values) {
        if (v >= n)
          throw ParseError("line " + std::to_string(line_no) + ": vertex " + std::to_string(v) + " out of range");
        e.push_back(static_cast<Vertex>(v));
      }
      Tuple s = e;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ParseError("line " + std::to_string(line_no) + ": repeated vertex within an edge");
      edges.push_back(std::move(e));
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError("missing \"k n\" header");
  std::size_t dups = 0;
  Hypergraph h(k, n, edges, &dups);
  if (dups > 0 && warnings != nullptr)
    warnings->push_back("dropped " + std::to_string(dups) + " duplicate edge(s)");
  return h;
}

std::string serialize_hypergraph(const Hypergraph& h) {
  std::ostringstream os;
  os << h.k() << ' ' << h.n() << '\n';
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) os << (j ? " " : "") << e[j];
    os << '\n';
  }
  return os.str();
}

Scalar density(const Hypergraph& h) {
  if (h.n() < static_cast<Vertex>(h.k())) throw InvalidArgument("density needs n >= k");
  return Scalar(mpq_class(mpz_class(static_cast<unsigned long>(h.edge_count())), binomial(h.n(), static_cast<std::uint64_t>(h.k()))));
}

Scalar edge_indicator(const Hypergraph& h, const Scalar& d, std::span<const Vertex> t) {
  if (t.size() != static_cast<std::size_t>(h.k())) throw InvalidArgument("tuple length differs from k");
  for (Vertex v : t)
    if (v >= h.n()) throw InvalidArgument("tuple entry out of range");
  Scalar one = d.is_exact() ? Scalar::integer(1) : Scalar(1.0);
  return h.contains(t) ? one - d : -d;
}

mpz_class degenerate_tuple_count(Vertex n, int k) {
  return pow_z(n, static_cast<unsigned long>(k)) - falling_factorial(n, static_cast<std::uint64_t>(k));
}

TupleKey::TupleKey(Vertex n, int max_arity) : base_(std::max<Vertex>(n, 1)) {
  long double span = 1;
  for (int i = 0; i < max_arity; ++i) span *= static_cast<long double>(base_);
  if (span > static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    throw BudgetExceeded("n^k too large for packed tuple keys");
}

EdgeLookup::EdgeLookup(const Hypergraph& h)
    : k_(h.k()), n_(h.n()), row_words_(words_for(h.n())), key_(h.n(), h.k()), zero_row_(row_words_, 0) {
  edges_.reserve(h.edge_count() * 2);
  std::vector<Vertex> rest(static_cast<std::size_t>(std::max(k_ - 1, 0)));
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    auto e = h.edge(i);
    edges_.insert(key_(e));
    for (int drop = 0; drop < k_; ++drop) {
      std::size_t r = 0;
      for (int j = 0; j < k_; ++j)
        if (j != drop) rest[r++] = e[static_cast<std::size_t>(j)];
      auto [it, inserted] = link_rows_.try_emplace(key_(rest), link_data_.size());
      if (inserted) link_data_.resize(link_data_.size() + row_words_, 0);
      Vertex c = e[static_cast<std::size_t>(drop)];
      link_data_[it->second + c / 64] |= Word{1} << (c % 64);
    }
  }
}

bool EdgeLookup::contains(std::span<const Vertex> t) const {
  if (t.size() != static_cast<std::size_t>(k_)) return false;
  SortedCopy s(t);
  if (!s.distinct()) return false;
  return edges_.count(key_(s.view())) != 0;
}

std::span<const Word> EdgeLookup::link(std::span<const Vertex> prefix) const {
  SortedCopy s(prefix);
  if (!s.distinct()) return zero_row_;
  auto it = link_rows_.find(key_(s.view()));
  if (it == link_rows_.end()) return zero_row_;
  return {link_data_.data() + it->second, row_words_};
}

}  // namespace quasihyper
