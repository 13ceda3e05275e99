#include "quasihyper/family.hpp"

#include <algorithm>
#include <limits>

#include "quasihyper/error.hpp"
#include "quasihyper/random.hpp"

namespace quasihyper {

namespace {

constexpr std::uint64_t kMaxTupleSetWords = std::uint64_t{1} << 25;

std::uint64_t flat_index(std::span<const Vertex> t, Vertex n) {
  std::uint64_t idx = 0;
  for (Vertex v : t) idx = idx * n + v;
  return idx;
}

}  // namespace

std::uint64_t tuple_space(Vertex n, int arity, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < arity; ++i) {
    if (n != 0 && total > cap / n) throw BudgetExceeded("n^" + std::to_string(arity) + " exceeds the dense table budget");
    total *= n;
  }
  if (total > cap) throw BudgetExceeded("n^" + std::to_string(arity) + " exceeds the dense table budget");
  return total;
}

Tuple project(std::span<const Vertex> v, Subset q) {
  Tuple out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (q & (Subset{1} << i)) out.push_back(v[i]);
  return out;
}

bool has_repeat(std::span<const Vertex> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t[i] == t[j]) return true;
  return false;
}

TupleSet::TupleSet(int arity, Vertex n, bool full) : arity_(arity), n_(n) {
  if (arity < 0) throw InvalidArgument("negative arity");
  if (arity == 0) {
    row_words_ = 1;
    bits_.assign(1, full ? 1 : 0);
    return;
  }
  row_words_ = words_for(n);
  std::uint64_t rows = tuple_space(n, arity - 1, kMaxTupleSetWords);
  if (rows * row_words_ > kMaxTupleSetWords) throw BudgetExceeded("directed hypergraph too large for a dense table");
  bits_.assign(rows * row_words_, 0);
  if (full && n > 0) {
    for (std::uint64_t r = 0; r < rows; ++r) {
      for (std::size_t w = 0; w < row_words_; ++w) bits_[r * row_words_ + w] = ~Word{0};
      if (n % 64 != 0) bits_[r * row_words_ + row_words_ - 1] = (Word{1} << (n % 64)) - 1;
    }
  }
}

std::size_t TupleSet::row_index(std::span<const Vertex> prefix) const {
  return static_cast<std::size_t>(flat_index(prefix, n_)) * row_words_;
}

bool TupleSet::contains(std::span<const Vertex> t) const {
  if (t.size() != static_cast<std::size_t>(arity_)) throw InvalidArgument("tuple arity mismatch");
  if (arity_ == 0) return bits_[0] & 1U;
  Vertex last = t.back();
  return (bits_[row_index(t.first(t.size() - 1)) + last / 64] >> (last % 64)) & 1U;
}

void TupleSet::insert(std::span<const Vertex> t) {
  if (t.size() != static_cast<std::size_t>(arity_)) throw InvalidArgument("tuple arity mismatch");
  for (Vertex v : t)
    if (v >= n_) throw InvalidArgument("tuple entry out of range");
  if (arity_ == 0) {
    bits_[0] = 1;
    return;
  }
  Vertex last = t.back();
  bits_[row_index(t.first(t.size() - 1)) + last / 64] |= Word{1} << (last % 64);
}

void TupleSet::erase(std::span<const Vertex> t) {
  if (t.size() != static_cast<std::size_t>(arity_)) throw InvalidArgument("tuple arity mismatch");
  if (arity_ == 0) {
    bits_[0] = 0;
    return;
  }
  Vertex last = t.back();
  bits_[row_index(t.first(t.size() - 1)) + last / 64] &= ~(Word{1} << (last % 64));
}

std::span<const Word> TupleSet::row(std::span<const Vertex> prefix) const {
  return {bits_.data() + row_index(prefix), row_words_};
}

std::uint64_t TupleSet::count() const {
  std::uint64_t c = 0;
  for (Word w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

void TupleSet::for_each(const std::function<void(std::span<const Vertex>)>& f) const {
  if (arity_ == 0) {
    if (bits_[0] & 1U) f({});
    return;
  }
  std::size_t rows = bits_.size() / row_words_;
  Tuple t(static_cast<std::size_t>(arity_));
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rem = r;
    for (int j = arity_ - 2; j >= 0; --j) {
      t[static_cast<std::size_t>(j)] = static_cast<Vertex>(rem % n_);
      rem /= n_;
    }
    for_each_set_bit(std::span<const Word>(bits_.data() + r * row_words_, row_words_), [&](std::size_t c) {
      t.back() = static_cast<Vertex>(c);
      f(t);
    });
  }
}

DirectedFamily::DirectedFamily(SetSystem sets, Vertex n, std::vector<TupleSet> members)
    : sets_(std::move(sets)), n_(n), members_(std::move(members)) {
  if (members_.size() != sets_.size()) throw InvalidArgument("family needs one directed hypergraph per member");
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (members_[j].arity() != subset_size(sets_[j])) throw InvalidArgument("directed hypergraph arity differs from |Q|");
    if (members_[j].n() != n_) throw InvalidArgument("inconsistent vertex count across the family");
  }
}

DirectedFamily DirectedFamily::complete(const SetSystem& sets, Vertex n) {
  std::vector<TupleSet> members;
  for (Subset q : sets.members()) members.emplace_back(subset_size(q), n, true);
  return DirectedFamily(sets, n, std::move(members));
}

DirectedFamily DirectedFamily::empty(const SetSystem& sets, Vertex n) {
  std::vector<TupleSet> members;
  for (Subset q : sets.members()) members.emplace_back(subset_size(q), n, false);
  return DirectedFamily(sets, n, std::move(members));
}

bool DirectedFamily::supports(std::span<const Vertex> v) const {
  for (std::size_t j = 0; j < members_.size(); ++j)
    if (!members_[j].contains(project(v, sets_[j]))) return false;
  return true;
}

WeightFunction::WeightFunction(int arity, Vertex n, std::variant<Constant, Indicator, Table, Random> source)
    : arity_(arity), n_(n), source_(std::move(source)) {
  auto check_range = [](const mpq_class& v) {
    if (v < -1 || v > 1) throw InvalidArgument("weight " + v.get_str() + " outside [-1,1]");
  };
  auto fits = [](const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; };
  if (auto* c = std::get_if<Constant>(&source_)) {
    check_range(c->value);
    if (!fits(c->value.get_num()) || !fits(c->value.get_den()))
      throw BudgetExceeded("constant weight denominator too large");
    denominator_ = c->value.get_den().get_si();
    max_abs_numerator_ = std::abs(c->value.get_num().get_si());
  } else if (auto* ind = std::get_if<Indicator>(&source_)) {
    if (ind->members.arity() != arity || ind->members.n() != n) throw InvalidArgument("indicator shape mismatch");
  } else if (auto* tab = std::get_if<Table>(&source_)) {
    if (tab->values.size() != tuple_space(n, arity, kDenseWeightCap)) throw InvalidArgument("weight table has the wrong size");
    mpz_class lcm = 1;
    for (const auto& v : tab->values) {
      check_range(v);
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    }
    if (!fits(lcm)) throw BudgetExceeded("weight table denominators too large for integer kernels");
    denominator_ = lcm.get_si();
    max_abs_numerator_ = 0;
    table_numerators_.reserve(tab->values.size());
    for (const auto& v : tab->values) {
      mpz_class num = v.get_num() * (lcm / v.get_den());
      table_numerators_.push_back(num.get_si());
      max_abs_numerator_ = std::max<std::int64_t>(max_abs_numerator_, std::abs(num.get_si()));
    }
  } else {
    auto& r = std::get<Random>(source_);
    if (r.resolution < 1 || r.resolution > (std::int64_t{1} << 40)) throw InvalidArgument("bad random weight resolution");
    denominator_ = r.resolution;
    max_abs_numerator_ = r.resolution;
  }
}

std::int64_t WeightFunction::random_numerator(std::span<const Vertex> t) const {
  const auto& r = std::get<Random>(source_);
  std::uint64_t h = splitmix64(r.seed ^ splitmix64(flat_index(t, n_) + 0x51ed2701ULL));
  auto span = static_cast<std::uint64_t>(2 * r.resolution + 1);
  return static_cast<std::int64_t>(h % span) - r.resolution;
}

std::int64_t WeightFunction::numerator(std::span<const Vertex> t) const {
  if (has_repeat(t)) return 0;
  switch (source_.index()) {
    case 0: return std::get<Constant>(source_).value.get_num().get_si();
    case 1: return std::get<Indicator>(source_).members.contains(t) ? 1 : 0;
    case 2: return table_numerators_[static_cast<std::size_t>(flat_index(t, n_))];
    default: return random_numerator(t);
  }
}

mpq_class WeightFunction::value(std::span<const Vertex> t) const {
  if (has_repeat(t)) return 0;
  if (source_.index() == 2) return std::get<Table>(source_).values[static_cast<std::size_t>(flat_index(t, n_))];
  if (source_.index() == 0) return std::get<Constant>(source_).value;
  mpq_class q(numerator(t), denominator_);
  q.canonicalize();
  return q;
}

double WeightFunction::value_double(std::span<const Vertex> t) const {
  return static_cast<double>(numerator(t)) / static_cast<double>(denominator_);
}

std::vector<std::int64_t> WeightFunction::numerator_table() const {
  std::uint64_t size = tuple_space(n_, arity_, kDenseWeightCap);
  std::vector<std::int64_t> out(size);
  Tuple t(static_cast<std::size_t>(arity_), 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    std::uint64_t rem = idx;
    for (int j = arity_ - 1; j >= 0; --j) {
      t[static_cast<std::size_t>(j)] = static_cast<Vertex>(rem % n_);
      rem /= n_;
    }
    out[idx] = numerator(t);
  }
  return out;
}

mpq_class WeightFunction::part(std::span<const Vertex> t, bool positive) const {
  mpq_class v = value(t);
  if (!positive) v = -v;
  return v > 0 ? v : mpq_class(0);
}

WeightEnsemble::WeightEnsemble(SetSystem sets, Vertex n, std::vector<WeightFunction> functions)
    : sets_(std::move(sets)), n_(n), functions_(std::move(functions)) {
  if (functions_.size() != sets_.size()) throw InvalidArgument("ensemble needs one weight function per member");
  for (std::size_t j = 0; j < functions_.size(); ++j)
    if (functions_[j].arity() != subset_size(sets_[j]) || functions_[j].n() != n_)
      throw InvalidArgument("weight function shape mismatch");
}

WeightEnsemble WeightEnsemble::indicator(const DirectedFamily& family) {
  std::vector<WeightFunction> fs;
  for (std::size_t j = 0; j < family.size(); ++j)
    fs.emplace_back(subset_size(family.sets()[j]), family.n(), WeightFunction::Indicator{family.member(j)});
  return WeightEnsemble(family.sets(), family.n(), std::move(fs));
}

WeightEnsemble WeightEnsemble::constant(const SetSystem& sets, Vertex n, const mpq_class& value) {
  std::vector<WeightFunction> fs;
  for (Subset q : sets.members()) fs.emplace_back(subset_size(q), n, WeightFunction::Constant{value});
  return WeightEnsemble(sets, n, std::move(fs));
}

WeightEnsemble WeightEnsemble::random(const SetSystem& sets, Vertex n, std::uint64_t seed, std::int64_t resolution) {
  std::vector<WeightFunction> fs;
  for (std::size_t j = 0; j < sets.size(); ++j)
    fs.emplace_back(subset_size(sets[j]), n, WeightFunction::Random{splitmix64(seed + j), resolution});
  return WeightEnsemble(sets, n, std::move(fs));
}

}  // namespace quasihyper
