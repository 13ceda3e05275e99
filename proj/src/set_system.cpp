#include "quasihyper/set_system.hpp"

#include <algorithm>
#include <numeric>

#include "quasihyper/error.hpp"

namespace quasihyper {

std::vector<int> subset_elements(Subset s) {
  std::vector<int> out;
  for (int i = 1; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

Subset make_subset(const std::vector<int>& elements) {
  Subset s = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxGround) throw InvalidArgument("ground element " + std::to_string(e) + " out of range");
    Subset bit = Subset{1} << (e - 1);
    if (s & bit) throw InvalidArgument("repeated ground element " + std::to_string(e));
    s |= bit;
  }
  return s;
}

std::string subset_to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int e : subset_elements(s)) {
    out += (first ? "" : ",") + std::to_string(e);
    first = false;
  }
  return out + "}";
}

SetSystem::SetSystem(int k, std::vector<Subset> members) : k_(k), members_(std::move(members)) {
  if (k < 1 || k > kMaxGround) throw InvalidArgument("ground set size must be in [1," + std::to_string(kMaxGround) + "]");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!subset_of(members_[i], full_subset(k)))
      throw InvalidArgument("member " + subset_to_string(members_[i]) + " is not a subset of [" + std::to_string(k) + "]");
    for (std::size_t j = 0; j < i; ++j)
      if (members_[i] == members_[j]) throw InvalidArgument("repeated member " + subset_to_string(members_[i]));
  }
}

SetSystem SetSystem::level(int k, int r) {
  std::vector<std::vector<int>> lists;
  for (Subset s = 0; s <= full_subset(k); ++s)
    if (subset_size(s) == r) lists.push_back(subset_elements(s));
  std::sort(lists.begin(), lists.end());
  std::vector<Subset> members;
  for (const auto& l : lists) members.push_back(make_subset(l));
  return SetSystem(k, std::move(members));
}

bool SetSystem::contains(Subset s) const { return std::find(members_.begin(), members_.end(), s) != members_.end(); }

SetSystem SetSystem::prefix(std::size_t j) const {
  return SetSystem(k_, std::vector<Subset>(members_.begin(), members_.begin() + static_cast<std::ptrdiff_t>(std::min(j, size()))));
}

SetSystem SetSystem::without(Subset s) const {
  std::vector<Subset> out;
  for (Subset m : members_)
    if (m != s) out.push_back(m);
  return SetSystem(k_, std::move(out));
}

SetSystem SetSystem::reordered(const std::vector<std::size_t>& order) const {
  if (order.size() != size()) throw InvalidArgument("reordering has the wrong length");
  std::vector<Subset> out;
  for (std::size_t i : order) out.push_back(members_.at(i));
  return SetSystem(k_, std::move(out));
}

std::string SetSystem::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) out += (i ? "," : "") + subset_to_string(members_[i]);
  return out + "}";
}

SetSystem antichain(const SetSystem& q) {
  std::vector<Subset> out;
  for (Subset a : q.members()) {
    bool dominated = std::any_of(q.members().begin(), q.members().end(),
                                 [a](Subset b) { return a != b && subset_of(a, b); });
    if (!dominated) out.push_back(a);
  }
  return SetSystem(q.k(), std::move(out));
}

int degree(const SetSystem& q, int element) {
  if (element < 1 || element > q.k())
    throw InvalidArgument("element " + std::to_string(element) + " outside [1," + std::to_string(q.k()) + "]");
  return static_cast<int>(std::count_if(q.members().begin(), q.members().end(),
                                        [element](Subset s) { return subset_has(s, element); }));
}

bool covered_by(const SetSystem& a, const SetSystem& b) {
  return std::all_of(a.members().begin(), a.members().end(), [&](Subset x) {
    return std::any_of(b.members().begin(), b.members().end(), [x](Subset y) { return subset_of(x, y); });
  });
}

namespace {

Subset image(Subset s, const std::vector<int>& phi) {
  Subset out = 0;
  for (int e : subset_elements(s)) out |= Subset{1} << (phi[static_cast<std::size_t>(e - 1)] - 1);
  return out;
}

bool in_downset(Subset s, const SetSystem& b) {
  return std::any_of(b.members().begin(), b.members().end(), [s](Subset y) { return subset_of(s, y); });
}

struct PrecedesSearch {
  const SetSystem& a;
  const SetSystem& b;
  int k;
  // members of A grouped by their largest element; checked once that element is mapped
  std::vector<std::vector<Subset>> closing;
  std::vector<int> phi;
  Subset used = 0;

  bool run(int element) {
    if (element > k) return true;
    for (int target = 1; target <= k; ++target) {
      Subset bit = Subset{1} << (target - 1);
      if (used & bit) continue;
      phi[static_cast<std::size_t>(element - 1)] = target;
      used |= bit;
      bool ok = std::all_of(closing[static_cast<std::size_t>(element)].begin(),
                            closing[static_cast<std::size_t>(element)].end(),
                            [&](Subset s) { return in_downset(image(s, phi), b); });
      if (ok && run(element + 1)) return true;
      used &= ~bit;
    }
    return false;
  }
};

}  // namespace

PrecedesResult precedes(const SetSystem& a, const SetSystem& b) {
  if (a.k() != b.k()) throw InvalidArgument("set systems have different ground sets");
  int k = a.k();
  if (a.contains_empty_set() && b.empty()) return {};
  PrecedesSearch search{a, b, k, std::vector<std::vector<Subset>>(static_cast<std::size_t>(k) + 1),
                        std::vector<int>(static_cast<std::size_t>(k), 0)};
  for (Subset s : a.members()) {
    if (s == 0) continue;
    search.closing[static_cast<std::size_t>(subset_elements(s).back())].push_back(s);
  }
  if (!search.run(1)) return {};
  return {true, search.phi};
}

}  // namespace quasihyper
