#include "quasihyper/constants.hpp"

#include "quasihyper/error.hpp"
#include "quasihyper/scalar.hpp"

namespace quasihyper {

ImplicationConstants implication_constants(const SetSystem& q, const mpq_class& delta, const Hypergraph* f) {
  if (delta <= 0 || delta > 1) throw InvalidArgument("delta must lie in (0,1]");
  if (q.size() > 16) throw BudgetExceeded("2^(2^l) is too large for l > 16");
  ImplicationConstants c;
  c.delta = delta;
  c.l = q.size();
  c.mq_edges = std::uint64_t{1} << c.l;
  mpz_class two = 2;
  c.disc_to_wdisc = delta / mpq_class(pow_z(two, c.l + 1));
  if (f != nullptr) {
    if (f->edge_count() == 0) throw InvalidArgument("F needs at least one edge");
    c.f_edges = f->edge_count();
    c.wdisc_to_cl = (delta / 2) / mpq_class(pow_z(two, f->edge_count()) - 1);
  }
  c.cl_to_dev = delta / mpq_class(pow_z(two, 2 * c.mq_edges));
  c.dev_to_wdisc = pow_q(delta, c.mq_edges);
  return c;
}

}  // namespace quasihyper
