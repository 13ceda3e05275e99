// Command-line front end. JSON (or CSV) goes to stdout, a short human summary to stderr.
// Exit codes: 0 success, 1 check failed, 2 usage or input error, 3 budget exceeded.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "quasihyper/constants.hpp"
#include "quasihyper/constructions.hpp"
#include "quasihyper/counting.hpp"
#include "quasihyper/doubling.hpp"
#include "quasihyper/error.hpp"
#include "quasihyper/io.hpp"
#include "quasihyper/simplicity.hpp"
#include "quasihyper/statistics.hpp"
#include "quasihyper/validation.hpp"
#include "quasihyper/version.hpp"

namespace qh = quasihyper;
using qh::io::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  bool exact = false;
  bool floating = false;
  unsigned threads = 1;
  bool as_json = false;
  bool as_csv = false;
  double tolerance = 0.03;
  bool force = false;
};

Globals g;

qh::EvalMode mode() { return g.floating ? qh::EvalMode::floating : qh::EvalMode::exact; }

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(json report) {
  json out;
  out["version"] = qh::kVersion;
  for (auto& [key, value] : report.items()) out[key] = value;
  if (g.as_csv) {
    std::string header, row;
    bool first = true;
    for (auto& [key, value] : out.items()) {
      header += (first ? "" : ",") + key;
      row += (first ? "" : ",") + csv_cell(value);
      first = false;
    }
    std::cout << header << "\n" << row << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }
  if (!g.as_json && !g.as_csv) {
    for (auto& [key, value] : out.items())
      if (!value.is_structured()) std::cerr << "  " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << "\n"; }

qh::SetSystem load_q(const std::string& path) {
  qh::SetSystem q = qh::io::load_setsystem(path);
  if (q.contains_empty_set()) warn("Q contains the empty set; its weight function is a single constant");
  return q;
}

qh::Hypergraph load_h(const std::string& path) {
  std::vector<std::string> warnings;
  qh::Hypergraph h = qh::io::load_hypergraph(path, &warnings);
  for (const auto& w : warnings) warn(path + ": " + w);
  return h;
}

qh::Scalar density_for(const qh::Hypergraph& h, const std::string& text) {
  qh::Scalar d = text.empty() ? qh::density(h) : qh::Scalar::parse(text);
  return d.as_mode(mode());
}

json stat_report(const qh::Scalar& value, double norm_power, const qh::Hypergraph& h, const std::string& stat_mode) {
  json j;
  j["value"] = qh::io::to_json(value);
  j["normalized"] = value.to_double() / norm_power;
  j["n"] = h.n();
  j["k"] = h.k();
  j["mode"] = stat_mode;
  j["arithmetic"] = std::string(qh::to_string(mode()));
  j["seed"] = g.seed;
  return j;
}

qh::StatOptions stat_options() {
  qh::StatOptions o;
  o.mode = mode();
  o.threads = g.threads;
  o.force = g.force;
  return o;
}

double power(qh::Vertex n, std::uint64_t e) { return std::pow(static_cast<double>(n), static_cast<double>(e)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasirandomness statistics, doubling constructions and separation experiments for k-graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the long flags");
  const char* env_seed = std::getenv("QUASIHYPER_SEED");
  if (env_seed != nullptr) g.seed = std::strtoull(env_seed, nullptr, 10);
  auto* seed_opt = app.add_option("--seed", g.seed, "Root seed (default $QUASIHYPER_SEED or 1)");
  auto* exact_flag = app.add_flag("--exact", g.exact, "Exact rational arithmetic (default)");
  app.add_flag("--float", g.floating, "Double arithmetic with compensated sums")->excludes(exact_flag);
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  auto* json_flag = app.add_flag("--json", g.as_json, "JSON on stdout only");
  app.add_flag("--csv", g.as_csv, "CSV on stdout")->excludes(json_flag);
  app.add_option("--tolerance", g.tolerance, "Tolerance for sampled checks");
  app.add_flag("--force", g.force, "Lift guard rails on exponential searches");

  std::function<int()> action;

  // mq
  auto* mq = app.add_subcommand("mq", "Build M_Q by iterated doubling");
  std::string q_path;
  bool sizes_only = false, check_identity = false;
  mq->add_option("--setsystem", q_path, "Set system JSON")->required();
  mq->add_flag("--sizes-only", sizes_only);
  mq->add_flag("--check-identity", check_identity, "Check the exponent identity on the prefixes");
  mq->callback([&] {
    action = [&] {
      qh::SetSystem q = load_q(q_path);
      qh::MqSize s = qh::mq_size(q);
      json j;
      j["Q"] = qh::io::to_json(q)["sets"];
      j["vertices"] = s.vertices;
      j["edges"] = s.edges;
      int rc = 0;
      if (check_identity) {
        qh::ExponentIdentity e = qh::exponent_identity(q);
        j["identity"] = {{"holds", e.holds}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"label", "certified"}};
        rc = e.holds ? 0 : 1;
      }
      if (!sizes_only) {
        json m = qh::io::to_json(qh::build_mq(q));
        j["classes"] = m["classes"];
        j["hyperedges"] = m["edges"];
      }
      emit(j);
      return rc;
    };
  });

  // setsystem
  auto* ss = app.add_subcommand("setsystem", "Set-system utilities");
  std::string other_path;
  auto* anti = ss->add_subcommand("antichain", "Inclusion-maximal members");
  anti->add_option("--setsystem", q_path)->required();
  anti->callback([&] {
    action = [&] {
      qh::SetSystem q = load_q(q_path);
      emit({{"antichain", qh::io::to_json(qh::antichain(q))["sets"]}});
      return 0;
    };
  });
  auto* deg = ss->add_subcommand("degree", "Degree of every element of [k]");
  deg->add_option("--setsystem", q_path)->required();
  deg->callback([&] {
    action = [&] {
      qh::SetSystem q = load_q(q_path);
      json d = json::array();
      for (int i = 1; i <= q.k(); ++i) d.push_back(qh::degree(q, i));
      emit({{"k", q.k()}, {"degrees", d}});
      return 0;
    };
  });
  auto* prec = ss->add_subcommand("precedes", "Decide A precedes B");
  prec->add_option("--setsystem,--a", q_path, "A")->required();
  prec->add_option("--other,--b", other_path, "B")->required();
  prec->callback([&] {
    action = [&] {
      qh::PrecedesResult r = qh::precedes(load_q(q_path), load_q(other_path));
      json j{{"precedes", r.holds}};
      if (r.bijection) j["bijection"] = *r.bijection;
      emit(j);
      return 0;
    };
  });
  ss->require_subcommand(1);

  // simple
  auto* simple = app.add_subcommand("simple", "Q-simplicity test");
  std::string f_path;
  simple->add_option("--hypergraph", f_path)->required();
  simple->add_option("--setsystem", q_path)->required();
  simple->callback([&] {
    action = [&] {
      qh::Hypergraph f = load_h(f_path);
      qh::SetSystem q = load_q(q_path);
      qh::SimplicityLimits lim;
      lim.force = g.force;
      qh::SimplicityResult r = qh::is_q_simple(f, q, lim);
      json j{{"simple", r.simple}, {"proof", r.proof_tag()}};
      if (r.certificate) {
        j["certificate"] = {{"edge_order", r.certificate->edge_order},
                            {"vertex_orders", r.certificate->vertex_orders},
                            {"verified", qh::verify_certificate(f, q, *r.certificate)}};
      }
      emit(j);
      return 0;
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Homomorphism, copy and induced counts");
  std::string host_path, sub_path, count_mode = "copies";
  count->add_option("--pattern", f_path)->required();
  count->add_option("--host", host_path)->required();
  count->add_option("--mode", count_mode)->check(CLI::IsMember({"hom", "copies", "induced"}));
  count->add_option("--pattern-sub", sub_path, "Spanning subhypergraph F' for --mode induced");
  count->callback([&] {
    action = [&] {
      qh::Hypergraph f = load_h(f_path), h = load_h(host_path);
      qh::CountOptions o{g.threads};
      auto start = std::chrono::steady_clock::now();
      mpz_class v;
      if (count_mode == "hom") {
        v = qh::hom_count(f, h, o);
      } else if (count_mode == "copies") {
        v = qh::labeled_copies(f, h, o);
      } else {
        if (sub_path.empty()) throw qh::InvalidArgument("--mode induced needs --pattern-sub");
        v = qh::induced_wrt_count(load_h(sub_path), f, h, o);
      }
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      emit({{"value", qh::io::to_json(v)},
            {"normalized", v.get_d() / power(h.n(), f.n())},
            {"mode", count_mode},
            {"n", h.n()},
            {"elapsed", elapsed}});
      return 0;
    };
  });

  // disc / wdisc / dev / min share inputs
  std::string h_path, density_text, witness_path, weights_path, dev_mode = "factorized", eps_text = "1/20";
  std::size_t random_trials = 0;
  auto stat_inputs = [&](CLI::App* c) {
    c->add_option("--hypergraph", h_path)->required();
    c->add_option("--setsystem", q_path)->required();
    c->add_option("--density", density_text, "d as p/q (default: density of H)");
  };

  auto* disc = app.add_subcommand("disc", "DISC_Q statistic");
  stat_inputs(disc);
  auto* disc_w = disc->add_option("--witness", witness_path, "Family JSON");
  disc->add_option("--random-trials", random_trials, "Search for a witness")->excludes(disc_w);
  disc->callback([&] {
    action = [&] {
      qh::Hypergraph h = load_h(h_path);
      qh::SetSystem q = load_q(q_path);
      if (q.k() != h.k()) throw qh::InvalidArgument("Q and H have different k");
      qh::Scalar d = density_for(h, density_text);
      double nk = power(h.n(), static_cast<std::uint64_t>(h.k()));
      if (random_trials > 0) {
        qh::WitnessSearchOptions wo;
        wo.threads = g.threads;
        qh::WitnessSearchResult r =
            qh::disc_witness_search(h, qh::Scalar(d).as_mode(qh::EvalMode::exact).exact(), q, random_trials, g.seed, wo);
        json j = stat_report(qh::Scalar(r.value), nk, h, "witness_search");
        j["seed_path"] = r.seed_path;
        j["trials"] = r.trials;
        j["label"] = "sampled";
        emit(j);
        return 0;
      }
      qh::DirectedFamily fam = witness_path.empty()
                                   ? qh::DirectedFamily::complete(q, h.n())
                                   : qh::io::family_from_json(json::parse(qh::io::read_file(witness_path)));
      qh::DiscValue v = qh::disc_value(h, d, fam, stat_options());
      json j = stat_report(v.value, nk, h, witness_path.empty() ? "complete_family" : "witness");
      j["hits"] = qh::io::to_json(v.hits);
      j["supported"] = qh::io::to_json(v.supported);
      j["label"] = "certified";
      emit(j);
      return 0;
    };
  });

  auto* wdisc = app.add_subcommand("wdisc", "Weighted discrepancy WDISC_Q");
  stat_inputs(wdisc);
  auto* wd_w = wdisc->add_option("--weights", weights_path, "Weight ensemble JSON");
  wdisc->add_option("--random-trials", random_trials, "Maximum over seeded random ensembles")->excludes(wd_w);
  wdisc->callback([&] {
    action = [&] {
      qh::Hypergraph h = load_h(h_path);
      qh::SetSystem q = load_q(q_path);
      if (q.k() != h.k()) throw qh::InvalidArgument("Q and H have different k");
      qh::Scalar d = density_for(h, density_text);
      double nk = power(h.n(), static_cast<std::uint64_t>(h.k()));
      if (!weights_path.empty()) {
        json spec = json::parse(qh::io::read_file(weights_path));
        qh::WeightEnsemble w = qh::io::weights_from_json(spec, h.n());
        json j = stat_report(qh::wdisc_value(h, d, w, stat_options()), nk, h, "weights");
        j["label"] = "certified";
        emit(j);
        return 0;
      }
      std::size_t trials = random_trials == 0 ? 1 : random_trials;
      qh::SeedPath root = qh::SeedPath(g.seed).child("ensembles");
      qh::Scalar best;
      std::string best_path;
      for (std::size_t r = 0; r < trials; ++r) {
        qh::SeedPath sp = root.child(r);
        qh::Scalar v = qh::wdisc_value(h, d, qh::WeightEnsemble::random(q, h.n(), sp.seed()), stat_options());
        if (best_path.empty() || qh::abs(v) > qh::abs(best)) {
          best = v;
          best_path = sp.path();
        }
      }
      json j = stat_report(best, nk, h, "random_ensembles");
      j["trials"] = trials;
      j["seed_path"] = best_path;
      j["label"] = "sampled";
      emit(j);
      return 0;
    };
  });

  auto* dev = app.add_subcommand("dev", "DEV_Q statistic");
  stat_inputs(dev);
  dev->add_option("--mode", dev_mode)->check(CLI::IsMember({"maps", "injective", "factorized"}));
  dev->callback([&] {
    action = [&] {
      qh::Hypergraph h = load_h(h_path);
      qh::SetSystem q = load_q(q_path);
      qh::Scalar d = density_for(h, density_text);
      qh::Scalar v = dev_mode == "factorized"
                         ? qh::dev_value_factorized(h, d, q, stat_options())
                         : qh::dev_value(h, d, q, dev_mode == "maps" ? qh::DevMode::all_maps : qh::DevMode::injective,
                                         stat_options());
      json j = stat_report(v, power(h.n(), qh::mq_size(q).vertices), h, dev_mode);
      j["mq_vertices"] = qh::mq_size(q).vertices;
      j["label"] = "certified";
      emit(j);
      return 0;
    };
  });

  auto* min = app.add_subcommand("min", "MIN_Q check");
  stat_inputs(min);
  min->add_option("--eps", eps_text, "epsilon as p/q");
  min->callback([&] {
    action = [&] {
      qh::Hypergraph h = load_h(h_path);
      qh::SetSystem q = load_q(q_path);
      qh::Scalar d = density_for(h, density_text);
      qh::MinReport r = qh::min_check(h, d, qh::Scalar::parse(eps_text), q, stat_options());
      json j = stat_report(qh::Scalar(r.count), power(h.n(), r.mq_vertices), h, r.method);
      j["density"] = qh::io::to_json(r.density);
      j["density_ok"] = r.density_ok;
      j["bound"] = qh::io::to_json(r.bound);
      j["count_ok"] = r.count_ok;
      j["mq_vertices"] = r.mq_vertices;
      j["mq_edges"] = r.mq_edges;
      j["label"] = r.method == "labeled_copies" ? "certified" : "certified_upper_bound";
      emit(j);
      return r.density_ok && r.count_ok ? 0 : 1;
    };
  });

  // construct parity
  auto* construct = app.add_subcommand("construct", "Constructions");
  construct->require_subcommand(1);
  auto* parity = construct->add_subcommand("parity", "H^(k)(B) for a random i-set system B");
  qh::Vertex n = 0;
  int i = 0;
  bool emit_witness = false;
  std::string h_out;
  parity->add_option("--n", n)->required();
  parity->add_option("--i", i)->required();
  parity->add_option("--setsystem", q_path)->required();
  parity->add_flag("--emit-witness", emit_witness, "Include the failing witness family");
  parity->add_option("--write-hypergraph", h_out, "Also write H to this file in the text format");
  parity->callback([&] {
    action = [&] {
      qh::SetSystem q = load_q(q_path);
      qh::ISetSystem b = qh::random_iset_system(n, i, g.seed);
      qh::Hypergraph h = qh::parity_hypergraph(b, q);
      json j{{"seed", g.seed}, {"B", qh::io::to_json(b)}, {"H", qh::io::to_json(h)}, {"density", qh::io::to_json(qh::density(h))}};
      if (emit_witness) j["witness"] = qh::io::to_json(qh::failing_witness_family(b, q));
      if (!h_out.empty()) {
        std::ofstream out(h_out);
        if (!(out << qh::serialize_hypergraph(h))) throw qh::ParseError("cannot write '" + h_out + "'");
      }
      emit(j);
      return 0;
    };
  });

  // verify separation
  auto* verify = app.add_subcommand("verify", "Verification experiments");
  verify->require_subcommand(1);
  auto* sep = verify->add_subcommand("separation", "Check that H^(k)(B) separates DISC_U from DISC_Q");
  std::string u_path;
  qh::SeparationOptions sep_opts;
  sep->add_option("--n", n)->required();
  sep->add_option("--i", i)->required();
  sep->add_option("--q", q_path)->required();
  sep->add_option("--u", u_path)->required();
  sep->add_option("--eta", sep_opts.eta);
  sep->add_option("--witnesses", sep_opts.witnesses);
  sep->callback([&] {
    action = [&] {
      sep_opts.tolerance = g.tolerance;
      sep_opts.threads = g.threads;
      qh::SeparationReport r = qh::verify_separation(n, i, load_q(q_path), load_q(u_path), g.seed, sep_opts);
      json checks = json::array();
      for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"label", c.label}, {"passed", c.passed}, {"measured", c.measured},
                          {"threshold", c.threshold}, {"detail", c.detail}});
      for (const auto& w : r.warnings) warn(w);
      emit({{"n", r.n},
            {"k", r.k},
            {"i", r.i},
            {"seed", r.seed},
            {"b_size", r.b_size},
            {"density", qh::io::to_json(r.density)},
            {"intersection", qh::io::to_json(r.intersection)},
            {"supported", qh::io::to_json(r.supported)},
            {"disc", qh::io::to_json(r.disc)},
            {"delta", qh::io::to_json(r.delta)},
            {"max_u_disc", r.max_u_disc},
            {"max_u_witness", r.max_u_witness},
            {"passed", r.passed()},
            {"warnings", r.warnings},
            {"checks", checks}});
      return r.passed() ? 0 : 1;
    };
  });

  // constants
  auto* consts = app.add_subcommand("constants", "Implication constants epsilon(delta)");
  std::string delta_text;
  consts->add_option("--setsystem", q_path)->required();
  consts->add_option("--delta", delta_text)->required();
  consts->add_option("--pattern", f_path, "F for the WDISC=>CL row");
  consts->callback([&] {
    action = [&] {
      qh::SetSystem q = load_q(q_path);
      std::optional<qh::Hypergraph> f;
      if (!f_path.empty()) f = load_h(f_path);
      json j = qh::constants_report(q, qh::Scalar::parse(delta_text).exact(), f ? &*f : nullptr);
      if (!g.as_json && !g.as_csv)
        for (const auto& row : j["rows"])
          std::cerr << "  " << row["implication"].get<std::string>() << "  eps = " << row["epsilon"].get<std::string>()
                    << "  (" << row["formula"].get<std::string>() << ")\n";
      emit(j);
      return 0;
    };
  });

  // suite
  auto* suite = app.add_subcommand("suite", "Acceptance battery");
  bool quick = false, full = false;
  auto* quick_flag = suite->add_flag("--quick", quick, "Exact identities only");
  suite->add_flag("--full", full, "Add the Monte Carlo criteria")->excludes(quick_flag);
  suite->callback([&] {
    action = [&] {
      qh::AcceptanceOptions o;
      o.full = full;
      if (seed_opt->count() > 0 || env_seed != nullptr) o.seed = g.seed;
      o.threads = g.threads;
      json rows = json::array();
      bool all = true;
      qh::run_acceptance(o, [&](const qh::CriterionResult& r) {
        std::cerr << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.kind << ", "
                  << r.seconds << " s): " << r.detail << "\n";
        all = all && r.passed;
        rows.push_back({{"id", r.id}, {"name", r.name}, {"kind", r.kind}, {"passed", r.passed}, {"detail", r.detail},
                        {"seconds", r.seconds}});
      });
      emit({{"tier", full ? "full" : "quick"}, {"seed", o.seed}, {"passed", all}, {"criteria", rows}});
      return all ? 0 : 1;
    };
  });

  // chain
  auto* chain = app.add_subcommand("chain", "Measure every statistic of the implication chain on one hypergraph");
  qh::ChainOptions co;
  std::string p_text = "1/2", chain_delta = "1/10";
  chain->add_option("--n", co.n);
  chain->add_option("--k", co.k);
  chain->add_option("--setsystem", q_path, "Q (default: singletons of [k])");
  chain->add_option("--p", p_text);
  chain->add_option("--source", co.source)->check(CLI::IsMember({"random", "parity"}));
  chain->add_option("--ensembles", co.ensembles);
  chain->add_option("--delta", chain_delta);
  chain->callback([&] {
    action = [&] {
      co.q = q_path.empty() ? qh::SetSystem::level(co.k, 1) : load_q(q_path);
      co.p = qh::Scalar::parse(p_text).exact();
      co.delta = qh::Scalar::parse(chain_delta).exact();
      co.seed = g.seed;
      co.mode = mode();
      co.threads = g.threads;
      emit(qh::chain_experiment(co));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) return 2;
  try {
    return action();
  } catch (const qh::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const qh::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  }
}
