#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "pslab/diophantine.hpp"
#include "pslab/error.hpp"
#include "pslab/exponents.hpp"
#include "pslab/ps_core.hpp"
#include "pslab/wtrick.hpp"

namespace pslab::cli {
namespace {

ordered_json rat(const Rational& r) { return to_pq(r); }

template <class T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json();
}

void write_majorant(const std::string& path, const wtrick::Majorant& m) {
  const auto& p = m.params;
  const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
  if (binary) {
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), ErrorCode::io_error, "cannot write '" + path + "'");
    auto put = [&](u64 v) { f.write(reinterpret_cast<const char*>(&v), 8); };
    f.write("PSLSPRS1", 8);
    for (u64 v : {p.x, static_cast<u64>(p.d), m.c.p(), m.c.q(), p.W, m.residue.b, m.residue.sigma, p.N,
                  static_cast<u64>(m.weights.size())})
      put(v);
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      put(m.weights.indices()[i]);
      const double w = m.weights.values()[i];
      f.write(reinterpret_cast<const char*>(&w), 8);
    }
    require(static_cast<bool>(f), ErrorCode::io_error, "write to '" + path + "' failed");
    return;
  }
  std::ostringstream o;
  o << "# x=" << p.x << ",d=" << p.d << ",c=" << m.c.str() << ",W=" << p.W << ",b=" << m.residue.b
    << ",sigma=" << m.residue.sigma << ",N=" << p.N << "\n";
  o << "n,weight\n";
  char buf[48];
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", m.weights.values()[i]);
    o << m.weights.indices()[i] << "," << buf << "\n";
  }
  write_file(path, o.str());
}

std::vector<u64> load_set(const std::string& source, const Exec& exec) {
  if (source.rfind("ps:", 0) == 0) {
    const std::string rest = source.substr(3);
    const auto comma = rest.find(',');
    require(comma != std::string::npos, ErrorCode::parse_error, "expected ps:x,c");
    const u64 x = std::stoull(rest.substr(0, comma));
    return ps_primes(x, PSExponent::parse(rest.substr(comma + 1)), exec).members;
  }
  std::ifstream f(source);
  require(static_cast<bool>(f), ErrorCode::io_error, "cannot open set file '" + source + "'");
  std::vector<u64> out;
  std::string tok;
  while (f >> tok) {
    try {
      out.push_back(std::stoull(tok));
    } catch (const std::logic_error&) {
      fail(ErrorCode::parse_error, "set file: bad entry '" + tok + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string tuple_str(const std::vector<u64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

void register_ps(CLI::App& app, Globals& g) {
  auto* ps = app.add_subcommand("ps", "Piatetski-Shapiro primes");
  ps->require_subcommand(1);

  struct CountOpts {
    std::string c;
    u64 x = 0;
    int decades = 1;
  };
  auto co = std::make_shared<CountOpts>();
  auto* count = ps->add_subcommand("count", "prime count and PNT ratio; CSV x,count,ratio");
  count->add_option("--c", co->c, "exponent p/q in (1,2)")->required();
  count->add_option("--x", co->x, "upper bound")->required();
  count->add_option("--decades", co->decades, "rows at x/10^(k-1), ..., x")->check(CLI::PositiveNumber);
  count->callback([co, &g] {
    const PSExponent c = PSExponent::parse(co->c);
    Table t{{"x", "count", "ratio"}, {}};
    for (int k = co->decades - 1; k >= 0; --k) {
      u64 x = co->x;
      for (int i = 0; i < k; ++i) x /= 10;
      const auto r = pnt_ratio(x, c, g.exec());
      t.add({r.x, r.count, r.ratio});
    }
    emit(g, t.render(g.format), "ps_count." + g.format);
  });

  struct ListOpts {
    std::string c;
    u64 x = 0;
  };
  auto lo = std::make_shared<ListOpts>();
  auto* list = ps->add_subcommand("list", "newline-delimited PS primes <= x");
  list->add_option("--c", lo->c, "exponent p/q in (1,2)")->required();
  list->add_option("--x", lo->x, "upper bound")->required();
  list->callback([lo, &g] {
    const auto set = ps_primes(lo->x, PSExponent::parse(lo->c), g.exec());
    std::string out;
    for (u64 p : set.members) out += std::to_string(p) + "\n";
    emit(g, out, "ps_list.txt");
  });
}

void register_wtrick(CLI::App& app, Globals& g) {
  auto* wt = app.add_subcommand("wtrick", "W-trick majorant and residue classes");
  wt->require_subcommand(1);

  struct MajOpts {
    u64 x = 0;
    int d = 2;
    std::string c;
    u64 toy_w = 0;
    u64 b = 0;
    std::string out;
    std::string normalization = "printed";
  };
  auto mo = std::make_shared<MajOpts>();
  auto* maj = wt->add_subcommand("majorant", "build nu_b; dump 'n,weight' CSV, or binary when --out ends in .bin");
  maj->add_option("--x", mo->x)->required();
  maj->add_option("--d", mo->d)->capture_default_str();
  maj->add_option("--c", mo->c)->required();
  maj->add_option("--toy-w", mo->toy_w, "fix W instead of deriving it from x");
  maj->add_option("--b", mo->b, "residue class (default: largest mass)");
  maj->add_option("--out", mo->out, "dump file")->required();
  maj->add_option("--normalization", mo->normalization)
      ->check(CLI::IsMember({"printed", "unit-mean"}))
      ->capture_default_str();
  maj->callback([mo, &g] {
    const PSExponent c = PSExponent::parse(mo->c);
    const auto params = wtrick::w_params(mo->x, mo->d, mo->toy_w ? std::optional<u64>(mo->toy_w) : std::nullopt);
    const auto primes = ps_primes(mo->x, c, g.exec());
    u64 b = mo->b;
    double mass = 0;
    if (b == 0) {
      const auto choice = wtrick::choose_b(primes.members, params, c);
      b = choice.b;
      mass = choice.mass;
    }
    const auto m = wtrick::build_majorant(primes.members, b, params, c, g.exec(),
                                          wtrick::parse_normalization(mo->normalization));
    if (mo->b) mass = m.weights.l1();
    write_majorant(mo->out, m);
    Table t{{"x", "d", "c", "W", "b", "sigma", "N", "support", "mass", "out"}, {}};
    t.add({params.x, params.d, c.str(), params.W, b, m.residue.sigma, params.N, m.weights.size(), mass, mo->out});
    std::cout << t.render(g.format);
  });

  struct ClassOpts {
    u64 W = 0;
    int d = 2;
    bool all = false;
  };
  auto cl = std::make_shared<ClassOpts>();
  auto* classes = wt->add_subcommand("classes", "residue classes b with sigma(b); CSV b,sigma,admissible");
  classes->add_option("--W", cl->W)->required();
  classes->add_option("--d", cl->d)->capture_default_str();
  classes->add_flag("--all", cl->all, "include inadmissible classes");
  classes->callback([cl, &g] {
    Table t{{"b", "sigma", "admissible"}, {}};
    for (const auto& rc : wtrick::residue_classes(cl->W, cl->d))
      if (cl->all || rc.admissible) t.add({rc.b, rc.sigma, rc.admissible});
    emit(g, t.render(g.format), "wtrick_classes." + g.format);
  });
}

void register_exponents(CLI::App& app, Globals& g) {
  auto* ex = app.add_subcommand("exponents", "exact exponent calculus");
  ex->require_subcommand(1);

  struct TableOpts {
    int d_min = 2, d_max = 12, s_extra = 0;
  };
  auto to = std::make_shared<TableOpts>();
  auto* table = ex->add_subcommand("table", "one row per (d, s), s from s_bar to s_bar + s-extra");
  table->add_option("--d-min", to->d_min)->capture_default_str();
  table->add_option("--d-max", to->d_max)->capture_default_str();
  table->add_option("--s-extra", to->s_extra)->capture_default_str();
  table->callback([to, &g] {
    Table t{{"d", "s", "S", "s_bar", "h", "k", "l", "c1", "c2", "c3", "theta_at_midpoint", "c_of_ds", "rho", "d0",
             "v0"},
            {}};
    for (const auto& r : exponents::table(to->d_min, to->d_max, to->s_extra)) {
      t.add({r.d, r.s, r.degree.S, r.degree.s_bar, r.hkl ? rat(r.hkl->h) : ordered_json(),
             r.hkl ? rat(r.hkl->k) : ordered_json(), r.hkl ? rat(r.hkl->l) : ordered_json(), rat(r.bounds.c1),
             rat(r.bounds.c2), rat(r.bounds.c3), rat(r.theta_at_midpoint), rat(r.c_of_ds), rat(r.rho),
             r.d0v0 ? ordered_json(r.d0v0->d0) : ordered_json(), r.d0v0 ? rat(r.d0v0->v0) : ordered_json()});
    }
    emit(g, t.render(g.format), "exponents_table." + g.format);
  });

  struct ProfileOpts {
    int d = 2;
    std::string c;
    int s = 0;
    std::string eps = "1/100";
  };
  auto po = std::make_shared<ProfileOpts>();
  auto* prof = ex->add_subcommand("profile", "theta, u-threshold, eta, kappa and v for one (d, c)");
  prof->add_option("--d", po->d)->capture_default_str();
  prof->add_option("--c", po->c)->required();
  prof->add_option("--s", po->s, "variables (default s_bar)");
  prof->add_option("--eps", po->eps)->capture_default_str();
  prof->callback([po, &g] {
    const Rational c = parse_rational(po->c);
    const auto p = exponents::profile(po->d, c);
    const int s = po->s ? po->s : exponents::degree_params(po->d).s_bar;
    const auto et = exponents::eta(po->d, s, c, parse_rational(po->eps));
    Table t{{"d", "c", "s", "c1", "c2", "c3", "theta", "u_threshold", "eta", "eta_admissible", "rho", "kappa", "v"},
            {}};
    t.add({p.d, to_pq(c), s, rat(p.bounds.c1), rat(p.bounds.c2), rat(p.bounds.c3), rat(p.theta),
           rat(p.u.threshold), rat(et.eta), et.admissible, rat(p.rho), rat(p.kappa),
           rat(exponents::v_preset(po->d, c))});
    emit(g, t.render(g.format), "exponents_profile." + g.format);
  });
}

void register_dioph(CLI::App& app, Globals& g) {
  auto* di = app.add_subcommand("dioph", "solutions of c_1 x_1^d + ... + c_s x_s^d = 0");
  di->require_subcommand(1);

  struct CountOpts {
    std::string coeffs;
    int d = 2;
    std::string set;
    std::string K;
    std::string mode = "powers";
    std::size_t cap = 16;
  };
  auto co = std::make_shared<CountOpts>();
  auto* count = di->add_subcommand("count", "ordered solutions in A^s, split into K-trivial and nontrivial");
  count->add_option("--coeffs", co->coeffs, "e.g. 1,-2,1")->required();
  count->add_option("--d", co->d)->capture_default_str();
  count->add_option("--set", co->set, "file of integers, or ps:x,c")->required();
  count->add_option("--K", co->K, "constraint-matrix file (default: diagonal)");
  count->add_option("--mode", co->mode, "K membership on d-th powers or raw values")
      ->check(CLI::IsMember({"powers", "raw"}))
      ->capture_default_str();
  count->add_option("--cap", co->cap, "witnesses to keep")->capture_default_str();
  count->callback([co, &g] {
    const auto sys = dioph::validate_system(dioph::parse_coeffs(co->coeffs), co->d);
    const auto K = co->K.empty() ? dioph::SubspaceUnion::diagonal(sys.s()) : dioph::SubspaceUnion::load(co->K, sys.s());
    K.validate(sys.coeffs);
    const auto A = load_set(co->set, g.exec());
    const auto rep = dioph::enumerate_solutions(A, sys, K, co->cap, dioph::parse_k_mode(co->mode), g.exec());
    std::string wit;
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i) wit += (i ? ";" : "") + tuple_str(rep.witnesses[i]);
    Table t{{"coeffs", "d", "set_size", "total", "trivial", "nontrivial", "truncated", "witnesses"}, {}};
    t.add({sys.str(), sys.d, A.size(), rep.total.get_str(), rep.trivial.get_str(), rep.nontrivial.get_str(),
           rep.truncated, wit});
    emit(g, t.render(g.format), "dioph_count." + g.format);
  });

  struct GreedyOpts {
    std::string coeffs = "1,-2,1";
    int d = 2;
    u64 x = 0;
    std::string c;
    std::string K;
    bool list = false;
  };
  auto go = std::make_shared<GreedyOpts>();
  auto* greedy = di->add_subcommand("greedy", "first-fit set of PS primes with only K-trivial solutions");
  greedy->add_option("--coeffs", go->coeffs)->capture_default_str();
  greedy->add_option("--d", go->d)->capture_default_str();
  greedy->add_option("--x", go->x)->required();
  greedy->add_option("--c", go->c)->required();
  greedy->add_option("--K", go->K, "constraint-matrix file (default: diagonal)");
  greedy->add_flag("--list", go->list, "print the set after the summary");
  greedy->callback([go, &g] {
    const auto sys = dioph::validate_system(dioph::parse_coeffs(go->coeffs), go->d);
    const auto K = go->K.empty() ? dioph::SubspaceUnion::diagonal(sys.s()) : dioph::SubspaceUnion::load(go->K, sys.s());
    K.validate(sys.coeffs);
    const auto r = dioph::greedy_avoider(go->x, PSExponent::parse(go->c), sys, K, g.exec());
    Table t{{"x", "c", "coeffs", "d", "candidates", "size", "verified_total", "verified_nontrivial", "bound"}, {}};
    t.add({go->x, go->c, sys.str(), sys.d, r.candidates, r.A.size(), r.verification.total.get_str(),
           r.verification.nontrivial.get_str(), opt(r.bound)});
    std::string out = t.render(g.format);
    if (go->list) out += tuple_str(r.A) + "\n";
    emit(g, out, "dioph_greedy." + g.format);
  });
}

}  // namespace pslab::cli
