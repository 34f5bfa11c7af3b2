#include <cmath>
#include <iostream>
#include <memory>
#include <random>

#include "commands.hpp"
#include "pslab/arcs.hpp"
#include "pslab/error.hpp"
#include "pslab/exponents.hpp"
#include "pslab/experiment.hpp"
#include "pslab/fourier.hpp"
#include "pslab/mean_value.hpp"
#include "pslab/pipeline.hpp"
#include "pslab/sawtooth.hpp"
#include "pslab/weyl.hpp"
#include "pslab/wtrick.hpp"

namespace pslab::cli {
namespace {

std::vector<TorusPoint> torus_points(const std::vector<std::string>& given, std::size_t samples, u64 seed) {
  std::vector<TorusPoint> out;
  for (const auto& s : given) out.push_back(TorusPoint::parse(s));
  auto rng = make_rng(seed, 0x7a11);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t i = 0; i < samples; ++i) out.push_back(TorusPoint::from_double(uni(rng)));
  require(!out.empty(), ErrorCode::invalid_argument, "give --alpha or --samples");
  return out;
}

struct MajorantOpts {
  u64 x = 0;
  int d = 2;
  std::string c;
  u64 toy_w = 0;
  u64 M = 0;
  std::string mode = "auto";
  std::string normalization = "printed";
  std::string dump;
};

void add_majorant_opts(CLI::App* cmd, MajorantOpts& o) {
  cmd->add_option("--x", o.x)->required();
  cmd->add_option("--d", o.d)->capture_default_str();
  cmd->add_option("--c", o.c)->required();
  cmd->add_option("--toy-w", o.toy_w, "fix W instead of deriving it from x");
  cmd->add_option("--M", o.M, "grid size (default: next power of two >= 8N)");
  cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"auto", "dense", "sampled"}))->capture_default_str();
  cmd->add_option("--normalization", o.normalization)
      ->check(CLI::IsMember({"printed", "unit-mean"}))
      ->capture_default_str();
  cmd->add_option("--dump-grid", o.dump, "write the Fourier grid of nu (dense only)");
}

struct BuiltMajorant {
  wtrick::Majorant m;
  u64 M = 0;
};

BuiltMajorant majorant_from(const MajorantOpts& o, const Exec& exec) {
  const PSExponent c = PSExponent::parse(o.c);
  const auto params = wtrick::w_params(o.x, o.d, o.toy_w ? std::optional<u64>(o.toy_w) : std::nullopt);
  const auto primes = ps_primes(o.x, c, exec);
  const auto choice = wtrick::choose_b(primes.members, params, c);
  BuiltMajorant b{wtrick::build_majorant(primes.members, choice.b, params, c, exec,
                                         wtrick::parse_normalization(o.normalization)),
                  o.M ? o.M : expsum::default_grid_size(params.N)};
  if (!o.dump.empty()) expsum::write_grid(o.dump, expsum::fourier_grid(b.m.weights, b.M));
  return b;
}

}  // namespace

void register_expsum(CLI::App& app, Globals& g) {
  auto* es = app.add_subcommand("expsum", "exponential sums, Fourier grids, arcs");
  es->require_subcommand(1);

  struct WeylOpts {
    u64 x = 0;
    int d = 2;
    std::vector<std::string> alpha;
    std::size_t samples = 0;
    std::string c;
  };
  auto wo = std::make_shared<WeylOpts>();
  auto* weyl = es->add_subcommand("weyl", "sum_{n<=x} e(alpha n^d); with --c also the PS/smooth discrepancy");
  weyl->add_option("--x", wo->x)->required();
  weyl->add_option("--d", wo->d)->capture_default_str();
  weyl->add_option("--alpha", wo->alpha, "torus point, decimal or a/q (repeatable)");
  weyl->add_option("--samples", wo->samples, "additional seeded uniform points");
  weyl->add_option("--c", wo->c, "exponent for the weighted-sum discrepancy");
  weyl->callback([wo, &g] {
    const auto pts = torus_points(wo->alpha, wo->samples, g.seed);
    if (wo->c.empty()) {
      Table t{{"alpha", "re", "im", "abs"}, {}};
      for (const auto& a : pts) {
        const cplx v = expsum::weyl_sum(wo->x, wo->d, a, g.exec());
        t.add({a.str(), v.real(), v.imag(), std::abs(v)});
      }
      emit(g, t.render(g.format), "expsum_weyl." + g.format);
      return;
    }
    const PSExponent c = PSExponent::parse(wo->c);
    Table t{{"alpha", "ps_abs", "smooth_abs", "discrepancy", "envelope", "ratio", "admissible"}, {}};
    for (const auto& a : pts) {
      const auto r = expsum::discrepancy(wo->x, c, wo->d, a, g.exec());
      t.add({a.str(), std::abs(r.ps), std::abs(r.smooth), r.value, r.envelope, r.ratio, r.admissible});
    }
    emit(g, t.render(g.format), "expsum_discrepancy." + g.format);
  });

  struct MvOpts {
    std::vector<u64> x;
    int d = 2;
    int S = 4;
    u64 M = 0;
  };
  auto mv = std::make_shared<MvOpts>();
  auto* meanvalue = es->add_subcommand("meanvalue", "exact S-th moment count; with --M also the FFT quadrature");
  meanvalue->add_option("--x", mv->x, "one or more x")->required();
  meanvalue->add_option("--d", mv->d)->capture_default_str();
  meanvalue->add_option("--S", mv->S)->capture_default_str();
  meanvalue->add_option("--M", mv->M, "grid size for the quadrature (must exceed S x^d)");
  meanvalue->callback([mv, &g] {
    Table t{{"x", "d", "S", "count", "normalized", "quadrature", "rel_error"}, {}};
    for (u64 x : mv->x) {
      const double norm_den = std::pow(static_cast<double>(x), mv->S - mv->d) * std::log(static_cast<double>(x));
      if (mv->M) {
        const auto q = expsum::quadrature_vs_count(x, mv->d, mv->S, mv->M, g.exec());
        t.add({x, mv->d, mv->S, q.count.get_str(), q.count.get_d() / norm_den, q.quadrature, q.rel_error});
      } else {
        const BigInt n = expsum::mean_value_count(x, mv->d, mv->S, g.exec());
        t.add({x, mv->d, mv->S, n.get_str(), n.get_d() / norm_den, ordered_json(), ordered_json()});
      }
    }
    emit(g, t.render(g.format), "expsum_meanvalue." + g.format);
  });

  auto deo = std::make_shared<MajorantOpts>();
  auto* decay = es->add_subcommand("decay", "max |nu^ - 1^_[N]| / N over the grid or probe set");
  add_majorant_opts(decay, *deo);
  decay->callback([deo, &g] {
    const auto b = majorant_from(*deo, g.exec());
    const auto r = expsum::fourier_decay(b.m.weights, b.M, expsum::parse_decay_mode(deo->mode), g.seed, 4096, g.exec());
    Table t{{"x", "d", "c", "W", "b", "N", "M", "mode", "decay", "argmax", "points"}, {}};
    t.add({deo->x, deo->d, b.m.c.str(), b.m.params.W, b.m.residue.b, b.m.params.N, r.M, expsum::to_string(r.mode),
           r.value, r.argmax, r.points});
    emit(g, t.render(g.format), "expsum_decay." + g.format);
  });

  auto ro = std::make_shared<MajorantOpts>();
  auto u_text = std::make_shared<std::string>();
  auto* restrict_cmd = es->add_subcommand("restrict", "integral of |nu^|^u against ||nu||_1^u / N");
  add_majorant_opts(restrict_cmd, *ro);
  restrict_cmd->add_option("--u", *u_text, "moment exponent (default: u-threshold + 1/2)");
  restrict_cmd->callback([ro, u_text, &g] {
    const auto b = majorant_from(*ro, g.exec());
    const double u = u_text->empty()
                         ? to_double(exponents::u_threshold(ro->d, b.m.c.value()).threshold + Rational(1, 2))
                         : to_double(parse_rational(*u_text));
    const auto r =
        expsum::restriction_moment(b.m.weights, u, b.M, expsum::parse_decay_mode(ro->mode), g.seed, g.exec());
    Table t{{"x", "d", "c", "N", "M", "u", "moment", "ratio", "sampled", "points"}, {}};
    t.add({ro->x, ro->d, b.m.c.str(), b.m.params.N, r.M, u, r.moment, r.ratio, r.sampled, r.points});
    emit(g, t.render(g.format), "expsum_restrict." + g.format);
  });

  struct ArcOpts {
    u64 x = 0;
    int d = 2;
    u64 toy_w = 0;
    u64 b = 0;
    u64 Q = 0;
    std::vector<std::string> alpha;
    std::size_t samples = 0;
    std::string threshold = "literal";
  };
  auto ao = std::make_shared<ArcOpts>();
  auto* arcs = es->add_subcommand("arcs", "major/minor labels from |mu^(alpha)|");
  arcs->add_option("--x", ao->x)->required();
  arcs->add_option("--d", ao->d)->capture_default_str();
  arcs->add_option("--toy-w", ao->toy_w);
  arcs->add_option("--b", ao->b, "residue class (default W-1)");
  arcs->add_option("--Q", ao->Q, "Dirichlet parameter (default floor(sqrt N))");
  arcs->add_option("--alpha", ao->alpha, "torus point (repeatable)");
  arcs->add_option("--samples", ao->samples, "additional seeded uniform points");
  arcs->add_option("--threshold", ao->threshold)
      ->check(CLI::IsMember({"literal", "w-normalized"}))
      ->capture_default_str();
  arcs->callback([ao, &g] {
    const auto params = wtrick::w_params(ao->x, ao->d, ao->toy_w ? std::optional<u64>(ao->toy_w) : std::nullopt);
    const auto mu = wtrick::build_mu(ao->b ? ao->b : params.W - 1, params);
    const auto mode = expsum::parse_arc_threshold(ao->threshold);
    Table t{{"alpha", "label", "a", "q", "witness", "threshold", "envelope", "ratio"}, {}};
    for (const auto& a : torus_points(ao->alpha, ao->samples, g.seed)) {
      const auto l = expsum::classify_arc(a, mu, ao->x, ao->d, mode, ao->Q, g.exec());
      t.add({a.str(), l.major ? "major" : "minor", l.major ? ordered_json(l.a) : ordered_json(),
             l.major ? ordered_json(l.q) : ordered_json(), l.witness, l.threshold,
             l.major ? ordered_json(l.envelope) : ordered_json(), l.major ? ordered_json(l.ratio) : ordered_json()});
    }
    emit(g, t.render(g.format), "expsum_arcs." + g.format);
  });

  auto H = std::make_shared<std::vector<int>>();
  auto grid = std::make_shared<std::size_t>(100000);
  auto* vaaler = es->add_subcommand("vaaler", "trigonometric approximation of psi and its error majorant");
  vaaler->add_option("--H", *H, "one or more H >= 2")->required();
  vaaler->add_option("--grid", *grid)->capture_default_str();
  vaaler->callback([H, grid, &g] {
    Table t{{"H", "grid", "majorant_holds", "worst_excess", "sup_error", "mean_error", "majorant_mean"}, {}};
    for (int h : *H) {
      const auto r = expsum::vaaler_check(h, *grid);
      t.add({h, r.grid, r.majorant_holds, r.worst_excess, r.sup_error, r.mean_error, r.majorant_mean});
    }
    emit(g, t.render(g.format), "expsum_vaaler." + g.format);
  });
}

void register_pipeline(CLI::App& app, Globals& g, int& exit_code) {
  auto cfg_path = std::make_shared<std::string>();
  auto* pipe = app.add_subcommand("pipeline", "end-to-end run with trend checks; writes CSV and manifest");
  pipe->add_option("--config", *cfg_path, "key=value config file")->required()->check(CLI::ExistingFile);
  pipe->callback([cfg_path, &g, &exit_code] {
    const auto cfg = ExperimentConfig::load(*cfg_path);
    auto m = run_pipeline(cfg, g.exec());
    const std::string dir = g.out_dir.empty() ? "." : g.out_dir;
    const std::string csv_path = join_path(dir, cfg.name + "_cells.csv");
    const std::string man_path = join_path(dir, cfg.name + "_manifest.json");
    write_file(csv_path, cells_csv(m.cells));
    m.artifacts = {csv_path, man_path};
    write_file(man_path, manifest_json(m));
    for (const auto& c : m.checks) std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    std::cout << "manifest " << man_path << "\n";
    if (!m.all_pass()) exit_code = 3;
  });

  auto sweep_path = std::make_shared<std::string>();
  auto* sw = app.add_subcommand("sweep", "cartesian sweep over d, c and x lists; one CSV row per cell");
  sw->add_option("--config", *sweep_path, "key=value config file")->required()->check(CLI::ExistingFile);
  sw->callback([sweep_path, &g] {
    const auto cfg = ExperimentConfig::load(*sweep_path);
    emit(g, cells_csv(sweep(cfg, g.exec())), cfg.name + "_sweep.csv");
  });
}

}  // namespace pslab::cli
