#include <iostream>
#include <thread>

#include "commands.hpp"
#include "pslab/error.hpp"
#include "pslab/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace pslab::cli;
  CLI::App app{"pslab: Piatetski-Shapiro prime laboratory"};
  app.set_version_flag("--version", std::string(pslab::version()));
  app.require_subcommand(1);
  Globals g;
  g.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--seed", g.seed, "master seed for sampled quantities")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--sequential", g.sequential, "single-threaded, bit-reproducible run");
  app.add_option("--out-dir", g.out_dir, "write outputs into this directory instead of stdout");
  app.add_option("--format", g.format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  int exit_code = 0;
  register_ps(app, g);
  register_wtrick(app, g);
  register_expsum(app, g);
  register_dioph(app, g);
  register_exponents(app, g);
  register_pipeline(app, g, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const pslab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
