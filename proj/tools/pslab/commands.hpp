#pragma once

#include <CLI11.hpp>

#include "output.hpp"

namespace pslab::cli {

void register_ps(CLI::App& app, Globals& g);
void register_wtrick(CLI::App& app, Globals& g);
void register_exponents(CLI::App& app, Globals& g);
void register_dioph(CLI::App& app, Globals& g);
void register_expsum(CLI::App& app, Globals& g);
/// pipeline and sweep; `exit_code` becomes 3 when a pipeline check fails.
void register_pipeline(CLI::App& app, Globals& g, int& exit_code);

}  // namespace pslab::cli
