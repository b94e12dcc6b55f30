#pragma once

#include <CLI11.hpp>

#include "cli_support.hpp"

namespace cli {

void register_model_commands(CLI::App& app, Globals& g);
void register_classify_commands(CLI::App& app, Globals& g);
void register_explore_commands(CLI::App& app, Globals& g);
void register_simulate_commands(CLI::App& app, Globals& g);
void register_analyze_commands(CLI::App& app, Globals& g);
void register_replicate_commands(CLI::App& app, Globals& g);

}  // namespace cli
