#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  cli::Globals g;
  CLI::App app{"Naive Bayes read classification and decision-boundary analysis"};
  app.set_version_flag("--version", std::string(nbb_version()));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "Global seed; per-task seeds are offsets from it")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("--no-n", g.no_n, "Exclude N from neighbor enumeration (3 substitutes per site)");
  app.add_option("--out", g.out_dir, "Write output tables into this directory instead of stdout");

  cli::register_model_commands(app, g);
  cli::register_classify_commands(app, g);
  cli::register_explore_commands(app, g);
  cli::register_simulate_commands(app, g);
  cli::register_analyze_commands(app, g);
  cli::register_replicate_commands(app, g);

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
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const cli::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
