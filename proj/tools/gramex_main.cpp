// gramex: mine learning materials from a treebank and a parallel corpus.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gramex/pipeline.hpp"
#include "gramex/util.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Extract teachable grammar points from annotated corpora"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<unsigned> jobs;
  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "random seed (overrides the config)");
  app.add_option("--out", out, "output directory (overrides the config)");
  app.add_option("--jobs", jobs, "worker threads (overrides the config)")->check(CLI::PositiveNumber);

  auto* ingest = app.add_subcommand("ingest", "read and validate the inputs");
  std::string aspect;
  auto* mine = app.add_subcommand("mine", "mine one aspect");
  mine->add_option("aspect", aspect,
                   "general_information | vocabulary | word_order | suffix_usage | agreement")
      ->required();
  auto* evaluate = app.add_subcommand("evaluate", "assemble and validate bundle.json, print the evaluation table");
  auto* render = app.add_subcommand("render", "write the static site from bundle.json");
  auto* all = app.add_subcommand("all", "ingest, mine every aspect, evaluate and render");

  CLI11_PARSE(app, argc, argv);

  try {
    gramex::RunConfig config = gramex::RunConfig::load(config_path);
    if (seed) config.seed = *seed;
    if (!out.empty()) config.out = out;
    if (jobs) config.jobs = *jobs;

    if (*ingest) {
      const auto j = gramex::cmd_ingest(config);
      std::cout << j.dump(2) << "\n";
    } else if (*mine) {
      const auto res = gramex::cmd_mine(config, aspect);
      std::cout << "mined " << res.aspect << " -> " << (config.work_dir() / (res.aspect + ".json")).string() << "\n";
      for (const auto& n : res.section.at("notices")) std::cout << "notice: " << n.get<std::string>() << "\n";
    } else if (*evaluate) {
      const auto rows = gramex::cmd_evaluate(config);
      std::cout << gramex::render_evaluation_table(rows);
    } else if (*render) {
      const auto files = gramex::cmd_render(config);
      std::cout << "wrote " << files.size() << " files to " << config.site_dir().string() << "\n";
    } else if (*all) {
      gramex::cmd_all(config);
      std::cout << gramex::read_file(config.out / "evaluation.txt");
      std::cout << "bundle: " << config.bundle_path().string() << "\nsite: " << config.site_dir().string() << "\n";
    }
  } catch (const gramex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
