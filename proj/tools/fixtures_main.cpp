// gramex-fixtures: write the planted synthetic corpora and a matching config.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write synthetic corpora with planted grammar points"};
  std::string out;
  std::uint64_t seed = 7;
  std::size_t sentences = 2000;
  app.add_option("--out", out, "directory to create")->required();
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--sentences", sentences, "treebank size")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out);
    std::cout << gramex::fixtures::write_fixture_dir(out, seed, sentences).string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
