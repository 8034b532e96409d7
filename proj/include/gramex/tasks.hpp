#pragma once
// Shared plumbing for the classification tasks: settings, evaluation and the
// fit -> evaluate -> mine-rules sequence for tree and linear tasks.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gramex/featurize.hpp"
#include "gramex/glossary.hpp"
#include "gramex/learners.hpp"
#include "gramex/ruleminer.hpp"

namespace gramex {

struct TaskSettings {
  FeatureTemplate features;
  TreeConfig tree;
  LinearConfig linear;
  Chi2Config chi2;
  std::array<double, 3> split{0.8, 0.1, 0.1};
  std::uint64_t seed = 0;
  std::size_t min_instances = 50;
  std::size_t max_examples = 5;
  std::size_t top_k = 20;
  unsigned jobs = 1;
};

struct Evaluation {
  std::string model_kind;  // "tree" or "linear"
  std::string selected;    // chosen grid cell, human readable
  double model_accuracy = 0.0;
  double baseline_accuracy = 0.0;
  std::string baseline_label;
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct TreeTaskResult {
  std::string name;
  bool completed = false;
  std::string note;
  std::vector<Instance> instances;
  FeatureVocabulary vocabulary;
  Split split;
  std::optional<TreeFit> fit;
  Evaluation evaluation;
  TreeRules rules;
  RuleContext context;
};

struct LinearTaskResult {
  std::string name;
  bool completed = false;
  std::string note;
  std::vector<Instance> instances;
  FeatureVocabulary vocabulary;
  Split split;
  std::optional<LinearFit> fit;
  Evaluation evaluation;
  std::vector<ClassRules> rules;
  RuleContext context;

  // Classes with at least one positively weighted feature.
  std::size_t rule_count() const;
};

// Stable 64-bit FNV-1a, used to derive per-task seeds from names.
std::uint64_t stable_hash(std::string_view s);
// Lower-case, [a-z0-9-] only.
std::string slug(std::string_view s);

TreeTaskResult run_tree_task(std::string name, std::vector<Instance> instances, const TaskSettings& settings,
                             const RuleMiningOptions& options, const Glossary& glossary, const RuleContext& context);

LinearTaskResult run_linear_task(std::string name, std::vector<Instance> instances, const TaskSettings& settings,
                                 const Glossary& glossary, const RuleContext& context);

}  // namespace gramex
