#pragma once
// Turning fitted models into filtered, human-readable grammar rules.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gramex/featurize.hpp"
#include "gramex/glossary.hpp"
#include "gramex/learners.hpp"

namespace gramex {

// ---- statistics -----------------------------------------------------------

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_q(double a, double x);
// P(X >= stat) for X ~ chi-squared with `df` degrees of freedom.
double chi2_survival(double stat, double df);
// Pearson goodness-of-fit statistic sum (O_i - E_i)^2 / E_i with E_i = p_i n.
// Categories with p_i = 0 and O_i = 0 are skipped.
double pearson_statistic(std::span<const double> observed, std::span<const double> expected_probs);

enum class ExpectedMode { uniform, empirical };
std::string_view expected_mode_name(ExpectedMode m);

struct Chi2Config {
  double alpha = 0.05;
  std::size_t min_leaf_support = 10;

  void validate() const;
};

enum class Verdict { significant, inconclusive, default_rule };
std::string_view verdict_name(Verdict v);

struct Chi2Result {
  double statistic = 0.0;
  std::size_t df = 0;
  double p_value = 1.0;
  Verdict verdict = Verdict::inconclusive;
  std::size_t label = 0;  // index of the dominant category
};

// Goodness-of-fit test of one leaf against the null distribution. The leaf is
// significant when p < alpha, its support reaches min_leaf_support, and its
// dominant label is over-represented relative to the null (observed count
// above expected). With `required_label` set, a dominant label other than it
// is never significant.
//
// Throws on empty observations, probabilities that do not sum to 1, or a zero
// expected probability with a non-zero observed count.
Chi2Result chi2_relabel(std::span<const double> observed, std::span<const double> expected_probs,
                        const Chi2Config& config, std::optional<std::size_t> required_label = std::nullopt);

// ---- rules ----------------------------------------------------------------

struct RuleCondition {
  std::string feature;
  bool present = true;
  bool operator==(const RuleCondition&) const = default;
};

bool satisfies(const Instance& instance, std::span<const RuleCondition> conditions);

struct GrammarRule {
  std::string id;
  std::vector<RuleCondition> conditions;
  std::string label;
  std::map<std::string, std::size_t> support;  // label -> training rows at the leaf
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t df = 0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<Provenance> examples;
  std::vector<Provenance> counter_examples;
  std::size_t example_total = 0;
  std::size_t counter_example_total = 0;
  bool flagged = false;  // no corpus example satisfies the rule
  std::string rendered;

  std::size_t support_total() const;
};

struct RuleMiningOptions {
  ExpectedMode mode = ExpectedMode::empirical;
  std::optional<std::string> required_label;
  Chi2Config chi2;
};

struct TreeRules {
  std::vector<GrammarRule> rules;       // significant leaves
  GrammarRule default_rule;
  std::vector<GrammarRule> candidates;  // every leaf with a non-empty path, with its verdict
  std::size_t rule_count() const { return rules.size(); }
};

// One candidate per leaf of `tree`; support is re-counted by routing
// `training` (encoded with `vocab`) through the tree.
TreeRules extract_tree_rules(const DecisionTree& tree, const FeatureVocabulary& vocab,
                             std::span<const Instance> training, const RuleMiningOptions& options);

struct WeightedFeature {
  std::string feature;
  double weight = 0.0;
};

struct ClassRules {
  std::string id;
  std::string label;
  std::vector<WeightedFeature> features;  // strictly positive weights, descending
  std::vector<Provenance> examples;
  std::size_t example_total = 0;
  std::string rendered;
};

// For each class, the k features with the largest positive weight.
std::vector<ClassRules> extract_linear_rules(const LinearModel& model, const FeatureVocabulary& vocab,
                                             std::size_t k = 20);

// Examples: instances satisfying the conditions with the rule's label;
// counter-examples: satisfying the conditions with another label. Shortest
// sentences first, one per sentence, at most `max_each`.
void attach_examples(GrammarRule& rule, std::span<const Instance> instances, std::size_t max_each = 5);
void attach_examples(ClassRules& rules, std::span<const Instance> instances, std::size_t max_each = 5);

// ---- rendering ------------------------------------------------------------

enum class TaskKind { word_order, agreement, suffix, lexical };

struct RuleContext {
  TaskKind kind = TaskKind::word_order;
  std::string dep_role = "dependent";
  std::string head_role = "head";
  std::string attribute;  // agreement attribute
  std::string l1_word;    // lexical selection source word
};

// Clause for a single condition, e.g. "the object is marked as interrogative pronoun".
std::string render_condition(const RuleCondition& condition, const Glossary& glossary, const RuleContext& ctx);
std::string render_label(const std::string& label, const Glossary& glossary, const RuleContext& ctx,
                         bool negated = false);
// "If <conditions>, then <label> (p% of n cases). Exceptions: k."
std::string render_rule(const GrammarRule& rule, const Glossary& glossary, const RuleContext& ctx);
std::string render_class_rules(const ClassRules& rules, const Glossary& glossary, const RuleContext& ctx);

}  // namespace gramex
