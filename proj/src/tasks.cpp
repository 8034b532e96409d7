#include "gramex/tasks.hpp"

#include <cctype>

#include "gramex/util.hpp"

namespace gramex {

std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string slug(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) && c < 0x80) {
      out += static_cast<char>(std::tolower(c));
    } else if (!out.empty() && out.back() != '-') {
      out += '-';
    }
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "x" : out;
}

std::size_t LinearTaskResult::rule_count() const {
  std::size_t n = 0;
  for (const auto& r : rules) n += !r.features.empty();
  return n;
}

namespace {

std::vector<Instance> pick(const std::vector<Instance>& all, const std::vector<std::size_t>& rows) {
  std::vector<Instance> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(all[r]);
  return out;
}

// Shared preamble: size check, split, vocabulary. Returns false when the task is skipped.
template <typename Result>
bool prepare(Result& res, const TaskSettings& settings, std::vector<std::string>& labels, Design& design,
             std::uint64_t task_seed) {
  if (res.instances.size() < settings.min_instances || res.instances.empty()) {
    res.note = "skipped: " + std::to_string(res.instances.size()) + " instances (minimum " +
               std::to_string(settings.min_instances) + ")";
    return false;
  }
  labels.clear();
  for (const auto& inst : res.instances) labels.push_back(inst.label);
  res.split = make_split(labels, settings.split, task_seed);
  if (res.split.train.empty()) {
    res.note = "skipped: empty training split";
    return false;
  }
  const auto train = pick(res.instances, res.split.train);
  res.vocabulary = build_vocabulary(train);
  design = vectorize(res.instances, res.vocabulary);
  res.evaluation.train = res.split.train.size();
  res.evaluation.dev = res.split.dev.size();
  res.evaluation.test = res.split.test.size();
  return true;
}

template <typename Model>
void evaluate(Evaluation& ev, const Model& model, const Design& design, const Split& split,
              const std::vector<std::string>& labels) {
  const auto train_gold = gather(labels, split.train);
  ev.baseline_label = most_frequent_baseline(train_gold);
  const std::vector<std::size_t>& held = split.test.empty() ? split.dev : split.test;
  const auto gold = gather(labels, held);
  const auto pred = predict_rows(model, design.X, held);
  ev.model_accuracy = accuracy(pred, gold);
  std::vector<std::string> base(gold.size(), ev.baseline_label);
  ev.baseline_accuracy = accuracy(base, gold);
}

}  // namespace

TreeTaskResult run_tree_task(std::string name, std::vector<Instance> instances, const TaskSettings& settings,
                             const RuleMiningOptions& options, const Glossary& glossary,
                             const RuleContext& context) {
  TreeTaskResult res;
  res.name = std::move(name);
  res.instances = std::move(instances);
  res.context = context;
  res.evaluation.model_kind = "tree";
  const std::uint64_t task_seed = derive_seed(settings.seed, stable_hash(res.name));
  std::vector<std::string> labels;
  Design design;
  if (!prepare(res, settings, labels, design, task_seed)) return res;

  TreeConfig cfg = settings.tree;
  cfg.seed = derive_seed(task_seed, 1);
  cfg.jobs = settings.jobs;
  res.fit = fit_tree(design.X, labels, res.split, cfg);
  const auto& cell = res.fit->grid[res.fit->chosen];
  res.evaluation.selected = std::string(criterion_name(cell.criterion)) + ", max depth " +
                            std::to_string(cell.max_depth) + ", effective depth " +
                            std::to_string(cell.effective_depth);
  evaluate(res.evaluation, res.fit->tree, design, res.split, labels);

  const auto train = pick(res.instances, res.split.train);
  res.rules = extract_tree_rules(res.fit->tree, res.vocabulary, train, options);
  const std::string prefix = slug(res.name);
  std::size_t n = 0;
  for (auto& rule : res.rules.rules) {
    rule.id = prefix + "-r" + std::to_string(++n);
    attach_examples(rule, res.instances, settings.max_examples);
    rule.rendered = render_rule(rule, glossary, context);
  }
  res.rules.default_rule.id = prefix + "-default";
  attach_examples(res.rules.default_rule, res.instances, settings.max_examples);
  res.rules.default_rule.rendered = render_rule(res.rules.default_rule, glossary, context);
  for (auto& cand : res.rules.candidates) cand.rendered = render_rule(cand, glossary, context);
  res.completed = true;
  return res;
}

LinearTaskResult run_linear_task(std::string name, std::vector<Instance> instances, const TaskSettings& settings,
                                 const Glossary& glossary, const RuleContext& context) {
  LinearTaskResult res;
  res.name = std::move(name);
  res.instances = std::move(instances);
  res.context = context;
  res.evaluation.model_kind = "linear";
  const std::uint64_t task_seed = derive_seed(settings.seed, stable_hash(res.name));
  std::vector<std::string> labels;
  Design design;
  if (!prepare(res, settings, labels, design, task_seed)) return res;
  if (label_set(gather(labels, res.split.train)).size() < 2) {
    res.note = "skipped: degenerate task, a single class after splitting";
    return res;
  }

  LinearConfig cfg = settings.linear;
  cfg.seed = derive_seed(task_seed, 2);
  cfg.jobs = settings.jobs;
  res.fit = fit_linear(design.X, labels, res.split, cfg);
  const auto& cell = res.fit->grid[res.fit->chosen];
  res.evaluation.selected = "C=" + format_fixed(cell.c, 3) + ", class weight " +
                            std::string(class_weight_name(cell.class_weight));
  evaluate(res.evaluation, res.fit->model, design, res.split, labels);

  res.rules = extract_linear_rules(res.fit->model, res.vocabulary, settings.top_k);
  const std::string prefix = slug(res.name);
  std::size_t n = 0;
  for (auto& r : res.rules) {
    r.id = prefix + "-c" + std::to_string(++n);
    attach_examples(r, res.instances, settings.max_examples);
    r.rendered = render_class_rules(r, glossary, context);
  }
  res.completed = true;
  return res;
}

}  // namespace gramex
