#include <algorithm>
#include <cmath>
#include <limits>
#include <cctype>
#include <set>
#include <tuple>

#include "gramex/ruleminer.hpp"
#include "gramex/util.hpp"

namespace gramex {

// ---- statistics -----------------------------------------------------------

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Series expansion of P(a, x); converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz), for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw Error("regularized_gamma_q: a must be > 0");
  if (x < 0.0) throw Error("regularized_gamma_q: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi2_survival(double stat, double df) {
  if (df <= 0.0) return 1.0;
  if (stat <= 0.0) return 1.0;
  return regularized_gamma_q(df / 2.0, stat / 2.0);
}

double pearson_statistic(std::span<const double> observed, std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size()) throw Error("pearson_statistic: size mismatch");
  double n = 0.0;
  for (double o : observed) n += o;
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected_probs[i] * n;
    if (expected_probs[i] == 0.0) {
      if (observed[i] != 0.0) throw Error("chi-squared test ill-posed: zero expected probability with observations");
      continue;
    }
    const double diff = observed[i] - e;
    stat += diff * diff / e;
  }
  return stat;
}

std::string_view expected_mode_name(ExpectedMode m) { return m == ExpectedMode::uniform ? "uniform" : "empirical"; }

void Chi2Config::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("chi2 config: alpha must be in (0,1)");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::significant:
      return "significant";
    case Verdict::inconclusive:
      return "inconclusive";
    case Verdict::default_rule:
      return "default";
  }
  return "inconclusive";
}

Chi2Result chi2_relabel(std::span<const double> observed, std::span<const double> expected_probs,
                        const Chi2Config& config, std::optional<std::size_t> required_label) {
  config.validate();
  if (observed.empty() || observed.size() != expected_probs.size()) {
    throw Error("chi2_relabel: observed and expected must be non-empty and of equal length");
  }
  double n = 0.0, psum = 0.0;
  std::size_t categories = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] < 0.0 || expected_probs[i] < 0.0) throw Error("chi2_relabel: negative count or probability");
    n += observed[i];
    psum += expected_probs[i];
    if (expected_probs[i] > 0.0) ++categories;
  }
  if (n < 1.0) throw Error("chi2_relabel: no observations");
  if (std::abs(psum - 1.0) > 1e-9) throw Error("chi2_relabel: expected probabilities must sum to 1");

  Chi2Result r;
  r.statistic = pearson_statistic(observed, expected_probs);
  r.df = categories > 0 ? categories - 1 : 0;
  r.p_value = chi2_survival(r.statistic, static_cast<double>(r.df));
  r.label = static_cast<std::size_t>(std::max_element(observed.begin(), observed.end()) - observed.begin());
  const bool over_represented = observed[r.label] > expected_probs[r.label] * n;
  const bool label_ok = !required_label || *required_label == r.label;
  const bool enough = n >= static_cast<double>(config.min_leaf_support);
  r.verdict = (r.p_value < config.alpha && enough && over_represented && label_ok) ? Verdict::significant
                                                                                  : Verdict::inconclusive;
  return r;
}

// ---- rules ----------------------------------------------------------------

bool satisfies(const Instance& instance, std::span<const RuleCondition> conditions) {
  for (const auto& c : conditions) {
    if (instance.has(c.feature) != c.present) return false;
  }
  return true;
}

std::size_t GrammarRule::support_total() const {
  std::size_t n = 0;
  for (const auto& [_, c] : support) n += c;
  return n;
}

TreeRules extract_tree_rules(const DecisionTree& tree, const FeatureVocabulary& vocab,
                             std::span<const Instance> training, const RuleMiningOptions& options) {
  options.chi2.validate();
  TreeRules out;
  if (training.empty()) return out;

  std::vector<std::string> labels;
  labels.reserve(training.size());
  for (const auto& inst : training) labels.push_back(inst.label);
  const auto classes = label_set(labels);
  const std::size_t k = classes.size();
  auto class_of = [&](const std::string& l) {
    return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), l) - classes.begin());
  };

  std::vector<double> marginal(k, 0.0);
  for (const auto& l : labels) marginal[class_of(l)] += 1.0;
  std::vector<double> expected(k);
  for (std::size_t c = 0; c < k; ++c) {
    expected[c] = options.mode == ExpectedMode::uniform ? 1.0 / static_cast<double>(k)
                                                        : marginal[c] / static_cast<double>(labels.size());
  }
  std::optional<std::size_t> required;
  bool required_missing = false;
  if (options.required_label) {
    auto it = std::lower_bound(classes.begin(), classes.end(), *options.required_label);
    if (it != classes.end() && *it == *options.required_label) {
      required = static_cast<std::size_t>(it - classes.begin());
    } else {
      required_missing = true;
    }
  }

  // Route the training rows.
  const Design design = vectorize(training, vocab);
  std::map<std::size_t, std::vector<double>> leaf_counts;
  for (std::size_t i = 0; i < training.size(); ++i) {
    auto& counts = leaf_counts[tree.nodes.empty() ? 0 : tree.leaf_for(design.X.row(i))];
    counts.resize(k, 0.0);
    counts[class_of(labels[i])] += 1.0;
  }

  out.default_rule.id = "default";
  out.default_rule.label = most_frequent_baseline(labels);
  out.default_rule.verdict = Verdict::default_rule;
  for (std::size_t c = 0; c < k; ++c) out.default_rule.support[classes[c]] = static_cast<std::size_t>(marginal[c]);

  std::size_t serial = 0;
  for (std::size_t leaf : tree.leaves()) {
    auto path = tree.path_to(leaf);
    if (path.empty()) continue;
    GrammarRule rule;
    for (const auto& cond : path) rule.conditions.push_back({vocab.name(cond.feature), cond.present});
    std::vector<double> counts = leaf_counts.count(leaf) ? leaf_counts[leaf] : std::vector<double>(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) rule.support[classes[c]] = static_cast<std::size_t>(counts[c]);
    double n = 0.0;
    for (double c : counts) n += c;
    if (n >= 1.0) {
      auto res = chi2_relabel(counts, expected, options.chi2, required);
      rule.statistic = res.statistic;
      rule.p_value = res.p_value;
      rule.df = res.df;
      rule.label = classes[res.label];
      rule.verdict = required_missing ? Verdict::inconclusive : res.verdict;
    } else {
      rule.label = tree.classes[tree.majority(leaf)];
      rule.verdict = Verdict::inconclusive;
    }
    rule.id = "leaf" + std::to_string(++serial);
    out.candidates.push_back(rule);
    if (rule.verdict == Verdict::significant) out.rules.push_back(std::move(rule));
  }
  return out;
}

std::vector<ClassRules> extract_linear_rules(const LinearModel& model, const FeatureVocabulary& vocab,
                                             std::size_t k) {
  std::vector<ClassRules> out;
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    ClassRules cr;
    cr.label = model.classes[c];
    std::vector<WeightedFeature> feats;
    for (std::size_t j = 0; j < vocab.size() && j < model.weights[c].size(); ++j) {
      const double w = model.weights[c][j];
      if (w > 0.0) feats.push_back({vocab.name(j), w});
    }
    std::stable_sort(feats.begin(), feats.end(),
                     [](const WeightedFeature& a, const WeightedFeature& b) { return a.weight > b.weight; });
    if (feats.size() > k) feats.resize(k);
    cr.features = std::move(feats);
    out.push_back(std::move(cr));
  }
  return out;
}

namespace {

template <typename Pred>
std::pair<std::vector<Provenance>, std::size_t> pick_examples(std::span<const Instance> instances, Pred pred,
                                                              std::size_t max_each) {
  std::vector<const Instance*> hits;
  for (const auto& inst : instances) {
    if (pred(inst)) hits.push_back(&inst);
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Instance* a, const Instance* b) {
    const auto& pa = a->provenance;
    const auto& pb = b->provenance;
    if (pa.length != pb.length) return pa.length < pb.length;
    if (pa.order != pb.order) return pa.order < pb.order;
    return pa.dep < pb.dep;
  });
  std::vector<Provenance> out;
  std::set<std::string> seen;
  for (const Instance* h : hits) {
    if (out.size() >= max_each) break;
    if (!seen.insert(h->provenance.sentence).second) continue;
    out.push_back(h->provenance);
  }
  return {out, hits.size()};
}

}  // namespace

void attach_examples(GrammarRule& rule, std::span<const Instance> instances, std::size_t max_each) {
  auto [ex, ex_total] = pick_examples(
      instances, [&](const Instance& i) { return i.label == rule.label && satisfies(i, rule.conditions); },
      max_each);
  auto [cx, cx_total] = pick_examples(
      instances, [&](const Instance& i) { return i.label != rule.label && satisfies(i, rule.conditions); },
      max_each);
  rule.examples = std::move(ex);
  rule.example_total = ex_total;
  rule.counter_examples = std::move(cx);
  rule.counter_example_total = cx_total;
  rule.flagged = rule.examples.empty();
}

void attach_examples(ClassRules& rules, std::span<const Instance> instances, std::size_t max_each) {
  std::vector<std::string> top;
  for (std::size_t i = 0; i < rules.features.size() && i < 3; ++i) top.push_back(rules.features[i].feature);
  // Prefer occurrences showing one of the strongest features.
  auto [ex, total] = pick_examples(
      instances,
      [&](const Instance& i) {
        if (i.label != rules.label) return false;
        if (top.empty()) return true;
        return std::any_of(top.begin(), top.end(), [&](const std::string& f) { return i.has(f); });
      },
      max_each);
  if (ex.empty()) {
    std::tie(ex, total) =
        pick_examples(instances, [&](const Instance& i) { return i.label == rules.label; }, max_each);
  }
  rules.examples = std::move(ex);
  rules.example_total = total;
}

// ---- rendering ------------------------------------------------------------

namespace {

struct Clause {
  std::string subject;
  std::string verb;  // "is", "has", "contains"
  std::string rest;
};

std::string with_article(const std::string& phrase) {
  if (phrase.empty()) return phrase;
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(phrase[0])));
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return (vowel ? "an " : "a ") + phrase;
}

std::string single_quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

Clause token_clause(const std::string& subject, std::string_view name, std::string_view value,
                    const Glossary& g) {
  if (name == "upos") return {subject, "is", with_article(g.phrase(atom("upos", value)))};
  if (name == "lemma") {
    if (value == "OOV") return {subject, "is", "a less frequent word"};
    return {subject, "is", single_quoted(value)};
  }
  if (name == "deprel") return {subject, "is", with_article(g.phrase(atom("deprel", value)))};
  return {subject, "is", "marked as " + g.value_phrase(name, value)};
}

Clause clause_for(const std::string& feature, const Glossary& g, const RuleContext& ctx) {
  const auto eq = feature.find('=');
  if (eq == std::string::npos) return {single_quoted(feature), "is", "present"};
  const std::string key = feature.substr(0, eq);
  const std::string value = feature.substr(eq + 1);
  const auto colon = key.find(':');
  const std::string scope = colon == std::string::npos ? std::string() : key.substr(0, colon);
  const std::string name = colon == std::string::npos ? key : key.substr(colon + 1);
  const std::string dep = "the " + ctx.dep_role;
  const std::string head = "the " + ctx.head_role;

  if (scope.empty() && name == "deprel") return {"the relation", "is", with_article(g.phrase(feature))};
  if (scope == "dep" && name == "neighbor_upos") {
    return {"a word next to " + dep, "is", with_article(g.phrase(atom("upos", value)))};
  }
  if (scope == "dep" || scope == "tok") return token_clause(dep, name, value, g);
  if (scope == "head") return token_clause(head, name, value, g);
  if (scope == "codep") {
    return {head, "has", "another " + g.phrase(atom("deprel", name)) + " that is " +
                             with_article(g.phrase(atom("upos", value)))};
  }
  if (scope == "sent") {
    if (name == "interrogative") return {"the sentence", "contains", "a question word"};
    if (name == "question") return {"the sentence", "is", "a question"};
  }
  if (scope == "l1") {
    const std::string w = "the English word";
    if (name == "child_lemma") return {w, "is", "modified by " + single_quoted(value)};
    if (name == "prev_lemma") return {"the preceding English word", "is", single_quoted(value)};
    if (name == "next_lemma") return {"the following English word", "is", single_quoted(value)};
    if (name == "head_lemma") return {"the head of the English word", "is", single_quoted(value)};
    if (name == "sense") return {w, "has", "the sense " + single_quoted(value)};
    if (name == "sense_anc") return {w, "is", "a kind of " + single_quoted(value)};
    return token_clause(w, name, value, g);
  }
  if (scope == "l2") {
    const std::string w = "the translated word";
    if (name == "prev_lemma") return {"the preceding translated word", "is", single_quoted(value)};
    if (name == "next_lemma") return {"the following translated word", "is", single_quoted(value)};
    if (name == "head_lemma") return {"the head of the translated word", "is", single_quoted(value)};
    return token_clause(w, name, value, g);
  }
  return {single_quoted(feature), "is", "present"};
}

std::string join_clause(const Clause& c, bool negated) {
  if (!negated) return c.subject + " " + c.verb + " " + c.rest;
  if (c.verb == "is") return c.subject + " is not " + c.rest;
  if (c.verb == "has") return c.subject + " does not have " + c.rest;
  if (c.verb == "contains") return c.subject + " does not contain " + c.rest;
  return c.subject + " does not " + c.verb + " " + c.rest;
}

std::string percent(double share) { return format_fixed(100.0 * share, 1) + "%"; }

}  // namespace

std::string render_condition(const RuleCondition& condition, const Glossary& glossary, const RuleContext& ctx) {
  return join_clause(clause_for(condition.feature, glossary, ctx), !condition.present);
}

std::string render_label(const std::string& label, const Glossary& glossary, const RuleContext& ctx,
                         bool negated) {
  switch (ctx.kind) {
    case TaskKind::word_order:
      return "the " + ctx.dep_role + (negated ? " does not come " : " comes ") + label + " the " + ctx.head_role;
    case TaskKind::agreement: {
      const std::string attr = to_lower_ascii(ctx.attribute.empty() ? "the attribute" : ctx.attribute);
      const bool agree = (label == "1") != negated;
      return "the " + ctx.dep_role + " and the " + ctx.head_role + (agree ? " agree in " : " need not agree in ") +
             attr;
    }
    case TaskKind::suffix:
      return "the suffix -" + label + (negated ? " is not used" : " is used");
    case TaskKind::lexical:
      return single_quoted(label) + (negated ? " is not used" : " is used") + " for " + single_quoted(ctx.l1_word);
  }
  (void)glossary;
  return label;
}

std::string render_rule(const GrammarRule& rule, const Glossary& glossary, const RuleContext& ctx) {
  const std::size_t n = rule.support_total();
  const auto it = rule.support.find(rule.label);
  const double share = n == 0 || it == rule.support.end() ? 0.0 : static_cast<double>(it->second) / n;
  std::string head;
  if (rule.conditions.empty()) {
    head = "In general, " + render_label(rule.label, glossary, ctx);
  } else {
    std::vector<std::string> clauses;
    for (const auto& c : rule.conditions) clauses.push_back(render_condition(c, glossary, ctx));
    head = "If " + join(clauses, " and ") + ", then " + render_label(rule.label, glossary, ctx);
  }
  return head + " (" + percent(share) + " of " + std::to_string(n) +
         " cases). Exceptions: " + std::to_string(rule.counter_example_total) + ".";
}

std::string render_class_rules(const ClassRules& rules, const Glossary& glossary, const RuleContext& ctx) {
  std::string out = render_label(rules.label, glossary, ctx);
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  if (rules.features.empty()) return out + " without a distinctive context.";
  out += " when ";
  const std::size_t shown = std::min<std::size_t>(rules.features.size(), 5);
  std::vector<std::string> clauses;
  for (std::size_t i = 0; i < shown; ++i) {
    clauses.push_back(render_condition({rules.features[i].feature, true}, glossary, ctx));
  }
  out += join(clauses, "; or ");
  if (rules.features.size() > shown) out += " (and " + std::to_string(rules.features.size() - shown) + " weaker cues)";
  return out + ".";
}

}  // namespace gramex
