#include <doctest.h>

#include "fixtures.hpp"
#include "gramex/glossary.hpp"
#include "gramex/ruleminer.hpp"

using namespace gramex;

namespace {

std::vector<std::size_t> iota_rows(std::size_t n) {
  std::vector<std::size_t> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = i;
  return r;
}

}  // namespace

TEST_CASE("tree leaves become candidates; pure XOR leaves are significant") {
  const auto xs = fixtures::xor_instances(400);
  const auto vocab = build_vocabulary(xs);
  const auto d = vectorize(xs, vocab);
  const auto rows = iota_rows(d.X.rows());
  const auto feats = iota_rows(d.X.cols());
  const auto tree = fit_single_tree(d.X, d.labels, rows, feats, Criterion::gini, 2, 1);
  RuleMiningOptions opt;
  opt.mode = ExpectedMode::uniform;
  const TreeRules rules = extract_tree_rules(tree, vocab, xs, opt);
  CHECK(rules.candidates.size() == 4);
  CHECK(rules.rule_count() == 4);
  std::size_t support = 0;
  for (const auto& r : rules.rules) {
    CHECK(r.conditions.size() == 2);
    CHECK(r.verdict == Verdict::significant);
    CHECK(r.support.at(r.label) == r.support_total());
    support += r.support_total();
  }
  CHECK(support == 400);
  CHECK(rules.default_rule.conditions.empty());
  CHECK(rules.default_rule.verdict == Verdict::default_rule);
}

TEST_CASE("satisfies and example attachment") {
  auto xs = fixtures::xor_instances(40);
  GrammarRule rule;
  rule.conditions = {{"x:a=1", true}, {"x:b=1", false}};
  rule.label = "1";
  attach_examples(rule, xs, 3);
  CHECK(rule.example_total == 10);
  CHECK(rule.counter_example_total == 0);
  CHECK(rule.examples.size() == 3);
  CHECK_FALSE(rule.flagged);
  for (const auto& p : rule.examples) {
    const auto& inst = xs.at(p.order);
    CHECK(satisfies(inst, rule.conditions));
  }
  GrammarRule wrong = rule;
  wrong.label = "0";
  attach_examples(wrong, xs, 3);
  CHECK(wrong.example_total == 0);
  CHECK(wrong.flagged);
  CHECK(wrong.counter_example_total == 10);
}

TEST_CASE("rendering uses glossary phrases") {
  const Glossary g = Glossary::defaults();
  RuleContext ctx;
  ctx.dep_role = "object";
  ctx.head_role = "verb";
  GrammarRule r;
  r.conditions = {{"dep:PronType=Int", true}};
  r.label = "after";
  r.support = {{"after", 160}};
  const std::string text = render_rule(r, g, ctx);
  CHECK(text.find("interrogative pronoun") != std::string::npos);
  CHECK(text.find("object comes after the verb") != std::string::npos);
  CHECK(text.rfind("If ", 0) == 0);
  r.conditions.clear();
  CHECK(render_rule(r, g, ctx).rfind("In general, ", 0) == 0);
}

TEST_CASE("linear rules keep only positive weights, descending") {
  LinearModel m;
  m.classes = {"a", "b"};
  m.weights = {{0.5f, -0.2f, 0.9f}, {-0.1f, -0.3f, 0.0f}};
  m.bias = {0, 0};
  const FeatureVocabulary vocab({"f=1", "g=1", "h=1"});
  const auto rules = extract_linear_rules(m, vocab, 20);
  REQUIRE(rules.size() == 2);
  REQUIRE(rules[0].features.size() == 2);
  CHECK(rules[0].features[0].feature == "h=1");
  CHECK(rules[0].features[1].feature == "f=1");
  CHECK(rules[1].features.empty());
  CHECK(extract_linear_rules(m, vocab, 1)[0].features.size() == 1);
}
