// Word order, agreement and suffix tasks on the planted corpora.
#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "gramex/agreement.hpp"
#include "gramex/glossary.hpp"
#include "gramex/suffixes.hpp"
#include "gramex/util.hpp"
#include "gramex/wordorder.hpp"

using namespace gramex;

namespace {

OrderTask object_verb() {
  for (auto t : default_order_tasks()) {
    if (t.name == "object-verb") return t;
  }
  throw Error("no object-verb task");
}

}  // namespace

TEST_CASE("order instances label direction") {
  const Corpus c = fixtures::planted_word_order(200, 1);
  const auto lemmas = LemmaVocabulary::build(c, 500);
  const auto xs = extract_order_instances(c, object_verb(), {}, lemmas);
  REQUIRE(!xs.empty());
  for (const auto& x : xs) {
    const bool before = x.provenance.dep < x.provenance.head;
    CHECK(x.label == (before ? "before" : "after"));
    CHECK(x.has("dep:PronType=Int") == (x.label == "after"));
  }
  CHECK(base_relation("nsubj:pass") == "nsubj");
}

TEST_CASE("planted interrogative object rule is recovered") {
  const Corpus c = fixtures::planted_word_order(2000, 1);
  TaskSettings s;
  s.seed = 1;
  const auto r = run_order_task(c, object_verb(), s, Glossary::defaults(), LemmaVocabulary::build(c, 500));
  REQUIRE(r.completed);
  CHECK(r.evaluation.model_accuracy == 1.0);
  const auto it = std::find_if(r.rules.rules.begin(), r.rules.rules.end(), [](const GrammarRule& g) {
    return g.conditions.size() == 1 && g.conditions[0].feature == "dep:PronType=Int" && g.conditions[0].present;
  });
  REQUIRE(it != r.rules.rules.end());
  CHECK(it->label == "after");
  CHECK(r.rules.default_rule.label == "before");
}

TEST_CASE("too few instances leaves a task incomplete") {
  const Corpus c = fixtures::planted_word_order(20, 1);
  TaskSettings s;
  s.min_instances = 1000;
  const auto r = run_order_task(c, object_verb(), s, Glossary::defaults(), {});
  CHECK_FALSE(r.completed);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("agreement instances exclude the predicted attribute") {
  const Corpus c = fixtures::planted_agreement(400);
  AgreementTask t{"Gender", {"amod", "obj"}};
  const auto xs = extract_agreement_instances(c, t, {}, LemmaVocabulary::build(c, 500));
  CHECK(xs.size() == 800);
  std::size_t amod_match = 0, amod = 0;
  for (const auto& x : xs) {
    for (const auto& f : x.features) CHECK(f.find("Gender") == std::string::npos);
    if (x.has("deprel=amod")) {
      ++amod;
      amod_match += x.label == "1";
    }
  }
  CHECK(amod == 400);
  CHECK(amod_match == 380);
}

TEST_CASE("agreement leaves: amod significant, obj inconclusive") {
  const Corpus c = fixtures::planted_agreement(400);
  TaskSettings s;
  s.seed = 2;
  const auto r = run_agreement_task(c, AgreementTask{"Gender", {"amod", "obj"}}, s, Glossary::defaults(),
                                    LemmaVocabulary::build(c, 500));
  REQUIRE(r.completed);
  bool amod_sig = false, obj_seen = false;
  for (const auto& cand : r.rules.candidates) {
    std::size_t amod = 0, obj = 0;
    for (const auto& x : r.instances) {
      if (!satisfies(x, cand.conditions)) continue;
      (x.has("deprel=amod") ? amod : obj) += 1;
    }
    if (amod > 0 && obj == 0) {
      CHECK(amod >= 200);
      amod_sig = cand.verdict == Verdict::significant && cand.label == "1";
    } else if (obj > 0 && amod == 0) {
      CHECK(obj >= 200);
      obj_seen = true;
      CHECK(cand.verdict == Verdict::inconclusive);
    }
  }
  CHECK(amod_sig);
  CHECK(obj_seen);
}

TEST_CASE("lcp segmentation") {
  const auto d = decompose("deshaala", "desh");
  CHECK(d.stem == "desh");
  CHECK(d.suffix == "aala");
  CHECK(d.method == "lcp");
  CHECK(segmentation_note().find("desh + laa") != std::string_view::npos);

  const auto same = decompose("ghar", "ghar");
  CHECK(same.suffix.empty());
  const auto supp = decompose("went", "go");
  CHECK(supp.suppletive);
  CHECK(supp.stem.empty());
  CHECK(supp.suffix == "went");
  // Devanagari works on code points, not bytes
  const auto dv = decompose("देशाला", "देश");
  CHECK(dv.stem == "देश");
  CHECK(dv.suffix == "ाला");
  // NFC: a decomposed form lines up with a precomposed lemma
  const auto nf = decompose("cafe\xCC\x81s", "caf\xC3\xA9");
  CHECK(nf.stem == "caf\xC3\xA9");
  CHECK(nf.suffix == "s");
  CHECK_THROWS_AS(decompose("", "x"), Error);
}

TEST_CASE("suffix inventory and classifier") {
  const Corpus c = fixtures::planted_suffixes(400, 3);
  const auto inv = build_inventory(c, "NOUN", 10);
  CHECK(inv.contains("laa"));
  CHECK(inv.contains("ne"));
  CHECK(inv.counts.size() == 2);
  TaskSettings s;
  s.seed = 3;
  const auto r = run_suffix_task(c, inv, s, Glossary::defaults(), LemmaVocabulary::build(c, 500));
  REQUIRE(r.completed);
  CHECK(r.evaluation.model_accuracy == 1.0);
  CHECK(r.rule_count() == 2);

  const auto verbs = build_inventory(c, "VERB", 10);
  const auto none = run_suffix_task(c, verbs, s, Glossary::defaults(), {});
  CHECK_FALSE(none.completed);
}
