#include "gramex/wordorder.hpp"

#include "gramex/util.hpp"

namespace gramex {

void OrderTask::validate() const {
  if (name.empty()) throw Error("word order task without a name");
  if (deprels.empty()) throw Error("word order task '" + name + "' has an empty relation selector");
}

std::vector<OrderTask> default_order_tasks() {
  const std::set<std::string> nominal{"NOUN", "PROPN"};
  return {
      {"subject-verb", {"nsubj"}, {"VERB"}, {}, "subject", "verb"},
      {"object-verb", {"obj"}, {"VERB"}, {}, "object", "verb"},
      {"numeral-noun", {"nummod"}, nominal, {}, "numeral", "noun"},
      {"adjective-noun", {"amod"}, nominal, {}, "adjective", "noun"},
      {"noun-adposition", {"case"}, {"NOUN", "PROPN", "PRON"}, {"ADP"}, "adposition", "noun"},
  };
}

std::string base_relation(const std::string& deprel) { return deprel.substr(0, deprel.find(':')); }

std::vector<Instance> extract_order_instances(const Corpus& corpus, const OrderTask& task,
                                              const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas) {
  task.validate();
  std::vector<Instance> out;
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    for (const Token& dep : s.tokens) {
      if (dep.head == 0) continue;
      if (!task.deprels.count(base_relation(dep.deprel)) && !task.deprels.count(dep.deprel)) continue;
      const Token& head = s.at(dep.head);
      if (!task.head_upos.empty() && !task.head_upos.count(head.upos)) continue;
      if (!task.dep_upos.empty() && !task.dep_upos.count(dep.upos)) continue;
      Instance inst;
      inst.features = extract_context_features(s, head.index, dep.index, tmpl, lemmas);
      inst.label = dep.index < head.index ? "before" : "after";
      inst.provenance = {s.id, head.index, dep.index, s.size(), si};
      out.push_back(std::move(inst));
    }
  }
  return out;
}

TreeTaskResult run_order_task(const Corpus& corpus, const OrderTask& task, const TaskSettings& settings,
                              const Glossary& glossary, const LemmaVocabulary& lemmas) {
  auto instances = extract_order_instances(corpus, task, settings.features, lemmas);
  RuleMiningOptions options;
  options.mode = ExpectedMode::uniform;
  options.chi2 = settings.chi2;
  RuleContext ctx;
  ctx.kind = TaskKind::word_order;
  ctx.dep_role = task.dep_role.empty() ? "dependent" : task.dep_role;
  ctx.head_role = task.head_role.empty() ? "head" : task.head_role;
  return run_tree_task(task.name, std::move(instances), settings, options, glossary, ctx);
}

}  // namespace gramex
