#include "gramex/agreement.hpp"

#include "gramex/util.hpp"
#include "gramex/wordorder.hpp"

namespace gramex {

void AgreementTask::validate() const {
  if (attribute.empty()) throw Error("agreement task without an attribute");
  if (deprels.empty()) throw Error("agreement task '" + attribute + "' has an empty relation selector");
}

std::vector<AgreementTask> default_agreement_tasks() { return {{"Gender"}, {"Person"}}; }

std::vector<Instance> extract_agreement_instances(const Corpus& corpus, const AgreementTask& task,
                                                  const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas) {
  task.validate();
  FeatureTemplate t = tmpl;
  t.excluded_attributes.insert(task.attribute);
  std::vector<Instance> out;
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& s = corpus.sentences[si];
    for (const Token& dep : s.tokens) {
      if (dep.head == 0) continue;
      if (!task.deprels.count(base_relation(dep.deprel)) && !task.deprels.count(dep.deprel)) continue;
      const Token& head = s.at(dep.head);
      const std::string* hv = head.feat(task.attribute);
      const std::string* dv = dep.feat(task.attribute);
      if (!hv || !dv) continue;
      Instance inst;
      inst.features = extract_context_features(s, head.index, dep.index, t, lemmas);
      inst.label = *hv == *dv ? "1" : "0";
      inst.provenance = {s.id, head.index, dep.index, s.size(), si};
      out.push_back(std::move(inst));
    }
  }
  return out;
}

TreeTaskResult run_agreement_task(const Corpus& corpus, const AgreementTask& task, const TaskSettings& settings,
                                  const Glossary& glossary, const LemmaVocabulary& lemmas) {
  auto instances = extract_agreement_instances(corpus, task, settings.features, lemmas);
  RuleMiningOptions options;
  options.mode = ExpectedMode::empirical;
  options.required_label = "1";
  options.chi2 = settings.chi2;
  RuleContext ctx;
  ctx.kind = TaskKind::agreement;
  ctx.attribute = task.attribute;
  return run_tree_task(task.attribute, std::move(instances), settings, options, glossary, ctx);
}

}  // namespace gramex
