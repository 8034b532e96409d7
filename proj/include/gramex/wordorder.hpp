#pragma once
// Word order as before/after classification over head-dependent arcs.

#include <set>
#include <string>
#include <vector>

#include "gramex/corpus.hpp"
#include "gramex/tasks.hpp"

namespace gramex {

struct OrderTask {
  std::string name;                // e.g. "object-verb"
  std::set<std::string> deprels;   // matched on the base relation (before ':')
  std::set<std::string> head_upos; // empty = any
  std::set<std::string> dep_upos;  // empty = any
  std::string dep_role;            // used when rendering rules
  std::string head_role;

  void validate() const;
};

// subject-verb, object-verb, numeral-noun, adjective-noun, noun-adposition.
std::vector<OrderTask> default_order_tasks();

// "nsubj:pass" -> "nsubj"
std::string base_relation(const std::string& deprel);

// One instance per matching arc; label "before" iff the dependent precedes the head.
std::vector<Instance> extract_order_instances(const Corpus& corpus, const OrderTask& task,
                                              const FeatureTemplate& tmpl, const LemmaVocabulary& lemmas);

// Word order leaves are tested against a uniform before/after null.
TreeTaskResult run_order_task(const Corpus& corpus, const OrderTask& task, const TaskSettings& settings,
                              const Glossary& glossary, const LemmaVocabulary& lemmas);

}  // namespace gramex
