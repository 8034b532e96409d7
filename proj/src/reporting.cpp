#include "gramex/reporting.hpp"

#include <algorithm>
#include <sstream>

#include "gramex/schema.hpp"
#include "gramex/util.hpp"

namespace gramex {

namespace {

const std::array<std::string_view, 5> kTitles{"General Information", "Vocabulary", "Word Order", "Suffix Usage",
                                              "Agreement"};

std::string sentence_transliteration(const Sentence& s) {
  bool any = false;
  for (const auto& t : s.tokens) any = any || !t.translit.empty();
  if (!any) return {};
  std::vector<std::string> parts;
  for (const auto& t : s.tokens) parts.push_back(t.translit.empty() ? t.form : t.translit);
  return join(parts, " ");
}

std::vector<std::string> forms_of(const Sentence& s) {
  std::vector<std::string> out;
  for (const auto& t : s.tokens) out.push_back(t.form);
  return out;
}

json examples_json(std::span<const Provenance> refs, const ExampleRef& to_ref) {
  json out = json::array();
  for (const auto& p : refs) out.push_back(to_ref(p));
  return out;
}

json conditions_json(std::span<const RuleCondition> conditions) {
  json out = json::array();
  for (const auto& c : conditions) out.push_back({{"feature", c.feature}, {"present", c.present}});
  return out;
}

json support_json(const std::map<std::string, std::size_t>& support) {
  json out = json::object();
  for (const auto& [k, v] : support) out[k] = v;
  return out;
}

json evaluation_json(const Evaluation& e) {
  return {{"model_kind", e.model_kind},
          {"selected", e.selected},
          {"model_accuracy", e.model_accuracy},
          {"baseline_accuracy", e.baseline_accuracy},
          {"baseline_label", e.baseline_label},
          {"train", e.train},
          {"dev", e.dev},
          {"test", e.test}};
}

void collect_refs(const json& j, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key == "ref" && value.is_string()) out.push_back(value.get<std::string>());
      else collect_refs(value, out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_refs(v, out);
  }
}

}  // namespace

std::string_view aspect_title(std::string_view key) {
  for (std::size_t i = 0; i < kAspects.size(); ++i) {
    if (kAspects[i] == key) return kTitles[i];
  }
  throw Error("unknown aspect '" + std::string(key) + "'");
}

std::optional<std::string> canonical_aspect(std::string_view name) {
  for (auto a : kAspects) {
    if (a == name) return std::string(a);
  }
  if (name == "geninfo" || name == "general") return "general_information";
  if (name == "wordorder" || name == "word-order") return "word_order";
  if (name == "suffixes" || name == "suffix" || name == "suffix-usage") return "suffix_usage";
  if (name == "lexical" || name == "lexsel") return "vocabulary";
  return std::nullopt;
}

// ---- sentences --------------------------------------------------------------

std::string SentenceStore::add_treebank(const Sentence& s) {
  std::string ref = "tb:" + s.id;
  if (!records_.count(ref)) records_[ref] = {s.text, s.translation, sentence_transliteration(s), forms_of(s)};
  return ref;
}

std::string SentenceStore::add_pair(const ParallelPair& p) {
  std::string ref = "par:" + p.id;
  if (!records_.count(ref)) {
    records_[ref] = {p.target.text, p.source.text, sentence_transliteration(p.target), forms_of(p.target)};
  }
  return ref;
}

const SentenceRecord* SentenceStore::find(const std::string& ref) const {
  auto it = records_.find(ref);
  return it == records_.end() ? nullptr : &it->second;
}

void SentenceStore::merge(const SentenceStore& other) {
  for (const auto& [ref, rec] : other.records_) {
    auto [it, inserted] = records_.emplace(ref, rec);
    if (!inserted && !(it->second == rec)) throw Error("sentence store: conflicting records for " + ref);
  }
}

json SentenceStore::to_json() const {
  json out = json::object();
  for (const auto& [ref, r] : records_) {
    out[ref] = {{"text", r.text}, {"translation", r.translation}, {"transliteration", r.transliteration},
                {"forms", r.forms}};
  }
  return out;
}

SentenceStore SentenceStore::from_json(const json& j) {
  SentenceStore s;
  for (const auto& [ref, r] : j.items()) {
    s.records_[ref] = {r.at("text").get<std::string>(), r.at("translation").get<std::string>(),
                       r.at("transliteration").get<std::string>(), r.at("forms").get<std::vector<std::string>>()};
  }
  return s;
}

ExampleRef treebank_refs(const Corpus& corpus, SentenceStore& store) {
  return [&corpus, &store](const Provenance& p) -> json {
    const Sentence* s = corpus.find(p.sentence);
    if (!s) throw Error("example refers to unknown sentence '" + p.sentence + "'");
    return {{"ref", store.add_treebank(*s)}, {"head", p.head}, {"dep", p.dep}};
  };
}

ExampleRef parallel_refs(std::span<const ParallelPair> pairs, SentenceStore& store) {
  return [pairs, &store](const Provenance& p) -> json {
    if (p.order >= pairs.size() || pairs[p.order].id != p.sentence) {
      throw Error("example refers to unknown pair '" + p.sentence + "'");
    }
    return {{"ref", store.add_pair(pairs[p.order])}, {"head", p.head}, {"dep", p.dep}};
  };
}

// ---- results --------------------------------------------------------------

json rule_json(const GrammarRule& r, const ExampleRef& refs) {
  return {{"id", r.id},
          {"conditions", conditions_json(r.conditions)},
          {"label", r.label},
          {"support", support_json(r.support)},
          {"statistic", r.statistic},
          {"p_value", r.p_value},
          {"df", r.df},
          {"verdict", verdict_name(r.verdict)},
          {"rendered", r.rendered},
          {"flagged", r.flagged},
          {"examples", examples_json(r.examples, refs)},
          {"counter_examples", examples_json(r.counter_examples, refs)},
          {"example_total", r.example_total},
          {"counter_example_total", r.counter_example_total}};
}

json tree_task_json(const TreeTaskResult& t, const ExampleRef& refs) {
  json out = {{"name", t.name},
              {"completed", t.completed},
              {"note", t.note},
              {"evaluation", nullptr},
              {"rule_count", 0},
              {"rules", json::array()},
              {"default_rule", nullptr},
              {"candidates", json::array()}};
  if (!t.completed) return out;
  out["evaluation"] = evaluation_json(t.evaluation);
  out["rule_count"] = t.rules.rule_count();
  for (const auto& r : t.rules.rules) out["rules"].push_back(rule_json(r, refs));
  out["default_rule"] = rule_json(t.rules.default_rule, refs);
  for (const auto& c : t.rules.candidates) {
    out["candidates"].push_back({{"conditions", conditions_json(c.conditions)},
                                 {"label", c.label},
                                 {"support", support_json(c.support)},
                                 {"statistic", c.statistic},
                                 {"p_value", c.p_value},
                                 {"df", c.df},
                                 {"verdict", verdict_name(c.verdict)},
                                 {"rendered", c.rendered}});
  }
  return out;
}

json linear_task_json(const LinearTaskResult& t, const ExampleRef& refs) {
  json out = {{"name", t.name}, {"completed", t.completed}, {"note", t.note},
              {"evaluation", nullptr}, {"rule_count", 0}, {"classes", json::array()}};
  if (!t.completed) return out;
  out["evaluation"] = evaluation_json(t.evaluation);
  out["rule_count"] = t.rule_count();
  for (const auto& c : t.rules) {
    json features = json::array();
    for (const auto& f : c.features) features.push_back({{"feature", f.feature}, {"weight", f.weight}});
    out["classes"].push_back({{"id", c.id},
                              {"label", c.label},
                              {"features", std::move(features)},
                              {"rendered", c.rendered},
                              {"examples", examples_json(c.examples, refs)},
                              {"example_total", c.example_total}});
  }
  return out;
}

json morphology_json(std::span<const MorphSummary> summaries, const Glossary& glossary, const Corpus& corpus,
                     SentenceStore& store) {
  json out = json::array();
  for (const auto& m : summaries) {
    json values = json::array();
    for (const auto& v : m.values) {
      json examples = json::array();
      for (const auto& e : v.examples) {
        const Sentence* s = corpus.find(e.sentence);
        if (!s) throw Error("morphology example refers to unknown sentence '" + e.sentence + "'");
        examples.push_back({{"form", e.form}, {"count", e.count}, {"ref", store.add_treebank(*s)}, {"token", e.token}});
      }
      values.push_back({{"value", v.value},
                        {"phrase", glossary.value_phrase(m.attribute, v.value)},
                        {"count", v.count},
                        {"pos", support_json(v.pos)},
                        {"examples", std::move(examples)}});
    }
    out.push_back({{"attribute", m.attribute}, {"total", m.total}, {"values", std::move(values)}});
  }
  return out;
}

json inventory_json(const SuffixInventory& inv) {
  return {{"upos", inv.upos},
          {"suffixes", support_json(inv.counts)},
          {"min_count", inv.min_count},
          {"tokens", inv.tokens},
          {"suppletive", inv.suppletive}};
}

json subdivision_json(const DivergentPair& pair, const LinearTaskResult& task, const ExampleRef& refs) {
  json candidates = json::array();
  for (const auto& c : pair.candidates) {
    candidates.push_back(
        {{"l2", c.l2}, {"count", c.count}, {"romanization", c.romanization}, {"loanword", c.loanword}});
  }
  return {{"l1", pair.l1},
          {"total", pair.total},
          {"entropy", pair.entropy},
          {"candidates", std::move(candidates)},
          {"task", linear_task_json(task, refs)}};
}

json categories_json(const CategoryIndex& index, const ExampleRef& refs) {
  json out = json::array();
  for (const auto& [name, entries] : index.categories) {
    json list = json::array();
    for (const auto& e : entries) {
      list.push_back({{"l2", e.l2},
                      {"gloss", e.gloss},
                      {"sense", e.sense},
                      {"romanization", e.romanization},
                      {"count", e.count},
                      {"examples", examples_json(e.examples, refs)}});
    }
    out.push_back({{"name", name}, {"entries", std::move(list)}});
  }
  return out;
}

json adjectives_json(std::span<const AdjectiveEntry> entries, const ExampleRef& refs) {
  json out = json::array();
  for (const auto& e : entries) {
    out.push_back({{"l2", e.l2},
                   {"english", e.english},
                   {"romanization", e.romanization},
                   {"count", e.count},
                   {"synonyms", e.synonyms},
                   {"antonyms", e.antonyms},
                   {"examples", examples_json(e.examples, refs)}});
  }
  return out;
}

json empty_aspect(std::string_view key) {
  json notices = json::array();
  if (key == "general_information") return {{"notices", notices}, {"attributes", json::array()}};
  if (key == "vocabulary") {
    return {{"notices", notices}, {"subdivisions", json::array()}, {"categories", json::array()},
            {"adjectives", json::array()}};
  }
  if (key == "word_order" || key == "agreement") return {{"notices", notices}, {"tasks", json::array()}};
  if (key == "suffix_usage") {
    return {{"notices", notices},
            {"segmentation", {{"method", kSegmentationMethod}, {"note", segmentation_note()}}},
            {"inventories", json::array()},
            {"tasks", json::array()}};
  }
  throw Error("unknown aspect '" + std::string(key) + "'");
}

// ---- evaluation -------------------------------------------------------------

std::string format_percent(double percent) { return format_fixed(percent, 2); }

std::string EvaluationRow::cell() const { return format_percent(model_accuracy) + " (" + std::to_string(count) + ")"; }

std::string EvaluationRow::baseline_cell() const { return format_percent(baseline_accuracy); }

json EvaluationRow::to_json() const {
  return {{"concept", aspect},
          {"task", task},
          {"model_kind", model_kind},
          {"model_accuracy", model_accuracy},
          {"count", count},
          {"baseline_accuracy", baseline_accuracy},
          {"test", test},
          {"cell", cell()},
          {"baseline_cell", baseline_cell()}};
}

EvaluationRow EvaluationRow::from_json(const json& j) {
  EvaluationRow r;
  r.aspect = j.at("concept").get<std::string>();
  r.task = j.at("task").get<std::string>();
  r.model_kind = j.at("model_kind").get<std::string>();
  r.model_accuracy = j.at("model_accuracy").get<double>();
  r.count = j.at("count").get<std::size_t>();
  r.baseline_accuracy = j.at("baseline_accuracy").get<double>();
  r.test = j.at("test").get<std::size_t>();
  return r;
}

EvaluationRow evaluation_row(std::string aspect, std::string task, const Evaluation& e, std::size_t count) {
  EvaluationRow r;
  r.aspect = std::move(aspect);
  r.task = std::move(task);
  r.model_kind = e.model_kind;
  r.model_accuracy = 100.0 * e.model_accuracy;
  r.baseline_accuracy = 100.0 * e.baseline_accuracy;
  r.count = count;
  r.test = e.test;
  return r;
}

std::vector<EvaluationRow> build_evaluation_table(std::vector<EvaluationRow> rows) {
  const std::vector<std::string_view> order{"Word Order", "Agreement", "Suffix Usage", "Vocabulary"};
  auto rank = [&](const std::string& aspect) {
    auto it = std::find(order.begin(), order.end(), aspect);
    return static_cast<std::size_t>(it - order.begin());
  };
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const EvaluationRow& r) { return r.aspect == "Vocabulary" && r.task == kVocabularyTotal; }),
             rows.end());
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const EvaluationRow& a, const EvaluationRow& b) { return rank(a.aspect) < rank(b.aspect); });
  EvaluationRow total;
  total.aspect = "Vocabulary";
  total.task = std::string(kVocabularyTotal);
  total.model_kind = "linear";
  for (const auto& r : rows) {
    if (r.aspect != "Vocabulary") continue;
    total.model_accuracy += r.model_accuracy;
    total.baseline_accuracy += r.baseline_accuracy;
    total.test += r.test;
    ++total.count;
  }
  if (total.count > 0) {
    total.model_accuracy /= static_cast<double>(total.count);
    total.baseline_accuracy /= static_cast<double>(total.count);
    auto pos = std::find_if(rows.begin(), rows.end(), [&](const EvaluationRow& r) { return rank(r.aspect) > 3; });
    rows.insert(pos, std::move(total));
  }
  return rows;
}

std::string render_evaluation_table(std::span<const EvaluationRow> rows) {
  std::size_t w1 = 7, w2 = 4, w3 = 5;
  for (const auto& r : rows) {
    w1 = std::max(w1, r.aspect.size());
    w2 = std::max(w2, r.task.size());
    w3 = std::max(w3, r.cell().size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
  std::ostringstream out;
  out << pad("Concept", w1) << "  " << pad("Task", w2) << "  " << pad("Model", w3) << "  Baseline\n";
  for (const auto& r : rows) {
    out << pad(r.aspect, w1) << "  " << pad(r.task, w2) << "  " << pad(r.cell(), w3) << "  " << r.baseline_cell()
        << "\n";
  }
  return out.str();
}

// ---- bundle -----------------------------------------------------------------

json empty_ingestion() { return {{"treebank", nullptr}, {"parallel", nullptr}, {"notices", json::array()}}; }

MaterialsBundle MaterialsBundle::empty(std::string language, std::uint64_t seed, json config) {
  MaterialsBundle b;
  b.language = std::move(language);
  b.seed = seed;
  b.config = std::move(config);
  b.ingestion = empty_ingestion();
  for (auto key : kAspects) b.aspects[std::string(key)] = empty_aspect(key);
  return b;
}

json MaterialsBundle::to_json() const {
  json out = {{"schema_version", 1},
              {"language", {{"name", language}}},
              {"run", {{"seed", seed}, {"config", config}}},
              {"ingestion", ingestion.is_null() ? empty_ingestion() : ingestion},
              {"sentences", sentences.to_json()}};
  for (auto key : kAspects) {
    auto it = aspects.find(std::string(key));
    out[std::string(key)] = it == aspects.end() ? empty_aspect(key) : it->second;
  }
  json rows = json::array();
  for (const auto& r : evaluation) rows.push_back(r.to_json());
  out["evaluation"] = std::move(rows);
  return out;
}

MaterialsBundle MaterialsBundle::from_json(const json& j) {
  MaterialsBundle b;
  b.language = j.at("language").at("name").get<std::string>();
  b.seed = j.at("run").at("seed").get<std::uint64_t>();
  b.config = j.at("run").at("config");
  b.ingestion = j.at("ingestion");
  b.sentences = SentenceStore::from_json(j.at("sentences"));
  for (auto key : kAspects) b.aspects[std::string(key)] = j.at(std::string(key));
  for (const auto& r : j.at("evaluation")) b.evaluation.push_back(EvaluationRow::from_json(r));
  return b;
}

std::vector<std::string> unresolved_refs(const json& bundle) {
  std::vector<std::string> refs;
  for (auto key : kAspects) {
    if (bundle.contains(std::string(key))) collect_refs(bundle.at(std::string(key)), refs);
  }
  const json empty = json::object();
  const json& store = bundle.contains("sentences") ? bundle.at("sentences") : empty;
  std::vector<std::string> out;
  for (const auto& r : refs) {
    if (!store.contains(r)) out.push_back("unresolved example reference '" + r + "'");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> validate_bundle(const json& bundle) {
  auto problems = validate_schema(bundle, bundle_schema());
  auto refs = unresolved_refs(bundle);
  problems.insert(problems.end(), refs.begin(), refs.end());
  return problems;
}

std::string serialize_json(const json& j) { return j.dump(2) + "\n"; }

void emit_json(const MaterialsBundle& bundle, const std::filesystem::path& path) {
  const json j = bundle.to_json();
  const auto problems = validate_bundle(j);
  if (!problems.empty()) {
    std::string msg = "bundle failed validation:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(msg);
  }
  write_file(path, serialize_json(j));
}

}  // namespace gramex
