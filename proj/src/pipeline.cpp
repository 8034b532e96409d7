#include "gramex/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "gramex/site.hpp"
#include "gramex/suffixes.hpp"
#include "gramex/util.hpp"

namespace gramex {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---- config reading -----------------------------------------------------

void check_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw Error("config: " + where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error("config: unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw Error("config: bad value for '" + std::string(key) + "' in " + where + ": " + it->dump());
  }
}

void read_path(const json& j, const char* key, std::optional<fs::path>& out, const fs::path& base,
               const std::string& where) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  if (!it->is_string()) throw Error("config: '" + std::string(key) + "' in " + where + " must be a path string");
  fs::path p = it->get<std::string>();
  out = p.is_absolute() ? p : base / p;
}

std::set<std::string> read_set(const json& j, const char* key, std::set<std::string> fallback,
                               const std::string& where) {
  std::vector<std::string> v(fallback.begin(), fallback.end());
  read(j, key, v, where);
  return {v.begin(), v.end()};
}

Criterion parse_criterion(const std::string& s) {
  if (s == "gini") return Criterion::gini;
  if (s == "entropy") return Criterion::entropy;
  throw Error("config: unknown tree criterion '" + s + "'");
}

ClassWeight parse_weight(const std::string& s) {
  if (s == "balanced") return ClassWeight::balanced;
  if (s == "none") return ClassWeight::none;
  throw Error("config: unknown class weight '" + s + "'");
}

json path_json(const std::optional<fs::path>& p) {
  if (!p) return nullptr;
  return p->filename().string();
}

std::string read_input(const fs::path& p, const std::string& what) {
  if (!fs::exists(p)) throw Error(what + " not found: " + p.string());
  return read_file(p);
}

}  // namespace

// ---- RunConfig ---------------------------------------------------------------

RunConfig::RunConfig() : suffix_pos(default_suffix_pos()) {}

RunConfig RunConfig::from_json(const json& j, const fs::path& base) {
  RunConfig c;
  check_keys(j, "config", {"language", "seed", "jobs", "out", "inputs", "split", "min_instances", "max_examples",
                           "top_k", "features", "tree", "linear", "chi2", "word_order", "agreement",
                           "suffix_usage", "vocabulary", "general_information"});
  read(j, "language", c.language, "config");
  if (auto it = j.find("seed"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
      throw Error("config: seed must be a non-negative integer");
    }
    c.seed = it->get<std::uint64_t>();
  }
  read(j, "jobs", c.jobs, "config");
  if (auto it = j.find("out"); it != j.end()) {
    fs::path p = it->get<std::string>();
    c.out = p.is_absolute() ? p : base / p;
  }

  if (auto it = j.find("inputs"); it != j.end()) {
    const json& in = *it;
    check_keys(in, "inputs", {"treebank", "transliterations", "parallel", "taxonomy", "sense_annotations", "glossary"});
    read_path(in, "treebank", c.inputs.treebank, base, "inputs");
    read_path(in, "transliterations", c.inputs.transliterations, base, "inputs");
    read_path(in, "sense_annotations", c.inputs.sense_annotations, base, "inputs");
    read_path(in, "glossary", c.inputs.glossary, base, "inputs");
    if (auto p = in.find("parallel"); p != in.end()) {
      check_keys(*p, "inputs.parallel", {"source", "target", "format", "alignments", "transliterations"});
      read_path(*p, "source", c.inputs.parallel_source, base, "inputs.parallel");
      read_path(*p, "target", c.inputs.parallel_target, base, "inputs.parallel");
      read_path(*p, "alignments", c.inputs.alignments, base, "inputs.parallel");
      read_path(*p, "transliterations", c.inputs.parallel_transliterations, base, "inputs.parallel");
      read(*p, "format", c.inputs.parallel_format, "inputs.parallel");
    }
    if (auto t = in.find("taxonomy"); t != in.end()) {
      check_keys(*t, "inputs.taxonomy", {"hypernyms", "senses", "antonyms"});
      read_path(*t, "hypernyms", c.inputs.hypernyms, base, "inputs.taxonomy");
      read_path(*t, "senses", c.inputs.senses, base, "inputs.taxonomy");
      read_path(*t, "antonyms", c.inputs.antonyms, base, "inputs.taxonomy");
    }
  }

  TaskSettings& s = c.settings;
  if (auto it = j.find("split"); it != j.end()) {
    std::vector<double> v;
    read(j, "split", v, "config");
    if (v.size() != 3) throw Error("config: split must list three ratios (train, dev, test)");
    s.split = {v[0], v[1], v[2]};
  }
  read(j, "min_instances", s.min_instances, "config");
  read(j, "max_examples", s.max_examples, "config");
  read(j, "top_k", s.top_k, "config");

  if (auto it = j.find("features"); it != j.end()) {
    check_keys(*it, "features", {"lemmas", "max_lemmas", "neighbor_pos", "codependents", "sentence_flags"});
    read(*it, "lemmas", s.features.use_lemmas, "features");
    read(*it, "max_lemmas", s.features.max_lemmas, "features");
    read(*it, "neighbor_pos", s.features.use_neighbor_pos, "features");
    read(*it, "codependents", s.features.use_codependents, "features");
    read(*it, "sentence_flags", s.features.use_sentence_flags, "features");
  }
  if (auto it = j.find("tree"); it != j.end()) {
    check_keys(*it, "tree", {"criteria", "min_depth", "max_depth", "depth_cap", "row_subsample", "feature_subsample",
                             "min_leaf", "learning_rate", "n_estimators", "objective"});
    if (it->contains("criteria")) {
      std::vector<std::string> names;
      read(*it, "criteria", names, "tree");
      s.tree.criteria.clear();
      for (const auto& n : names) s.tree.criteria.push_back(parse_criterion(n));
    }
    read(*it, "min_depth", s.tree.min_grid_depth, "tree");
    read(*it, "max_depth", s.tree.max_grid_depth, "tree");
    read(*it, "depth_cap", s.tree.depth_cap, "tree");
    read(*it, "row_subsample", s.tree.row_subsample, "tree");
    read(*it, "feature_subsample", s.tree.feature_subsample, "tree");
    read(*it, "min_leaf", s.tree.min_leaf, "tree");
    read(*it, "learning_rate", s.tree.learning_rate, "tree");
    read(*it, "n_estimators", s.tree.n_estimators, "tree");
    read(*it, "objective", s.tree.objective, "tree");
  }
  if (auto it = j.find("linear"); it != j.end()) {
    check_keys(*it, "linear", {"c", "class_weight", "epochs"});
    read(*it, "c", s.linear.c_grid, "linear");
    if (it->contains("class_weight")) {
      std::vector<std::string> names;
      read(*it, "class_weight", names, "linear");
      s.linear.weight_grid.clear();
      for (const auto& n : names) s.linear.weight_grid.push_back(parse_weight(n));
    }
    read(*it, "epochs", s.linear.epochs, "linear");
  }
  if (auto it = j.find("chi2"); it != j.end()) {
    check_keys(*it, "chi2", {"alpha", "min_leaf_support"});
    read(*it, "alpha", s.chi2.alpha, "chi2");
    read(*it, "min_leaf_support", s.chi2.min_leaf_support, "chi2");
  }

  if (auto it = j.find("word_order"); it != j.end()) {
    check_keys(*it, "word_order", {"tasks"});
    if (it->contains("tasks")) {
      c.word_order.clear();
      for (const auto& t : it->at("tasks")) {
        check_keys(t, "word_order.tasks", {"name", "deprels", "head_upos", "dep_upos", "dep_role", "head_role"});
        OrderTask o;
        read(t, "name", o.name, "word_order.tasks");
        o.deprels = read_set(t, "deprels", {}, "word_order.tasks");
        o.head_upos = read_set(t, "head_upos", {}, "word_order.tasks");
        o.dep_upos = read_set(t, "dep_upos", {}, "word_order.tasks");
        o.dep_role = "dependent";
        o.head_role = "head";
        read(t, "dep_role", o.dep_role, "word_order.tasks");
        read(t, "head_role", o.head_role, "word_order.tasks");
        c.word_order.push_back(std::move(o));
      }
    }
  }
  if (auto it = j.find("agreement"); it != j.end()) {
    check_keys(*it, "agreement", {"tasks"});
    if (it->contains("tasks")) {
      c.agreement.clear();
      for (const auto& t : it->at("tasks")) {
        check_keys(t, "agreement.tasks", {"attribute", "deprels"});
        AgreementTask a;
        read(t, "attribute", a.attribute, "agreement.tasks");
        a.deprels = read_set(t, "deprels", a.deprels, "agreement.tasks");
        c.agreement.push_back(std::move(a));
      }
    }
  }
  if (auto it = j.find("suffix_usage"); it != j.end()) {
    check_keys(*it, "suffix_usage", {"pos", "min_count"});
    read(*it, "pos", c.suffix_pos, "suffix_usage");
    read(*it, "min_count", c.suffix_min_count, "suffix_usage");
  }
  if (auto it = j.find("vocabulary"); it != j.end()) {
    check_keys(*it, "vocabulary", {"min_count", "min_total", "min_entropy", "excluded_pos", "categories",
                                   "adjective_min_count", "max_adjectives"});
    read(*it, "min_count", c.vocabulary_filter.min_count, "vocabulary");
    read(*it, "min_total", c.vocabulary_filter.min_total, "vocabulary");
    read(*it, "min_entropy", c.vocabulary_filter.min_entropy, "vocabulary");
    c.vocabulary_filter.excluded_pos = read_set(*it, "excluded_pos", c.vocabulary_filter.excluded_pos, "vocabulary");
    read(*it, "adjective_min_count", c.adjective_min_count, "vocabulary");
    read(*it, "max_adjectives", c.max_adjectives, "vocabulary");
    if (it->contains("categories")) {
      c.categories.clear();
      for (const auto& cat : it->at("categories")) {
        check_keys(cat, "vocabulary.categories", {"name", "senses", "verbs"});
        CategorySeed seed;
        read(cat, "name", seed.name, "vocabulary.categories");
        read(cat, "senses", seed.senses, "vocabulary.categories");
        read(cat, "verbs", seed.verbs, "vocabulary.categories");
        c.categories.push_back(std::move(seed));
      }
    }
  }
  if (auto it = j.find("general_information"); it != j.end()) {
    check_keys(*it, "general_information", {"max_examples", "min_attribute_count"});
    read(*it, "max_examples", c.general_information.max_examples, "general_information");
    read(*it, "min_attribute_count", c.general_information.min_attribute_count, "general_information");
  }
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  const std::string text = read_input(path, "config file");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error("config: " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

void RunConfig::validate() const {
  if (!seed) throw Error("config: a seed is required (set \"seed\" in the config or pass --seed)");
  if (jobs == 0) throw Error("config: jobs must be >= 1");
  double sum = 0.0;
  for (double r : settings.split) {
    if (r < 0.0) throw Error("config: split ratios must be non-negative");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("config: split ratios must sum to 1");
  if (settings.split[0] <= 0.0) throw Error("config: the training ratio must be positive");
  settings.tree.validate();
  settings.linear.validate();
  settings.chi2.validate();
  vocabulary_filter.validate();
  for (const auto& t : word_order) t.validate();
  for (const auto& t : agreement) t.validate();
  if (inputs.parallel_format != "conllu" && inputs.parallel_format != "text") {
    throw Error("config: inputs.parallel.format must be \"conllu\" or \"text\"");
  }
  if (inputs.parallel_source.has_value() != inputs.parallel_target.has_value()) {
    throw Error("config: inputs.parallel needs both source and target");
  }
}

json RunConfig::to_json() const {
  const TaskSettings& s = settings;
  json criteria = json::array();
  for (auto cr : s.tree.criteria) criteria.push_back(criterion_name(cr));
  json weights = json::array();
  for (auto w : s.linear.weight_grid) weights.push_back(class_weight_name(w));
  json order = json::array();
  for (const auto& t : word_order) {
    order.push_back({{"name", t.name}, {"deprels", t.deprels}, {"head_upos", t.head_upos}, {"dep_upos", t.dep_upos},
                     {"dep_role", t.dep_role}, {"head_role", t.head_role}});
  }
  json agree = json::array();
  for (const auto& t : agreement) agree.push_back({{"attribute", t.attribute}, {"deprels", t.deprels}});
  json cats = json::array();
  for (const auto& cat : categories) cats.push_back({{"name", cat.name}, {"senses", cat.senses}, {"verbs", cat.verbs}});
  return {
      {"language", language},
      {"seed", seed_value()},
      {"inputs",
       {{"treebank", path_json(inputs.treebank)},
        {"transliterations", path_json(inputs.transliterations)},
        {"parallel",
         {{"source", path_json(inputs.parallel_source)},
          {"target", path_json(inputs.parallel_target)},
          {"format", inputs.parallel_format},
          {"alignments", path_json(inputs.alignments)},
          {"transliterations", path_json(inputs.parallel_transliterations)}}},
        {"taxonomy",
         {{"hypernyms", path_json(inputs.hypernyms)},
          {"senses", path_json(inputs.senses)},
          {"antonyms", path_json(inputs.antonyms)}}},
        {"sense_annotations", path_json(inputs.sense_annotations)},
        {"glossary", path_json(inputs.glossary)}}},
      {"split", s.split},
      {"min_instances", s.min_instances},
      {"max_examples", s.max_examples},
      {"top_k", s.top_k},
      {"features",
       {{"lemmas", s.features.use_lemmas},
        {"max_lemmas", s.features.max_lemmas},
        {"neighbor_pos", s.features.use_neighbor_pos},
        {"codependents", s.features.use_codependents},
        {"sentence_flags", s.features.use_sentence_flags}}},
      {"tree",
       {{"criteria", criteria},
        {"min_depth", s.tree.min_grid_depth},
        {"max_depth", s.tree.max_grid_depth},
        {"depth_cap", s.tree.depth_cap},
        {"row_subsample", s.tree.row_subsample},
        {"feature_subsample", s.tree.feature_subsample},
        {"min_leaf", s.tree.min_leaf},
        {"learning_rate", s.tree.learning_rate},
        {"n_estimators", s.tree.n_estimators},
        {"objective", s.tree.objective}}},
      {"linear", {{"c", s.linear.c_grid}, {"class_weight", weights}, {"epochs", s.linear.epochs}}},
      {"chi2", {{"alpha", s.chi2.alpha}, {"min_leaf_support", s.chi2.min_leaf_support}}},
      {"word_order", {{"tasks", order}}},
      {"agreement", {{"tasks", agree}}},
      {"suffix_usage", {{"pos", suffix_pos}, {"min_count", suffix_min_count}}},
      {"vocabulary",
       {{"min_count", vocabulary_filter.min_count},
        {"min_total", vocabulary_filter.min_total},
        {"min_entropy", vocabulary_filter.min_entropy},
        {"excluded_pos", vocabulary_filter.excluded_pos},
        {"categories", cats},
        {"adjective_min_count", adjective_min_count},
        {"max_adjectives", max_adjectives}}},
      {"general_information",
       {{"max_examples", general_information.max_examples},
        {"min_attribute_count", general_information.min_attribute_count}}},
  };
}

// ---- inputs -------------------------------------------------------------------

Inputs load_inputs(const RunConfig& c) {
  Inputs in;
  in.glossary = Glossary::defaults();
  if (c.inputs.glossary) {
    in.glossary.merge(Glossary::parse(read_input(*c.inputs.glossary, "glossary"), c.inputs.glossary->string()));
  }

  if (c.inputs.treebank) {
    Corpus corpus = parse_conllu(read_input(*c.inputs.treebank, "treebank"), c.inputs.treebank->string());
    corpus.language = c.language;
    if (c.inputs.transliterations) {
      const auto map = parse_transliterations(read_input(*c.inputs.transliterations, "transliterations"),
                                              c.inputs.transliterations->string());
      in.transliterated_tokens = apply_transliterations(corpus, map);
    }
    in.treebank = std::move(corpus);
  } else {
    in.notices.push_back(
        "No treebank configured: General Information, Word Order, Suffix Usage and Agreement are skipped.");
  }

  if (c.inputs.parallel_source && c.inputs.parallel_target) {
    auto load_side = [&](const fs::path& p, const std::string& what, const std::string& prefix) {
      const std::string text = read_input(p, what);
      return c.inputs.parallel_format == "text" ? parse_plain_text(text, prefix) : parse_conllu(text, p.string());
    };
    Corpus source = load_side(*c.inputs.parallel_source, "parallel source", "en");
    Corpus target = load_side(*c.inputs.parallel_target, "parallel target", "l2");
    if (c.inputs.parallel_transliterations) {
      const auto map = parse_transliterations(read_input(*c.inputs.parallel_transliterations, "transliterations"),
                                              c.inputs.parallel_transliterations->string());
      apply_transliterations(target, map);
    }
    in.pairs = make_pairs(source, target);
    if (c.inputs.alignments) {
      parse_alignments(read_input(*c.inputs.alignments, "alignments"), in.pairs, c.inputs.alignments->string());
      in.aligned = true;
    } else {
      in.notices.push_back("No alignments configured: Vocabulary is skipped.");
    }
  } else {
    in.notices.push_back("No parallel corpus configured: Vocabulary is skipped.");
  }

  if (c.inputs.hypernyms || c.inputs.senses || c.inputs.antonyms) {
    auto opt = [&](const std::optional<fs::path>& p, const std::string& what) {
      return p ? read_input(*p, what) : std::string();
    };
    in.taxonomy = parse_taxonomy(opt(c.inputs.hypernyms, "hypernyms"), opt(c.inputs.senses, "senses"),
                                 opt(c.inputs.antonyms, "antonyms"));
  } else if (!in.pairs.empty()) {
    in.notices.push_back("No taxonomy configured: categories are empty and adjectives carry no synonyms or antonyms.");
  }

  if (c.inputs.sense_annotations) {
    in.senses = parse_senses(read_input(*c.inputs.sense_annotations, "sense annotations"), in.taxonomy,
                             c.inputs.sense_annotations->filename().string());
    for (const auto& w : in.senses->warnings) in.notices.push_back(w);
  } else if (!in.pairs.empty()) {
    in.notices.push_back("No sense annotations configured: the category index is empty.");
  }
  return in;
}

json ingestion_json(const Inputs& in) {
  json out = empty_ingestion();
  if (in.treebank) {
    const auto& st = in.treebank->stats;
    out["treebank"] = {{"sentences", st.sentences},
                       {"tokens", st.tokens},
                       {"multiword_ranges_skipped", st.multiword_ranges_skipped},
                       {"empty_nodes_skipped", st.empty_nodes_skipped},
                       {"transliterated_tokens", in.transliterated_tokens}};
  }
  if (!in.pairs.empty()) {
    std::size_t links = 0;
    for (const auto& p : in.pairs) links += p.alignment.size();
    out["parallel"] = {{"pairs", in.pairs.size()},
                       {"links", links},
                       {"sense_annotations", in.senses ? in.senses->senses.size() : 0}};
  }
  out["notices"] = in.notices;
  return out;
}

// ---- mining -----------------------------------------------------------------

json AspectResult::to_json() const {
  json rows = json::array();
  for (const auto& r : evaluation) rows.push_back(r.to_json());
  return {{"aspect", aspect}, {"section", section}, {"sentences", sentences.to_json()}, {"evaluation", rows}};
}

AspectResult AspectResult::from_json(const json& j) {
  AspectResult r;
  r.aspect = j.at("aspect").get<std::string>();
  r.section = j.at("section");
  r.sentences = SentenceStore::from_json(j.at("sentences"));
  for (const auto& row : j.at("evaluation")) r.evaluation.push_back(EvaluationRow::from_json(row));
  return r;
}

namespace {

TaskSettings task_settings(const RunConfig& c) {
  TaskSettings s = c.settings;
  s.seed = c.seed_value();
  s.jobs = 1;  // parallelism is over tasks
  return s;
}

void mine_tree_aspect(AspectResult& res, const RunConfig& c, const Inputs& in, bool order) {
  const Corpus& corpus = *in.treebank;
  const TaskSettings s = task_settings(c);
  const auto lemmas = LemmaVocabulary::build(corpus, s.features.max_lemmas);
  const std::size_t n = order ? c.word_order.size() : c.agreement.size();
  std::vector<TreeTaskResult> results(n);
  parallel_for(n, c.jobs, [&](std::size_t i) {
    results[i] = order ? run_order_task(corpus, c.word_order[i], s, in.glossary, lemmas)
                       : run_agreement_task(corpus, c.agreement[i], s, in.glossary, lemmas);
  });
  const auto refs = treebank_refs(corpus, res.sentences);
  const std::string title(aspect_title(res.aspect));
  for (const auto& r : results) {
    res.section["tasks"].push_back(tree_task_json(r, refs));
    if (r.completed) res.evaluation.push_back(evaluation_row(title, r.name, r.evaluation, r.rules.rule_count()));
  }
}

void mine_suffixes(AspectResult& res, const RunConfig& c, const Inputs& in) {
  const Corpus& corpus = *in.treebank;
  const TaskSettings s = task_settings(c);
  const auto lemmas = LemmaVocabulary::build(corpus, s.features.max_lemmas);
  std::vector<SuffixInventory> inventories;
  for (const auto& upos : c.suffix_pos) {
    auto inv = build_inventory(corpus, upos, c.suffix_min_count);
    if (inv.tokens > 0) inventories.push_back(std::move(inv));
  }
  std::vector<LinearTaskResult> results(inventories.size());
  parallel_for(inventories.size(), c.jobs, [&](std::size_t i) {
    results[i] = run_suffix_task(corpus, inventories[i], s, in.glossary, lemmas);
  });
  const auto refs = treebank_refs(corpus, res.sentences);
  for (std::size_t i = 0; i < inventories.size(); ++i) {
    res.section["inventories"].push_back(inventory_json(inventories[i]));
    res.section["tasks"].push_back(linear_task_json(results[i], refs));
    if (results[i].completed) {
      res.evaluation.push_back(
          evaluation_row("Suffix Usage", results[i].name, results[i].evaluation, results[i].rule_count()));
    }
  }
}

void mine_vocabulary(AspectResult& res, const RunConfig& c, const Inputs& in) {
  const TaskSettings s = task_settings(c);
  const auto refs = parallel_refs(in.pairs, res.sentences);
  const auto table = aggregate_translations(in.pairs);
  const auto divergent = filter_divergent_pairs(table, c.vocabulary_filter, in.pairs);
  LexicalResources resources;
  resources.senses = in.senses ? &*in.senses : nullptr;
  resources.taxonomy = &in.taxonomy;
  std::vector<LinearTaskResult> results(divergent.size());
  parallel_for(divergent.size(), c.jobs, [&](std::size_t i) {
    results[i] = fit_lexical_selection(divergent[i], table, in.pairs, resources, s, in.glossary);
  });
  for (std::size_t i = 0; i < divergent.size(); ++i) {
    res.section["subdivisions"].push_back(subdivision_json(divergent[i], results[i], refs));
    if (results[i].completed) {
      res.evaluation.push_back(
          evaluation_row("Vocabulary", results[i].name, results[i].evaluation, results[i].rule_count()));
    }
  }
  const auto index = build_category_index(in.pairs, resources.senses, in.taxonomy, c.categories, s.max_examples);
  for (const auto& w : index.warnings) res.section["notices"].push_back(w);
  res.section["categories"] = categories_json(index, refs);
  const auto adjectives = build_adjective_entries(in.pairs, in.taxonomy, resources.senses, c.adjective_min_count,
                                                  c.max_adjectives, s.max_examples);
  res.section["adjectives"] = adjectives_json(adjectives, refs);
}

}  // namespace

AspectResult mine_aspect(const RunConfig& c, const Inputs& in, const std::string& aspect) {
  AspectResult res;
  res.aspect = aspect;
  res.section = empty_aspect(aspect);
  if (aspect == "vocabulary") {
    if (in.pairs.empty() || !in.aligned) {
      res.section["notices"].push_back("Skipped: vocabulary needs a parallel corpus with alignments.");
      return res;
    }
    mine_vocabulary(res, c, in);
    return res;
  }
  if (!in.treebank) {
    res.section["notices"].push_back("Skipped: no treebank configured.");
    return res;
  }
  if (aspect == "general_information") {
    const auto summaries = summarize_morphology(*in.treebank, c.general_information);
    res.section["attributes"] = morphology_json(summaries, in.glossary, *in.treebank, res.sentences);
  } else if (aspect == "word_order") {
    mine_tree_aspect(res, c, in, true);
  } else if (aspect == "agreement") {
    mine_tree_aspect(res, c, in, false);
  } else if (aspect == "suffix_usage") {
    mine_suffixes(res, c, in);
  } else {
    throw Error("unknown aspect '" + aspect + "'");
  }
  return res;
}

MaterialsBundle assemble_bundle(const RunConfig& c, const json& ingestion, const std::vector<AspectResult>& aspects) {
  MaterialsBundle b = MaterialsBundle::empty(c.language, c.seed_value(), c.to_json());
  b.ingestion = ingestion;
  std::vector<EvaluationRow> rows;
  for (const auto& a : aspects) {
    if (!b.aspects.count(a.aspect)) throw Error("unknown aspect '" + a.aspect + "'");
    b.aspects[a.aspect] = a.section;
    b.sentences.merge(a.sentences);
    rows.insert(rows.end(), a.evaluation.begin(), a.evaluation.end());
  }
  b.evaluation = build_evaluation_table(std::move(rows));
  return b;
}

// ---- stages -------------------------------------------------------------------

namespace {

json read_json(const fs::path& p, const std::string& hint) {
  if (!fs::exists(p)) throw Error("missing " + p.string() + ": " + hint);
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw Error(p.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace

json cmd_ingest(const RunConfig& c) {
  c.validate();
  const Inputs in = load_inputs(c);
  json out = ingestion_json(in);
  write_file(c.work_dir() / "ingest.json", serialize_json(out));
  return out;
}

AspectResult cmd_mine(const RunConfig& c, const std::string& aspect) {
  c.validate();
  auto key = canonical_aspect(aspect);
  if (!key) throw Error("unknown aspect '" + aspect + "'");
  const Inputs in = load_inputs(c);
  AspectResult res = mine_aspect(c, in, *key);
  write_file(c.work_dir() / (*key + ".json"), serialize_json(res.to_json()));
  return res;
}

std::vector<EvaluationRow> cmd_evaluate(const RunConfig& c) {
  c.validate();
  const json ingestion = read_json(c.work_dir() / "ingest.json", "run `ingest` first");
  std::vector<AspectResult> aspects;
  for (auto key : kAspects) {
    const fs::path p = c.work_dir() / (std::string(key) + ".json");
    if (fs::exists(p)) {
      aspects.push_back(AspectResult::from_json(read_json(p, "")));
    } else {
      AspectResult empty;
      empty.aspect = std::string(key);
      empty.section = empty_aspect(key);
      empty.section["notices"].push_back("Not mined: run `mine " + std::string(key) + "`.");
      aspects.push_back(std::move(empty));
    }
  }
  MaterialsBundle bundle = assemble_bundle(c, ingestion, aspects);
  emit_json(bundle, c.bundle_path());
  write_file(c.out / "evaluation.txt", render_evaluation_table(bundle.evaluation));
  return bundle.evaluation;
}

std::vector<std::string> cmd_render(const RunConfig& c) {
  const json bundle = read_json(c.bundle_path(), "run `evaluate` first");
  const auto problems = validate_bundle(bundle);
  if (!problems.empty()) {
    std::string msg = c.bundle_path().string() + " failed validation:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(msg);
  }
  if (fs::exists(c.site_dir())) {
    // only replace a directory this tool wrote
    if (!fs::exists(c.site_dir() / "index.html") && !fs::is_empty(c.site_dir())) {
      throw Error(c.site_dir().string() + " exists and does not look like a generated site; refusing to overwrite");
    }
    fs::remove_all(c.site_dir());
  }
  return emit_site(bundle, c.site_dir());
}

void cmd_all(const RunConfig& c) {
  cmd_ingest(c);
  for (auto key : kAspects) cmd_mine(c, std::string(key));
  cmd_evaluate(c);
  cmd_render(c);
}

}  // namespace gramex
