// Acceptance checks: one PASS/FAIL/SKIP line per criterion. Exit status is
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "gramex/glossary.hpp"
#include "gramex/pipeline.hpp"
#include "gramex/reporting.hpp"
#include "gramex/suffixes.hpp"
#include "gramex/util.hpp"
#include "gramex/vocabulary.hpp"
#include "oracles.hpp"

using namespace gramex;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kAccuracyExact = 0.0;        // criterion 1: 100% +- 0
constexpr double kBaselineShareTol = 0.01;    // criterion 1: majority share +- 1%
constexpr double kRuntimeLimitSeconds = 10.0; // criterion 1
constexpr double kPearsonTol = 1e-9;          // criterion 2
constexpr double kAlpha = 0.05;               // criteria 2, 6
constexpr double kXorBaselineTol = 0.05;      // criterion 3
constexpr double kLexselMinAccuracy = 0.95;   // criterion 5
constexpr double kLexselBaseline = 0.60;      // criterion 5
constexpr double kLexselBaselineTol = 0.05;   // criterion 5
constexpr std::size_t kMinRelationPairs = 200;  // criterion 6
constexpr std::size_t kSmokeMinSentences = 1000;  // criterion 8

struct Outcome {
  enum { pass, fail, skip } status = fail;
  std::string detail;
};

Outcome pass(std::string d) { return {Outcome::pass, std::move(d)}; }
Outcome fail(std::string d) { return {Outcome::fail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::skip, std::move(d)}; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gramex-acceptance-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

const json* find_task(const json& section, const std::string& name) {
  for (const auto& t : section.at("tasks")) {
    if (t.at("name") == name) return &t;
  }
  return nullptr;
}

// 1. Planted word-order rule, through the pipeline.
Outcome planted_word_order() {
  const auto dir = scratch("c1");
  const std::string conllu = fixtures::planted_word_order_conllu(2000, 1);
  write_file(dir / "tb.conllu", conllu);
  write_file(dir / "config.json", R"({"seed": 1, "inputs": {"treebank": "tb.conllu"}})");
  RunConfig config = RunConfig::load(dir / "config.json");
  config.out = dir / "out";

  const auto t0 = std::chrono::steady_clock::now();
  cmd_all(config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  // Majority share from the corpus itself.
  const Corpus corpus = parse_conllu(conllu);
  std::size_t before = 0, total = 0;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      if (t.deprel != "obj" || t.upos == "PUNCT") continue;
      ++total;
      before += t.index < t.head;
    }
  }
  const double share = static_cast<double>(before) / total;

  const json bundle = json::parse(read_file(config.bundle_path()));
  const json* task = find_task(bundle.at("word_order"), "object-verb");
  if (!task || !task->at("completed")) return fail("object-verb task missing or incomplete");
  bool rule = false;
  for (const auto& r : task->at("rules")) {
    const auto& c = r.at("conditions");
    if (c.size() == 1 && c[0].at("feature") == "dep:PronType=Int" && c[0].at("present") == true &&
        r.at("label") == "after" && r.at("verdict") == "significant") {
      rule = true;
    }
  }
  const auto& def = task->at("default_rule");
  const bool default_before = def.at("label") == "before" && def.at("verdict") == "default";
  const double acc = task->at("evaluation").at("model_accuracy");
  const double base = task->at("evaluation").at("baseline_accuracy");
  const bool acc_ok = std::abs(acc - 1.0) <= kAccuracyExact;
  const bool base_ok = std::abs(base - share) <= kBaselineShareTol;
  const bool fast = seconds < kRuntimeLimitSeconds;
  const std::string d = "rule=" + std::string(rule ? "yes" : "no") + " default_before=" +
                        (default_before ? "yes" : "no") + " accuracy=" + fmt(acc) + " baseline=" + fmt(base) +
                        " majority_share=" + fmt(share) + " runtime=" + fmt(seconds) + "s";
  fs::remove_all(dir);
  return rule && default_before && acc_ok && base_ok && fast ? pass(d) : fail(d);
}

// 2. Chi-squared against independent oracles.
Outcome chi2_oracle() {
  const std::vector<double> uniform{0.5, 0.5};
  const Chi2Config cfg{kAlpha, 1};
  const auto a = chi2_relabel(std::vector<double>{30, 10}, uniform, cfg);
  const auto b = chi2_relabel(std::vector<double>{20, 20}, uniform, cfg);
  if (!(a.statistic == 10.0 && a.df == 1 && a.verdict == Verdict::significant)) return fail("hand case [30,10]");
  if (!(b.statistic == 0.0 && b.verdict == Verdict::inconclusive)) return fail("hand case [20,20]");

  Rng rng(20240517);
  double worst = 0;
  std::size_t verdict_mismatch = 0, significant = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 2 + rng.below(4);
    const std::size_t n = 1 + rng.below(200);
    std::vector<double> probs(k);
    double z = 0;
    for (auto& p : probs) z += (p = 0.05 + rng.uniform());
    for (auto& p : probs) p /= z;
    std::vector<double> obs(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) obs[rng.below(k)] += 1;
    const auto r = chi2_relabel(obs, probs, cfg);
    worst = std::max(worst, std::abs(r.statistic - oracles::pearson(obs, probs)));
    const double p = oracles::chi2_p(oracles::pearson(obs, probs), static_cast<double>(k - 1));
    const std::size_t dom = static_cast<std::size_t>(std::max_element(obs.begin(), obs.end()) - obs.begin());
    const bool expect = p < kAlpha && obs[dom] > probs[dom] * static_cast<double>(n);
    significant += expect;
    verdict_mismatch += (r.verdict == Verdict::significant) != expect;
  }
  const std::string d = "max |stat - oracle|=" + fmt(worst) + " verdict mismatches=" +
                        std::to_string(verdict_mismatch) + "/50 (" + std::to_string(significant) + " significant)";
  return worst <= kPearsonTol && verdict_mismatch == 0 ? pass(d) : fail(d);
}

// 3. XOR and single-class fixtures.
Outcome tree_vs_baseline() {
  TaskSettings s;
  s.seed = 3;
  const auto x = run_tree_task("xor", fixtures::xor_instances(400), s, {}, Glossary::defaults(), {});
  const auto one = run_tree_task("single", fixtures::single_class_instances(200), s, {}, Glossary::defaults(), {});
  if (!x.completed || !one.completed) return fail("task incomplete: " + x.note + one.note);
  const auto& e = x.evaluation;
  const auto& o = one.evaluation;
  const std::string d = "xor tree=" + fmt(e.model_accuracy) + " baseline=" + fmt(e.baseline_accuracy) +
                        "; single-class tree=" + fmt(o.model_accuracy) + " baseline=" + fmt(o.baseline_accuracy);
  const bool ok = e.model_accuracy == 1.0 && std::abs(e.baseline_accuracy - 0.5) <= kXorBaselineTol &&
                  o.model_accuracy == 1.0 && o.baseline_accuracy == 1.0;
  return ok ? pass(d) : fail(d);
}

// 4. Suffix decomposition properties.
Outcome suffix_properties(const json* bundle) {
  static const std::vector<std::string> alphabet{"a", "d", "e", "h", "l", "s", "द", "े", "श", "ा", "ल", "ग", "ी"};
  Rng rng(4);
  auto word = [&] {
    std::string w;
    const std::size_t len = 1 + rng.below(8);
    for (std::size_t i = 0; i < len; ++i) w += alphabet[rng.below(alphabet.size())];
    return w;
  };
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    std::string lemma = word();
    // half the pairs share a prefix by construction
    std::string form = rng.below(2) ? lemma + word() : word();
    form = nfc(form);
    lemma = nfc(lemma);
    const auto d = decompose(form, lemma);
    const std::string lcp = oracles::utf8_lcp(form, lemma);
    if (d.stem + d.suffix != form) ++bad;
    if (d.stem != lcp) ++bad;
    if (d.suppletive != lcp.empty()) ++bad;
  }
  const auto desh = decompose("deshaala", "desh");
  const bool desh_ok = desh.stem == "desh" && desh.suffix == "aala";
  bool noted = segmentation_note().find("desh + laa") != std::string_view::npos;
  if (bundle) {
    const auto& seg = bundle->at("suffix_usage").at("segmentation");
    noted = noted && seg.at("method") == "lcp" &&
            seg.at("note").get<std::string>().find("desh + laa") != std::string::npos;
  }
  const std::string d = "property violations=" + std::to_string(bad) + "/1000; deshaala -> " + desh.stem + " + " +
                        desh.suffix + "; sandhi note in bundle=" + (noted ? "yes" : "no");
  return bad == 0 && desh_ok && noted ? pass(d) : fail(d);
}

// 5. Lexical selection on the rice fixture.
Outcome lexical_selection() {
  const auto f = fixtures::planted_lexsel(250, 5);
  const auto tax = parse_taxonomy(f.hypernyms, f.senses, f.antonyms);
  const auto senses = parse_senses(f.sense_annotations, tax);
  const auto table = aggregate_translations(f.pairs);
  const auto kept = filter_divergent_pairs(table, {}, f.pairs);
  const auto rice = std::find_if(kept.begin(), kept.end(), [](const DivergentPair& p) { return p.l1 == "rice"; });
  if (rice == kept.end()) return fail("filtration dropped 'rice'");
  TaskSettings s;
  s.seed = 5;
  const auto r = fit_lexical_selection(*rice, table, f.pairs, {&senses, &tax}, s, Glossary::defaults());
  if (!r.completed) return fail("lexical selection incomplete: " + r.note);
  bool raw_feature = false;
  std::string which;
  for (const auto& c : r.rules) {
    if (c.label != "तांदूळ") continue;
    for (std::size_t i = 0; i < c.features.size() && i < 20; ++i) {
      const auto& name = c.features[i].feature;
      if (name.ends_with("=raw") || name.ends_with("=raw.a.01") || name.ends_with("=कच्चा")) {
        raw_feature = true;
        if (which.empty()) which = name;
      }
    }
  }
  const auto& e = r.evaluation;
  const std::string d = "kept=" + std::to_string(kept.size()) + " accuracy=" + fmt(e.model_accuracy) +
                        " baseline=" + fmt(e.baseline_accuracy) + " raw feature for tandul=" +
                        (raw_feature ? which : "none");
  const bool ok = e.model_accuracy >= kLexselMinAccuracy &&
                  std::abs(e.baseline_accuracy - kLexselBaseline) <= kLexselBaselineTol && raw_feature;
  return ok ? pass(d) : fail(d);
}

// 6. Agreement relabeling.
Outcome agreement() {
  const Corpus c = fixtures::planted_agreement(400);
  TaskSettings s;
  s.seed = 6;
  s.chi2.alpha = kAlpha;
  const auto r = run_agreement_task(c, AgreementTask{"Gender", {"amod", "obj"}}, s, Glossary::defaults(),
                                    LemmaVocabulary::build(c, s.features.max_lemmas));
  if (!r.completed) return fail("agreement task incomplete: " + r.note);
  std::size_t amod_pairs = 0, obj_pairs = 0;
  for (const auto& x : r.instances) (x.has("deprel=amod") ? amod_pairs : obj_pairs) += 1;
  std::string amod_verdict = "none", obj_verdict = "none";
  for (const auto& cand : r.rules.candidates) {
    std::size_t amod = 0, obj = 0;
    for (const auto& x : r.instances) {
      if (satisfies(x, cand.conditions)) (x.has("deprel=amod") ? amod : obj) += 1;
    }
    if (amod > 0 && obj == 0) amod_verdict = std::string(verdict_name(cand.verdict)) + "/" + cand.label;
    if (obj > 0 && amod == 0) obj_verdict = std::string(verdict_name(cand.verdict)) + "/" + cand.label;
  }
  const std::string d = "pairs amod=" + std::to_string(amod_pairs) + " obj=" + std::to_string(obj_pairs) +
                        "; amod leaf " + amod_verdict + ", obj leaf " + obj_verdict;
  const bool ok = amod_pairs >= kMinRelationPairs && obj_pairs >= kMinRelationPairs &&
                  amod_verdict == "significant/1" && obj_verdict.rfind("inconclusive", 0) == 0;
  return ok ? pass(d) : fail(d);
}

// 7. Determinism and format. Leaves the first bundle in `bundle_out`.
Outcome determinism(json& bundle_out) {
  const auto dir = scratch("c7");
  RunConfig config = RunConfig::load(fixtures::write_fixture_dir(dir, 7, 2000));
  config.out = dir / "run-a";
  cmd_all(config);
  config.out = dir / "run-b";
  cmd_all(config);
  const std::string a = read_file(dir / "run-a" / "bundle.json");
  const std::string b = read_file(dir / "run-b" / "bundle.json");
  const bool identical = a == b;
  bundle_out = json::parse(a);
  const auto errors = validate_bundle(bundle_out);

  const std::string index = read_file(dir / "run-a" / "site" / "index.html");
  std::vector<std::string> ids;
  const std::regex section(R"re(<section id="([a-z_]+)")re");
  for (auto it = std::sregex_iterator(index.begin(), index.end(), section); it != std::sregex_iterator(); ++it) {
    ids.push_back((*it)[1]);
  }
  const std::vector<std::string> expected(kAspects.begin(), kAspects.end());
  std::size_t tags = 0;
  for (auto p = index.find("<section"); p != std::string::npos; p = index.find("<section", p + 1)) ++tags;
  const bool five = tags == 5 && ids == expected;

  const std::regex cell(R"(\d{1,3}\.\d{2} \(\d+\))");
  std::size_t cells = 0, bad_cells = 0;
  for (const auto& row : bundle_out.at("evaluation")) {
    ++cells;
    if (!std::regex_match(row.at("cell").get<std::string>(), cell)) ++bad_cells;
  }
  const std::string table = read_file(dir / "run-a" / "evaluation.txt");
  const bool table_has_cells = std::regex_search(table, cell);

  const std::string d = std::string("identical=") + (identical ? "yes" : "no") +
                        " schema_errors=" + std::to_string(errors.size()) + " sections=" + std::to_string(ids.size()) +
                        " cells=" + std::to_string(cells) + " bad_cells=" + std::to_string(bad_cells);
  fs::remove_all(dir);
  return identical && errors.empty() && five && cells > 0 && bad_cells == 0 && table_has_cells ? pass(d) : fail(d);
}

// 8. Smoke test on a user-supplied treebank.
Outcome smoke() {
  const char* path = std::getenv("GRAMEX_SMOKE_TREEBANK");
  if (!path || !*path) return skip("set GRAMEX_SMOKE_TREEBANK to a CoNLL-U file with >= 1000 sentences");
  const fs::path tb = fs::absolute(path);
  if (!fs::exists(tb)) return fail(tb.string() + " not found");
  const auto dir = scratch("c8");
  json cfg = {{"seed", 8}, {"inputs", {{"treebank", tb.string()}}}};
  write_file(dir / "config.json", cfg.dump());
  RunConfig config = RunConfig::load(dir / "config.json");
  config.out = dir / "out";
  cmd_all(config);
  const json bundle = json::parse(read_file(config.bundle_path()));
  const std::size_t sentences = bundle.at("ingestion").at("treebank").at("sentences");
  if (sentences < kSmokeMinSentences) return fail("treebank has only " + std::to_string(sentences) + " sentences");
  std::size_t completed = 0, missing = 0;
  for (const char* aspect : {"word_order", "agreement", "suffix_usage"}) {
    for (const auto& t : bundle.at(aspect).at("tasks")) {
      if (!t.at("completed")) continue;
      ++completed;
      const auto& e = t.at("evaluation");
      if (!e.is_object() || !e.at("model_accuracy").is_number() || !e.at("baseline_accuracy").is_number()) ++missing;
    }
  }
  const std::string d = std::to_string(sentences) + " sentences, " + std::to_string(completed) +
                        " completed tasks, " + std::to_string(missing) + " without both accuracies";
  return completed > 0 && missing == 0 ? pass(d) : fail(d);
}

}  // namespace

int main() {
  json bundle;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"planted word-order rule recovery", planted_word_order},
      {"chi-squared oracle equivalence", chi2_oracle},
      {"tree vs baseline separation", tree_vs_baseline},
      {"end-to-end determinism and format", [&] { return determinism(bundle); }},
      {"suffix decomposition properties", [&] { return suffix_properties(bundle.is_null() ? nullptr : &bundle); }},
      {"lexical selection", lexical_selection},
      {"agreement relabeling", agreement},
      {"smoke test on a real treebank", smoke},
  };
  // Printed in criterion order; 7 runs before 4 so the bundle is available.
  const std::vector<int> numbers{1, 2, 3, 7, 4, 5, 6, 8};
  std::map<int, std::pair<std::string, Outcome>> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    results[numbers[i]] = {criteria[i].first, o};
  }
  int failures = 0;
  for (const auto& [n, r] : results) {
    const char* tag = r.second.status == Outcome::pass ? "PASS" : r.second.status == Outcome::skip ? "SKIP" : "FAIL";
    failures += r.second.status == Outcome::fail;
    std::cout << tag << " criterion " << n << " (" << r.first << "): " << r.second.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
