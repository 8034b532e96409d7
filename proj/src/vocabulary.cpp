#include "gramex/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "gramex/util.hpp"

namespace gramex {

std::string lexical_key(const Token& token) {
  return token.lemma.empty() ? to_lower_ascii(token.form) : token.lemma;
}

std::size_t TranslationTable::total(const std::string& l1) const {
  auto it = entries.find(l1);
  if (it == entries.end()) return 0;
  std::size_t n = 0;
  for (const auto& [_, e] : it->second) n += e.count;
  return n;
}

std::string TranslationTable::majority_pos(const std::string& l1) const {
  auto it = source_pos.find(l1);
  if (it == source_pos.end()) return {};
  std::string best;
  std::size_t best_n = 0;
  for (const auto& [pos, n] : it->second) {
    if (n > best_n) {
      best = pos;
      best_n = n;
    }
  }
  return best;
}

TranslationTable aggregate_translations(std::span<const ParallelPair> pairs) {
  TranslationTable table;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pair = pairs[p];
    for (const auto& [s, t] : pair.alignment) {
      const Token& src = pair.source.tokens.at(s);
      const Token& tgt = pair.target.tokens.at(t);
      if (src.upos == "PUNCT" || tgt.upos == "PUNCT") continue;
      const std::string l1 = lexical_key(src);
      auto& entry = table.entries[l1][lexical_key(tgt)];
      ++entry.count;
      entry.occurrences.push_back({p, s, t});
      if (!src.upos.empty()) ++table.source_pos[l1][src.upos];
    }
  }
  return table;
}

void FilterConfig::validate() const {
  if (min_entropy < 0.0) throw Error("vocabulary filter: min_entropy must be >= 0");
}

double entropy_bits(std::span<const std::size_t> counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<DivergentPair> filter_divergent_pairs(const TranslationTable& table, const FilterConfig& config,
                                                  std::span<const ParallelPair> pairs) {
  config.validate();
  std::vector<DivergentPair> out;
  for (const auto& [l1, translations] : table.entries) {
    if (config.excluded_pos.count(table.majority_pos(l1))) continue;
    DivergentPair dp;
    dp.l1 = l1;
    for (const auto& [l2, entry] : translations) {
      if (entry.count < config.min_count) continue;
      Candidate c;
      c.l2 = l2;
      c.count = entry.count;
      std::map<std::string, std::size_t> roman;
      for (const auto& occ : entry.occurrences) {
        if (occ.pair >= pairs.size()) continue;
        const Token& tgt = pairs[occ.pair].target.tokens.at(occ.target);
        if (!tgt.translit.empty()) ++roman[tgt.translit];
      }
      c.romanization = l2;
      std::size_t best = 0;
      for (const auto& [r, n] : roman) {
        if (n > best) {
          best = n;
          c.romanization = r;
        }
      }
      c.loanword = to_lower_ascii(c.romanization) == to_lower_ascii(l1);
      dp.candidates.push_back(std::move(c));
    }
    if (dp.candidates.size() < 2) continue;
    std::vector<std::size_t> counts;
    for (const auto& c : dp.candidates) {
      dp.total += c.count;
      counts.push_back(c.count);
    }
    dp.entropy = entropy_bits(counts);
    if (dp.total < config.min_total || dp.entropy < config.min_entropy) continue;
    std::stable_sort(dp.candidates.begin(), dp.candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.count > b.count; });
    out.push_back(std::move(dp));
  }
  return out;
}

std::vector<Instance> extract_lexsel_instances(const DivergentPair& pair, const TranslationTable& table,
                                               std::span<const ParallelPair> pairs,
                                               const LexicalResources& resources) {
  std::vector<Instance> out;
  auto row = table.entries.find(pair.l1);
  if (row == table.entries.end()) return out;
  for (const auto& cand : pair.candidates) {
    auto e = row->second.find(cand.l2);
    if (e == row->second.end()) continue;
    for (const auto& occ : e->second.occurrences) {
      const ParallelPair& pp = pairs[occ.pair];
      const Sentence& src = pp.source;
      const Sentence& tgt = pp.target;
      const Token& s = src.tokens.at(occ.source);
      const Token& t = tgt.tokens.at(occ.target);
      Instance inst;
      auto& f = inst.features;
      if (occ.source > 0) f.push_back(atom("l1:prev_lemma", lexical_key(src.tokens[occ.source - 1])));
      if (occ.source + 1 < src.size()) f.push_back(atom("l1:next_lemma", lexical_key(src.tokens[occ.source + 1])));
      if (s.head != 0) {
        f.push_back(atom("l1:head_lemma", lexical_key(src.at(s.head))));
        if (!s.deprel.empty()) f.push_back(atom("l1:deprel", s.deprel));
      }
      for (const auto& other : src.tokens) {
        if (other.head == s.index && s.index != 0) f.push_back(atom("l1:child_lemma", lexical_key(other)));
      }
      if (resources.senses) {
        auto it = resources.senses->senses.find(SenseKey{pp.id, occ.source});
        if (it != resources.senses->senses.end()) {
          f.push_back(atom("l1:sense", it->second));
          if (resources.taxonomy) {
            for (const auto& anc : resources.taxonomy->ancestors(it->second)) f.push_back(atom("l1:sense_anc", anc));
          }
        }
      }
      for (const auto& [attr, value] : t.feats) f.push_back(atom("l2:" + attr, value));
      if (occ.target > 0) f.push_back(atom("l2:prev_lemma", lexical_key(tgt.tokens[occ.target - 1])));
      if (occ.target + 1 < tgt.size()) f.push_back(atom("l2:next_lemma", lexical_key(tgt.tokens[occ.target + 1])));
      canonicalize(f);
      inst.label = cand.l2;
      inst.provenance = {pp.id, occ.source, occ.target, tgt.size(), occ.pair};
      out.push_back(std::move(inst));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) {
    if (a.provenance.order != b.provenance.order) return a.provenance.order < b.provenance.order;
    return a.provenance.dep < b.provenance.dep;
  });
  return out;
}

LinearTaskResult fit_lexical_selection(const DivergentPair& pair, const TranslationTable& table,
                                       std::span<const ParallelPair> pairs, const LexicalResources& resources,
                                       const TaskSettings& settings, const Glossary& glossary) {
  RuleContext ctx;
  ctx.kind = TaskKind::lexical;
  ctx.l1_word = pair.l1;
  auto instances = extract_lexsel_instances(pair, table, pairs, resources);
  TaskSettings s = settings;
  s.min_instances = std::min(settings.min_instances, pair.total);
  return run_linear_task(pair.l1, std::move(instances), s, glossary, ctx);
}

// ---- categories and adjectives ------------------------------------------

std::vector<CategorySeed> default_categories() {
  return {
      {"food", {"food.n.01", "food.n.02"}},
      {"relationships", {"relative.n.01", "spouse.n.01", "friend.n.01"}},
      {"animals", {"animal.n.01"}},
      {"fruits", {"fruit.n.01", "edible_fruit.n.01"}},
      {"colors", {"color.n.01", "chromatic_color.n.01"}},
      {"time", {"time_period.n.01", "time_unit.n.01"}},
      {"verbs", {}, true},
      {"body parts", {"body_part.n.01"}},
      {"vehicle", {"vehicle.n.01"}},
      {"elements", {"chemical_element.n.01"}},
      {"furniture", {"furniture.n.01"}},
      {"clothing", {"clothing.n.01"}},
  };
}

std::vector<std::string> categories_of(const std::string& sense, const TaxonomyResource& taxonomy,
                                       std::span<const CategorySeed> seeds) {
  auto chain = taxonomy.ancestors(sense);
  chain.insert(sense);
  std::vector<std::string> out;
  for (const auto& seed : seeds) {
    bool hit = seed.verbs && sense.find(".v.") != std::string::npos;
    for (const auto& s : seed.senses) hit = hit || chain.count(s);
    if (hit) out.push_back(seed.name);
  }
  return out;
}

namespace {

Provenance pair_provenance(const ParallelPair& pp, std::size_t index, std::size_t src, std::size_t tgt) {
  return {pp.id, src, tgt, pp.target.size(), index};
}

void keep_shortest(std::vector<Provenance>& refs, std::size_t max_examples) {
  std::stable_sort(refs.begin(), refs.end(), [](const Provenance& a, const Provenance& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.order < b.order;
  });
  std::vector<Provenance> out;
  std::set<std::string> seen;
  for (auto& r : refs) {
    if (out.size() >= max_examples) break;
    if (seen.insert(r.sentence).second) out.push_back(std::move(r));
  }
  refs = std::move(out);
}

std::string romanization_of(const Token& t) { return t.translit; }

}  // namespace

CategoryIndex build_category_index(std::span<const ParallelPair> pairs, const SenseAnnotations* senses,
                                   const TaxonomyResource& taxonomy, std::span<const CategorySeed> seeds,
                                   std::size_t max_examples) {
  CategoryIndex index;
  if (!senses) {
    index.warnings.push_back("no sense annotations: category index left empty");
    return index;
  }
  // (category, l2, gloss) -> entry
  std::map<std::tuple<std::string, std::string, std::string>, CategoryEntry> acc;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pp = pairs[p];
    for (const auto& [s, t] : pp.alignment) {
      auto it = senses->senses.find(SenseKey{pp.id, s});
      if (it == senses->senses.end()) continue;
      const Token& tgt = pp.target.tokens.at(t);
      const Token& src = pp.source.tokens.at(s);
      for (const auto& cat : categories_of(it->second, taxonomy, seeds)) {
        auto& e = acc[{cat, lexical_key(tgt), lexical_key(src)}];
        e.l2 = lexical_key(tgt);
        e.gloss = lexical_key(src);
        if (e.sense.empty()) e.sense = it->second;
        if (e.romanization.empty()) e.romanization = romanization_of(tgt);
        ++e.count;
        e.examples.push_back(pair_provenance(pp, p, s, t));
      }
    }
  }
  for (auto& [key, entry] : acc) {
    keep_shortest(entry.examples, max_examples);
    index.categories[std::get<0>(key)].push_back(std::move(entry));
  }
  for (auto& [_, entries] : index.categories) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const CategoryEntry& a, const CategoryEntry& b) { return a.count > b.count; });
  }
  return index;
}

std::vector<AdjectiveEntry> build_adjective_entries(std::span<const ParallelPair> pairs,
                                                    const TaxonomyResource& taxonomy,
                                                    const SenseAnnotations* senses, std::size_t min_count,
                                                    std::size_t max_entries, std::size_t max_examples) {
  auto adjective_sense = [](const std::string& sense) {
    return sense.find(".a.") != std::string::npos || sense.find(".s.") != std::string::npos;
  };
  std::map<std::pair<std::string, std::string>, AdjectiveEntry> acc;
  std::map<std::pair<std::string, std::string>, std::set<std::string>> entry_senses;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& pp = pairs[p];
    for (const auto& [s, t] : pp.alignment) {
      const Token& src = pp.source.tokens.at(s);
      const Token& tgt = pp.target.tokens.at(t);
      const std::string english = lexical_key(src);
      std::set<std::string> token_senses;
      if (senses) {
        auto it = senses->senses.find(SenseKey{pp.id, s});
        if (it != senses->senses.end()) token_senses.insert(it->second);
      }
      if (token_senses.empty()) {
        auto ls = taxonomy.lemma_senses.find(english);
        if (ls != taxonomy.lemma_senses.end()) {
          for (const auto& sense : ls->second) {
            if (adjective_sense(sense)) token_senses.insert(sense);
          }
        }
      }
      const bool is_adj = src.upos.empty() ? !token_senses.empty() : src.upos == "ADJ";
      if (!is_adj) continue;
      const std::pair<std::string, std::string> key{lexical_key(tgt), english};
      auto& e = acc[key];
      e.l2 = key.first;
      e.english = english;
      if (e.romanization.empty()) e.romanization = romanization_of(tgt);
      ++e.count;
      e.examples.push_back(pair_provenance(pp, p, s, t));
      entry_senses[key].insert(token_senses.begin(), token_senses.end());
    }
  }
  std::vector<AdjectiveEntry> out;
  for (auto& [key, e] : acc) {
    if (e.count < min_count) continue;
    std::set<std::string> syn, ant;
    for (const auto& sense : entry_senses[key]) {
      auto lemmas = taxonomy.sense_lemmas.find(sense);
      if (lemmas != taxonomy.sense_lemmas.end()) {
        for (const auto& l : lemmas->second) {
          if (l != e.english) syn.insert(l);
        }
      }
      for (const auto& other : taxonomy.antonyms_of(sense)) {
        auto ol = taxonomy.sense_lemmas.find(other);
        if (ol != taxonomy.sense_lemmas.end()) ant.insert(ol->second.begin(), ol->second.end());
      }
    }
    e.synonyms.assign(syn.begin(), syn.end());
    e.antonyms.assign(ant.begin(), ant.end());
    keep_shortest(e.examples, max_examples);
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const AdjectiveEntry& a, const AdjectiveEntry& b) { return a.count > b.count; });
  if (out.size() > max_entries) out.resize(max_entries);
  return out;
}

}  // namespace gramex
