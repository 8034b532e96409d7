#include <algorithm>
#include <functional>

#include "gramex/corpus.hpp"
#include "gramex/util.hpp"

namespace gramex {

const std::string* Token::feat(const std::string& attr) const {
  auto it = feats.find(attr);
  return it == feats.end() ? nullptr : &it->second;
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

const Sentence* Corpus::find(std::string_view id) const {
  for (const auto& s : sentences) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

namespace {

std::string field_or_empty(std::string_view f) { return f == "_" ? std::string() : std::string(f); }

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  return lines;
}

std::string forms_joined(const Sentence& s) {
  std::string out;
  for (const auto& t : s.tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

struct SentenceBuilder {
  Sentence sentence;
  std::vector<std::size_t> token_lines;
  bool has_text = false;
  bool open = false;
};

}  // namespace

Corpus parse_conllu(std::string_view text, std::string_view source) {
  const std::string src(source);
  Corpus corpus;
  SentenceBuilder cur;
  std::set<std::string> seen_ids;
  std::size_t ordinal = 0;

  auto finish = [&](std::size_t line_no) {
    if (!cur.open) return;
    Sentence& s = cur.sentence;
    if (s.tokens.empty()) {
      throw ParseError(src, line_no, "sentence without tokens");
    }
    ++ordinal;
    if (s.id.empty()) s.id = "s" + std::to_string(ordinal);
    if (!seen_ids.insert(s.id).second) {
      throw ParseError(src, line_no, "duplicate sentence id '" + s.id + "'");
    }
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const Token& t = s.tokens[i];
      if (t.index != i + 1) {
        throw ParseError(src, cur.token_lines[i],
                         "token index " + std::to_string(t.index) + " out of sequence (expected " +
                             std::to_string(i + 1) + ")");
      }
      if (t.head > s.tokens.size()) {
        throw ParseError(src, cur.token_lines[i], "head " + std::to_string(t.head) + " does not resolve");
      }
      if (t.head == t.index) {
        throw ParseError(src, cur.token_lines[i], "token is its own head");
      }
    }
    if (!cur.has_text) s.text = forms_joined(s);
    corpus.stats.tokens += s.tokens.size();
    corpus.sentences.push_back(std::move(s));
    cur = SentenceBuilder{};
  };

  const auto lines = lines_of(text);
  std::set<std::size_t> indices;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = lines[li];
    if (trim(line).empty()) {
      finish(line_no);
      indices.clear();
      continue;
    }
    cur.open = true;
    if (line.front() == '#') {
      std::string_view body = line.substr(1);
      cur.sentence.comments.emplace_back(body);
      auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        auto key = trim(body.substr(0, eq));
        auto value = std::string(trim(body.substr(eq + 1)));
        if (key == "sent_id") {
          cur.sentence.id = value;
        } else if (key == "text") {
          cur.sentence.text = value;
          cur.has_text = true;
        } else if (key == "text_en" || key == "translation") {
          cur.sentence.translation = value;
        }
      }
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw ParseError(src, line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos) {
      auto range = split(id, '-');
      std::size_t a = 0, b = 0;
      if (range.size() != 2 || !parse_size(range[0], a) || !parse_size(range[1], b) || a == 0 || b < a) {
        throw ParseError(src, line_no, "unparsable multiword range '" + std::string(id) + "'");
      }
      ++corpus.stats.multiword_ranges_skipped;
      continue;
    }
    if (id.find('.') != std::string_view::npos) {
      auto parts = split(id, '.');
      std::size_t a = 0, b = 0;
      if (parts.size() != 2 || !parse_size(parts[0], a) || !parse_size(parts[1], b)) {
        throw ParseError(src, line_no, "unparsable empty-node id '" + std::string(id) + "'");
      }
      ++corpus.stats.empty_nodes_skipped;
      continue;
    }
    Token tok;
    if (!parse_size(id, tok.index) || tok.index == 0) {
      throw ParseError(src, line_no, "unparsable token index '" + std::string(id) + "'");
    }
    if (!indices.insert(tok.index).second) {
      throw ParseError(src, line_no, "duplicate token index " + std::to_string(tok.index));
    }
    tok.form = std::string(cols[1]);
    tok.lemma = field_or_empty(cols[2]);
    tok.upos = field_or_empty(cols[3]);
    tok.xpos = field_or_empty(cols[4]);
    if (cols[5] != "_") {
      for (auto item : split(cols[5], '|')) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
          throw ParseError(src, line_no, "malformed feature '" + std::string(item) + "'");
        }
        std::string key(item.substr(0, eq));
        if (!tok.feats.emplace(key, std::string(item.substr(eq + 1))).second) {
          throw ParseError(src, line_no, "duplicate feature '" + key + "'");
        }
      }
    }
    if (!parse_size(cols[6], tok.head)) {
      throw ParseError(src, line_no, "unparsable head '" + std::string(cols[6]) + "'");
    }
    tok.deprel = field_or_empty(cols[7]);
    tok.deps = field_or_empty(cols[8]);
    tok.misc = field_or_empty(cols[9]);
    if (!tok.misc.empty()) {
      for (auto item : split(tok.misc, '|')) {
        if (starts_with(item, "Translit=")) tok.translit = std::string(item.substr(9));
      }
    }
    cur.sentence.tokens.push_back(std::move(tok));
    cur.token_lines.push_back(line_no);
  }
  finish(lines.size() + 1);
  corpus.stats.sentences = corpus.sentences.size();
  return corpus;
}

std::string serialize_conllu(const Corpus& corpus) {
  std::string out;
  auto put = [&out](std::string_view v) { out += v.empty() ? std::string_view("_") : v; };
  for (const auto& s : corpus.sentences) {
    for (const auto& c : s.comments) {
      out += '#';
      out += c;
      out += '\n';
    }
    for (const auto& t : s.tokens) {
      out += std::to_string(t.index);
      out += '\t';
      put(t.form);
      out += '\t';
      put(t.lemma);
      out += '\t';
      put(t.upos);
      out += '\t';
      put(t.xpos);
      out += '\t';
      if (t.feats.empty()) {
        out += '_';
      } else {
        bool first = true;
        for (const auto& [k, v] : t.feats) {
          if (!first) out += '|';
          first = false;
          out += k;
          out += '=';
          out += v;
        }
      }
      out += '\t';
      out += std::to_string(t.head);
      out += '\t';
      put(t.deprel);
      out += '\t';
      put(t.deps);
      out += '\t';
      put(t.misc);
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

TransliterationMap parse_transliterations(std::string_view text, std::string_view source) {
  TransliterationMap map;
  const auto lines = lines_of(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    auto cols = split(lines[li], '\t');
    std::size_t idx = 0;
    if (cols.size() != 3 || !parse_size(cols[1], idx) || idx == 0) {
      throw ParseError(std::string(source), li + 1, "expected sentence-id<TAB>token-index<TAB>romanization");
    }
    map[{std::string(cols[0]), idx}] = std::string(cols[2]);
  }
  return map;
}

std::size_t apply_transliterations(Corpus& corpus, const TransliterationMap& map) {
  std::size_t applied = 0;
  for (auto& s : corpus.sentences) {
    for (auto& t : s.tokens) {
      auto it = map.find({s.id, t.index});
      if (it != map.end()) {
        t.translit = it->second;
        ++applied;
      }
    }
  }
  return applied;
}

std::vector<ParallelPair> make_pairs(const Corpus& source, const Corpus& target) {
  if (source.sentences.size() != target.sentences.size()) {
    throw Error("parallel corpus mismatch: " + std::to_string(source.sentences.size()) + " source vs " +
                std::to_string(target.sentences.size()) + " target sentences");
  }
  std::vector<ParallelPair> pairs;
  pairs.reserve(source.sentences.size());
  for (std::size_t i = 0; i < source.sentences.size(); ++i) {
    ParallelPair p;
    p.id = "pair" + std::to_string(i + 1);
    p.source = source.sentences[i];
    p.target = target.sentences[i];
    if (p.target.translation.empty()) p.target.translation = p.source.text;
    pairs.push_back(std::move(p));
  }
  return pairs;
}

Corpus parse_plain_text(std::string_view text, std::string_view id_prefix) {
  Corpus corpus;
  std::size_t n = 0;
  for (auto line : lines_of(text)) {
    ++n;
    Sentence s;
    s.id = std::string(id_prefix) + std::to_string(n);
    s.text = std::string(trim(line));
    std::size_t i = 0;
    for (auto w : split_ws(line)) {
      Token t;
      t.index = ++i;
      t.form = std::string(w);
      t.lemma = to_lower_ascii(w);
      s.tokens.push_back(std::move(t));
    }
    corpus.stats.tokens += s.tokens.size();
    corpus.sentences.push_back(std::move(s));
  }
  corpus.stats.sentences = corpus.sentences.size();
  return corpus;
}

void parse_alignments(std::string_view text, std::vector<ParallelPair>& pairs, std::string_view source) {
  const auto lines = lines_of(text);
  if (lines.size() != pairs.size()) {
    throw Error(std::string(source) + ": " + std::to_string(lines.size()) + " alignment lines for " +
                std::to_string(pairs.size()) + " sentence pairs");
  }
  for (std::size_t li = 0; li < lines.size(); ++li) {
    ParallelPair& pair = pairs[li];
    std::set<std::pair<std::size_t, std::size_t>> links;
    for (auto item : split_ws(lines[li])) {
      auto dash = item.find('-');
      std::size_t s = 0, t = 0;
      if (dash == std::string_view::npos || !parse_size(item.substr(0, dash), s) ||
          !parse_size(item.substr(dash + 1), t)) {
        throw ParseError(std::string(source), li + 1,
                         "malformed link '" + std::string(item) + "' in " + pair.id);
      }
      if (s >= pair.source.size() || t >= pair.target.size()) {
        throw ParseError(std::string(source), li + 1,
                         "link " + std::string(item) + " out of bounds for " + pair.id + " (" +
                             std::to_string(pair.source.size()) + "x" + std::to_string(pair.target.size()) +
                             " tokens)");
      }
      links.emplace(s, t);
    }
    pair.alignment = std::move(links);
  }
}

std::set<std::string> TaxonomyResource::ancestors(const std::string& sense) const {
  std::set<std::string> out;
  std::vector<std::string> stack{sense};
  while (!stack.empty()) {
    std::string cur = std::move(stack.back());
    stack.pop_back();
    auto it = hypernyms.find(cur);
    if (it == hypernyms.end()) continue;
    for (const auto& parent : it->second) {
      if (out.insert(parent).second) stack.push_back(parent);
    }
  }
  return out;
}

std::set<std::string> TaxonomyResource::antonyms_of(const std::string& sense) const {
  std::set<std::string> out;
  for (const auto& [a, b] : antonym_pairs) {
    if (a == sense) out.insert(b);
    if (b == sense) out.insert(a);
  }
  return out;
}

TaxonomyResource parse_taxonomy(std::string_view hypernyms_tsv, std::string_view senses_tsv,
                                std::string_view antonyms_tsv) {
  TaxonomyResource tax;
  auto rows = [](std::string_view text, std::string_view name, auto&& fn) {
    const auto lines = lines_of(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
      if (trim(lines[li]).empty()) continue;
      auto cols = split(lines[li], '\t');
      if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
        throw ParseError(std::string(name), li + 1, "expected two tab-separated columns");
      }
      fn(li + 1, std::string(cols[0]), std::string(cols[1]));
    }
  };
  rows(senses_tsv, "senses.tsv", [&](std::size_t, std::string sense, std::string lemma) {
    tax.lemma_senses[lemma].insert(sense);
    tax.sense_lemmas[sense].insert(std::move(lemma));
  });
  auto require = [&](std::string_view file, std::size_t line, const std::string& sense) {
    if (!tax.has_sense(sense)) {
      throw ParseError(std::string(file), line, "sense '" + sense + "' not listed in senses.tsv");
    }
  };
  rows(hypernyms_tsv, "hypernyms.tsv", [&](std::size_t line, std::string child, std::string parent) {
    require("hypernyms.tsv", line, child);
    require("hypernyms.tsv", line, parent);
    auto& parents = tax.hypernyms[child];
    if (std::find(parents.begin(), parents.end(), parent) == parents.end()) parents.push_back(parent);
  });
  rows(antonyms_tsv, "antonyms.tsv", [&](std::size_t line, std::string a, std::string b) {
    require("antonyms.tsv", line, a);
    require("antonyms.tsv", line, b);
    if (b < a) std::swap(a, b);
    tax.antonym_pairs.emplace(std::move(a), std::move(b));
  });

  // Cycle check: DFS with white/grey/black colouring.
  std::map<std::string, int> colour;
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    colour[node] = 1;
    path.push_back(node);
    auto it = tax.hypernyms.find(node);
    if (it != tax.hypernyms.end()) {
      for (const auto& parent : it->second) {
        int c = colour[parent];
        if (c == 1) {
          auto start = std::find(path.begin(), path.end(), parent);
          std::string cycle;
          for (auto p = start; p != path.end(); ++p) cycle += *p + " -> ";
          cycle += parent;
          throw Error("hypernym cycle: " + cycle);
        }
        if (c == 0) visit(parent);
      }
    }
    path.pop_back();
    colour[node] = 2;
  };
  for (const auto& [child, _] : tax.hypernyms) {
    if (colour[child] == 0) visit(child);
  }
  return tax;
}

SenseAnnotations parse_senses(std::string_view text, const TaxonomyResource& taxonomy, std::string_view source) {
  SenseAnnotations out;
  const auto lines = lines_of(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (trim(lines[li]).empty()) continue;
    auto cols = split(lines[li], '\t');
    std::size_t idx = 0;
    if (cols.size() != 3 || cols[0].empty() || !parse_size(cols[1], idx) || cols[2].empty()) {
      throw ParseError(std::string(source), li + 1, "expected pair-id<TAB>token-index<TAB>sense-id");
    }
    std::string sense(cols[2]);
    if (!taxonomy.empty() && !taxonomy.has_sense(sense)) {
      out.warnings.push_back(std::string(source) + ":" + std::to_string(li + 1) + ": unknown sense '" + sense +
                             "', skipped");
      continue;
    }
    out.senses[SenseKey{std::string(cols[0]), idx}] = std::move(sense);
  }
  return out;
}

}  // namespace gramex
