#include "fixtures.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

#include "gramex/util.hpp"

namespace gramex::fixtures {

namespace {

struct Tok {
  std::string key;
  std::string form;
  std::string lemma;
  std::string upos;
  std::map<std::string, std::string> feats;
  std::string head;  // key of the head, empty for the root
  std::string deprel;
  std::string translit;
};

struct Sent {
  std::string id;
  std::string text_en;
  std::vector<Tok> toks;
};

std::string feats_column(const std::map<std::string, std::string>& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (const auto& [k, v] : feats) out += (out.empty() ? "" : "|") + k + "=" + v;
  return out;
}

// Resolves head keys to indices and prints one CoNLL-U block.
void emit(std::ostringstream& out, const Sent& s, bool misc_translit) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < s.toks.size(); ++i) index[s.toks[i].key] = i + 1;
  std::string text;
  for (const auto& t : s.toks) {
    if (!text.empty() && t.upos != "PUNCT") text += ' ';
    text += t.form;
  }
  out << "# sent_id = " << s.id << "\n# text = " << text << "\n";
  if (!s.text_en.empty()) out << "# text_en = " << s.text_en << "\n";
  for (std::size_t i = 0; i < s.toks.size(); ++i) {
    const Tok& t = s.toks[i];
    const std::size_t head = t.head.empty() ? 0 : index.at(t.head);
    const std::string misc = misc_translit && !t.translit.empty() ? "Translit=" + t.translit : "_";
    out << i + 1 << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << "\t_\t" << feats_column(t.feats) << '\t'
        << head << '\t' << t.deprel << "\t_\t" << misc << "\n";
  }
  out << "\n";
}

std::string emit_all(const std::vector<Sent>& sents, bool misc_translit) {
  std::ostringstream out;
  for (const auto& s : sents) emit(out, s, misc_translit);
  return out.str();
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

// ---- lexicon for the word-order treebank ----

struct Noun {
  std::string deva, rom, gender, en;
  std::string acc_deva, acc_rom;  // accusative form
  bool human;
};

const std::vector<Noun>& nouns() {
  static const std::vector<Noun> v{
      {"मुलगा", "mulgaa", "Masc", "boy", "मुलग्याला", "mulgyaalaa", true},
      {"मुलगी", "mulgii", "Fem", "girl", "मुलगीला", "mulgiilaa", true},
      {"शिक्षक", "shikshak", "Masc", "teacher", "शिक्षकाला", "shikshakaalaa", true},
      {"आई", "aaii", "Fem", "mother", "आईला", "aaiilaa", true},
      {"घर", "ghar", "Neut", "house", "घराला", "gharaalaa", false},
      {"पुस्तक", "pustak", "Neut", "book", "पुस्तकाला", "pustakaalaa", false},
      {"पत्र", "patra", "Neut", "letter", "पत्राला", "patraalaa", false},
      {"गाडी", "gaaDii", "Fem", "car", "गाडीला", "gaaDiilaa", false},
      {"देश", "desh", "Masc", "country", "देशाला", "deshaalaa", false},
  };
  return v;
}

struct Verb {
  std::string lemma, stem, stem_rom, en;
};

const std::vector<Verb>& verbs() {
  static const std::vector<Verb> v{
      {"पाहणे", "पाह", "paah", "sees"},
      {"वाचणे", "वाच", "vaach", "reads"},
      {"शोधणे", "शोध", "shodh", "looks for"},
      {"विचारणे", "विचार", "vichaar", "asks about"},
      {"आणणे", "आण", "aaN", "brings"},
  };
  return v;
}

struct Adj {
  std::string lemma, rom_stem, en;
  std::map<std::string, std::pair<std::string, std::string>> forms;  // gender -> (deva, rom)
};

const std::vector<Adj>& adjectives() {
  static const std::vector<Adj> v{
      {"चांगला", "changl", "good",
       {{"Masc", {"चांगला", "changlaa"}}, {"Fem", {"चांगली", "changlii"}}, {"Neut", {"चांगले", "changle"}}}},
      {"मोठा", "moth", "big", {{"Masc", {"मोठा", "mothaa"}}, {"Fem", {"मोठी", "mothii"}}, {"Neut", {"मोठे", "mothe"}}}},
  };
  return v;
}

std::string other_gender(const std::string& g, Rng& rng) {
  static const std::vector<std::string> all{"Masc", "Fem", "Neut"};
  std::vector<std::string> rest;
  for (const auto& x : all) {
    if (x != g) rest.push_back(x);
  }
  return pick(rng, rest);
}

std::vector<Sent> word_order_sentences(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Sent> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool ask_object = i % 10 == 0;
    const bool ask_subject = !ask_object && i % 20 == 5;
    Sent s;
    s.id = "s" + std::to_string(i + 1);
    std::vector<Tok> pre_subject, subject, locative, object, verb;

    // subject
    std::string subj_gender = "Masc";
    std::string subj_en;
    if (ask_subject) {
      subject.push_back({"subj", "कोण", "कोण", "PRON", {{"Case", "Nom"}, {"PronType", "Int"}}, "verb", "nsubj", "kon"});
      subj_en = "who";
      subj_gender = rng.below(2) ? "Masc" : "Fem";
    } else if (rng.below(5) == 0) {
      const bool masc = rng.below(2);
      subject.push_back({"subj", masc ? "तो" : "ती", masc ? "तो" : "ती", "PRON",
                         {{"Case", "Nom"}, {"Gender", masc ? "Masc" : "Fem"}, {"Person", "3"}, {"PronType", "Prs"}},
                         "verb", "nsubj", masc ? "to" : "tii"});
      subj_gender = masc ? "Masc" : "Fem";
      subj_en = masc ? "he" : "she";
    } else {
      std::vector<Noun> humans;
      for (const auto& nn : nouns()) {
        if (nn.human) humans.push_back(nn);
      }
      const Noun& nn = pick(rng, humans);
      subj_gender = nn.gender;
      const bool erg = rng.below(10) < 3;
      Tok t{"subj", erg ? nn.deva + "ने" : nn.deva, nn.deva, "NOUN",
            {{"Case", erg ? "Erg" : "Nom"}, {"Gender", nn.gender}, {"Number", "Sing"}}, "verb", "nsubj",
            erg ? nn.rom + "ne" : nn.rom};
      std::string adj_en;
      if (rng.below(10) < 4) {
        const Adj& a = pick(rng, adjectives());
        const std::string g = rng.below(20) == 0 ? other_gender(nn.gender, rng) : nn.gender;
        const auto& [deva, rom] = a.forms.at(g);
        pre_subject.push_back({"adj", deva, a.lemma, "ADJ", {{"Gender", g}}, "subj", "amod", rom});
        adj_en = a.en + " ";
      }
      subject.push_back(t);
      subj_en = "the " + adj_en + nn.en;
    }

    // object
    std::string obj_en;
    if (ask_object) {
      const int k = static_cast<int>(rng.below(3));
      if (k == 0) {
        object.push_back({"obj", "काय", "काय", "PRON", {{"Case", "Nom"}, {"PronType", "Int"}}, "verb", "obj", "kaay"});
        obj_en = "what";
      } else if (k == 1) {
        object.push_back(
            {"obj", "कोणाला", "कोण", "PRON", {{"Case", "Acc"}, {"PronType", "Int"}}, "verb", "obj", "konaalaa"});
        obj_en = "whom";
      } else {
        object.push_back(
            {"obj", "कोणते", "कोणता", "PRON", {{"Case", "Nom"}, {"PronType", "Int"}}, "verb", "obj", "konte"});
        obj_en = "which one";
      }
    } else if (rng.below(10) < 3) {
      const bool masc = rng.below(2);
      object.push_back({"obj", masc ? "त्याला" : "तिला", masc ? "तो" : "ती", "PRON",
                        {{"Case", "Acc"}, {"Gender", masc ? "Masc" : "Fem"}, {"Person", "3"}, {"PronType", "Prs"}},
                        "verb", "obj", masc ? "tyaalaa" : "tilaa"});
      obj_en = masc ? "him" : "her";
    } else {
      const Noun& nn = pick(rng, nouns());
      const bool acc = nn.human || rng.below(2);
      std::string num_en;
      if (rng.below(5) == 0) {
        const bool two = rng.below(2);
        object.push_back({"num", two ? "दोन" : "तीन", two ? "दोन" : "तीन", "NUM", {{"NumType", "Card"}}, "obj",
                          "nummod", two ? "don" : "tiin"});
        num_en = two ? "two " : "three ";
      }
      object.push_back({"obj", acc ? nn.acc_deva : nn.deva, nn.deva, "NOUN",
                        {{"Case", acc ? "Acc" : "Nom"}, {"Gender", nn.gender}, {"Number", "Sing"}}, "verb", "obj",
                        acc ? nn.acc_rom : nn.rom});
      obj_en = (num_en.empty() ? "the " : num_en) + nn.en;
    }

    // optional locative phrase
    if (rng.below(10) < 3) {
      locative.push_back({"loc", "शाळा", "शाळा", "NOUN", {{"Gender", "Fem"}, {"Number", "Sing"}}, "verb", "obl", "shaaLaa"});
      locative.push_back({"adp", "मध्ये", "मध्ये", "ADP", {}, "loc", "case", "madhye"});
    }

    // verb agrees with its subject nine times out of ten
    const Verb& v = pick(rng, verbs());
    std::string vg = rng.below(10) == 0 ? other_gender(subj_gender, rng) : subj_gender;
    const bool masc_form = vg == "Masc";
    verb.push_back({"verb", v.stem + (masc_form ? "तो" : "ते"), v.lemma, "VERB",
                    {{"Gender", vg}, {"Number", "Sing"}, {"Person", "3"}, {"Tense", "Pres"}, {"VerbForm", "Fin"}}, "",
                    "root", v.stem_rom + (masc_form ? "to" : "te")});

    const bool question = ask_object || ask_subject;
    const bool topicalized = !question && rng.below(10) < 4;
    Tok end{"end", question ? "?" : ".", question ? "?" : ".", "PUNCT", {}, "verb", "punct", ""};
    auto append = [&](const std::vector<Tok>& part) { s.toks.insert(s.toks.end(), part.begin(), part.end()); };
    if (topicalized) {
      append(object);
      s.toks.push_back({"comma", ",", ",", "PUNCT", {}, "verb", "punct", ""});
      append(pre_subject);
      append(subject);
      append(locative);
      append(verb);
    } else {
      append(pre_subject);
      append(subject);
      append(locative);
      if (ask_object) {
        append(verb);
        append(object);
      } else {
        append(object);
        append(verb);
      }
    }
    s.toks.push_back(end);
    const std::string loc_en = locative.empty() ? "" : " in the school";
    s.text_en = subj_en + " " + v.en + " " + obj_en + loc_en + (question ? "?" : ".");
    s.text_en[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s.text_en[0])));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string planted_word_order_conllu(std::size_t sentences, std::uint64_t seed) {
  return emit_all(word_order_sentences(sentences, seed), true);
}

Corpus planted_word_order(std::size_t sentences, std::uint64_t seed) {
  return parse_conllu(planted_word_order_conllu(sentences, seed), "planted-word-order");
}

Corpus planted_agreement(std::size_t sentences) {
  std::vector<Sent> sents;
  for (std::size_t i = 0; i < sentences; ++i) {
    const std::string g = i % 4 < 2 ? "Masc" : "Fem";
    const std::string flip = g == "Masc" ? "Fem" : "Masc";
    const std::string adj_g = i % 20 == 0 ? flip : g;  // 95% agree
    const std::string verb_g = i % 2 == 0 ? g : flip;  // 50% agree
    Sent s;
    s.id = "a" + std::to_string(i + 1);
    s.toks.push_back({"adj", adj_g == "Masc" ? "mothaa" : "mothii", "mothaa", "ADJ", {{"Gender", adj_g}}, "noun", "amod", ""});
    s.toks.push_back({"noun", "ghar", "ghar", "NOUN", {{"Gender", g}}, "verb", "obj", ""});
    s.toks.push_back({"verb", verb_g == "Masc" ? "paahto" : "paahte", "paahne", "VERB", {{"Gender", verb_g}}, "", "root", ""});
    sents.push_back(std::move(s));
  }
  return parse_conllu(emit_all(sents, false), "planted-agreement");
}

Corpus planted_suffixes(std::size_t sentences, std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::string> lemmas{"desh", "ghar", "mulga", "shikshak", "gaav", "raaja", "mitra", "pustak"};
  std::vector<Sent> sents;
  for (std::size_t i = 0; i < sentences; ++i) {
    const std::string lemma = pick(rng, lemmas);
    const bool dat = rng.below(2);
    Sent s;
    s.id = "x" + std::to_string(i + 1);
    s.toks.push_back({"n", lemma + (dat ? "laa" : "ne"), lemma, "NOUN", {{"Case", dat ? "Dat" : "Erg"}, {"Number", "Sing"}},
                      "v", dat ? "iobj" : "nsubj", ""});
    s.toks.push_back({"v", "dila", "de", "VERB", {{"Tense", "Past"}}, "", "root", ""});
    sents.push_back(std::move(s));
  }
  return parse_conllu(emit_all(sents, false), "planted-suffixes");
}

ParallelFixture planted_lexsel(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  struct V {
    std::string en, l2, l2_lemma, rom, sense;
  };
  const std::vector<V> raw_verbs{{"buy", "घेतो", "घेणे", "gheto", "buy.v.01"},
                                 {"wash", "धुतो", "धुणे", "dhuto", "wash.v.01"},
                                 {"clean", "निवडतो", "निवडणे", "nivaDto", "clean.v.01"}};
  const std::vector<V> cooked_verbs{{"eat", "खातो", "खाणे", "khaato", "eat.v.01"},
                                    {"serve", "वाढतो", "वाढणे", "vaaDhto", "serve.v.01"},
                                    {"like", "आवडतो", "आवडणे", "aavaDto", "like.v.02"}};
  const std::vector<V> cooked_adjs{{"hot", "गरम", "गरम", "garam", "hot.a.01"},
                                   {"white", "पांढरा", "पांढरा", "paandharaa", "white.a.01"},
                                   {"good", "चांगला", "चांगला", "changlaa", "good.a.01"}};
  const V raw_adj{"raw", "कच्चा", "कच्चा", "kacchaa", "raw.a.01"};

  std::vector<Sent> src, tgt;
  std::ostringstream align, senses;
  for (std::size_t i = 0; i < n; ++i) {
    const bool raw = i % 5 < 2;  // 40%
    const V& verb = raw ? pick(rng, raw_verbs) : pick(rng, cooked_verbs);
    const V* adj = raw ? &raw_adj : (rng.below(10) < 7 ? &pick(rng, cooked_adjs) : nullptr);
    const bool we = rng.below(2);
    const std::string pair_id = "pair" + std::to_string(i + 1);

    Sent e;
    e.id = "en" + std::to_string(i + 1);
    e.toks.push_back({"subj", we ? "We" : "I", we ? "we" : "I", "PRON", {{"PronType", "Prs"}}, "verb", "nsubj", ""});
    e.toks.push_back({"verb", verb.en, verb.en, "VERB", {}, "", "root", ""});
    if (adj) e.toks.push_back({"adj", adj->en, adj->en, "ADJ", {{"Degree", "Pos"}}, "obj", "amod", ""});
    e.toks.push_back({"obj", "rice", "rice", "NOUN", {{"Number", "Sing"}}, "verb", "obj", ""});
    e.toks.push_back({"end", ".", ".", "PUNCT", {}, "verb", "punct", ""});

    Sent t;
    t.id = "l2-" + std::to_string(i + 1);
    t.toks.push_back({"subj", we ? "आम्ही" : "मी", we ? "आम्ही" : "मी", "PRON", {{"Person", "1"}, {"PronType", "Prs"}},
                      "verb", "nsubj", we ? "aamhii" : "mii"});
    if (adj) t.toks.push_back({"adj", adj->l2, adj->l2_lemma, "ADJ", {{"Gender", "Masc"}}, "obj", "amod", adj->rom});
    t.toks.push_back({"obj", raw ? "तांदूळ" : "भात", raw ? "तांदूळ" : "भात", "NOUN",
                      {{"Case", "Nom"}, {"Gender", "Masc"}, {"Number", "Sing"}}, "verb", "obj", raw ? "taanduuL" : "bhaat"});
    t.toks.push_back({"verb", verb.l2, verb.l2_lemma, "VERB", {{"Person", we ? "1" : "1"}, {"Tense", "Pres"}}, "",
                      "root", verb.rom});
    t.toks.push_back({"end", ".", ".", "PUNCT", {}, "verb", "punct", ""});

    // positions by key
    auto pos = [](const Sent& s, const std::string& key) {
      for (std::size_t k = 0; k < s.toks.size(); ++k) {
        if (s.toks[k].key == key) return k;
      }
      throw Error("fixture: missing token " + key);
    };
    std::vector<std::string> links;
    for (const char* key : {"subj", "verb", "adj", "obj", "end"}) {
      if (std::string(key) == "adj" && !adj) continue;
      links.push_back(std::to_string(pos(e, key)) + "-" + std::to_string(pos(t, key)));
    }
    align << join(links, " ") << "\n";
    senses << pair_id << '\t' << pos(e, "obj") << "\trice.n.01\n";
    senses << pair_id << '\t' << pos(e, "verb") << '\t' << verb.sense << "\n";
    if (adj) senses << pair_id << '\t' << pos(e, "adj") << '\t' << adj->sense << "\n";
    src.push_back(std::move(e));
    tgt.push_back(std::move(t));
  }

  ParallelFixture f;
  f.source_conllu = emit_all(src, false);
  f.target_conllu = emit_all(tgt, true);
  f.alignments = align.str();
  f.sense_annotations = senses.str();
  f.senses =
      "entity.n.01\tentity\nmatter.n.03\tmatter\nsolid.n.01\tsolid\nfood.n.02\tfood\nfood.n.01\tfood\n"
      "foodstuff.n.02\tfoodstuff\ngrain.n.02\tgrain\nrice.n.01\trice\n"
      "buy.v.01\tbuy\nbuy.v.01\tpurchase\nwash.v.01\twash\nclean.v.01\tclean\neat.v.01\teat\nserve.v.01\tserve\n"
      "like.v.02\tlike\nraw.a.01\traw\nraw.a.01\tuncooked\ncooked.a.01\tcooked\nhot.a.01\thot\ncold.a.01\tcold\n"
      "white.a.01\twhite\nblack.a.01\tblack\ngood.a.01\tgood\nbad.a.01\tbad\n";
  f.hypernyms =
      "rice.n.01\tgrain.n.02\ngrain.n.02\tfoodstuff.n.02\nfoodstuff.n.02\tfood.n.02\nfood.n.02\tsolid.n.01\n"
      "solid.n.01\tmatter.n.03\nmatter.n.03\tentity.n.01\nfood.n.01\tentity.n.01\n";
  f.antonyms = "raw.a.01\tcooked.a.01\nhot.a.01\tcold.a.01\nwhite.a.01\tblack.a.01\ngood.a.01\tbad.a.01\n";

  const Corpus source = parse_conllu(f.source_conllu, "planted-lexsel-en");
  const Corpus target = parse_conllu(f.target_conllu, "planted-lexsel-l2");
  f.pairs = make_pairs(source, target);
  parse_alignments(f.alignments, f.pairs);
  return f;
}

std::vector<Instance> xor_instances(std::size_t rows) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < rows; ++i) {
    const bool a = i % 2, b = (i / 2) % 2;
    Instance inst;
    if (a) inst.features.push_back("x:a=1");
    if (b) inst.features.push_back("x:b=1");
    inst.features.push_back("x:bias=1");
    canonicalize(inst.features);
    inst.label = a != b ? "1" : "0";
    inst.provenance = {"xor" + std::to_string(i + 1), 1, 2, 3, i};
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> single_class_instances(std::size_t rows) {
  std::vector<Instance> out;
  for (std::size_t i = 0; i < rows; ++i) {
    Instance inst;
    inst.features = {i % 2 ? "x:a=1" : "x:b=1"};
    inst.label = "same";
    inst.provenance = {"one" + std::to_string(i + 1), 1, 2, 3, i};
    out.push_back(std::move(inst));
  }
  return out;
}

std::filesystem::path write_fixture_dir(const std::filesystem::path& dir, std::uint64_t seed, std::size_t sentences) {
  const auto sents = word_order_sentences(sentences, seed);
  write_file(dir / "treebank.conllu", emit_all(sents, false));
  std::ostringstream translit;
  for (const auto& s : sents) {
    for (std::size_t i = 0; i < s.toks.size(); ++i) {
      if (!s.toks[i].translit.empty()) translit << s.id << '\t' << i + 1 << '\t' << s.toks[i].translit << "\n";
    }
  }
  write_file(dir / "translit.tsv", translit.str());

  const ParallelFixture p = planted_lexsel(250, seed + 1);
  write_file(dir / "en.conllu", p.source_conllu);
  write_file(dir / "l2.conllu", p.target_conllu);
  write_file(dir / "align.txt", p.alignments);
  write_file(dir / "hypernyms.tsv", p.hypernyms);
  write_file(dir / "senses.tsv", p.senses);
  write_file(dir / "antonyms.tsv", p.antonyms);
  write_file(dir / "sense_annotations.tsv", p.sense_annotations);
  write_file(dir / "glossary.tsv", "deprel=obl\toblique argument\nPronType=Int\tinterrogative pronoun\n");

  nlohmann::json config = {
      {"language", "Marathi (synthetic)"},
      {"seed", seed},
      {"out", "out"},
      {"inputs",
       {{"treebank", "treebank.conllu"},
        {"transliterations", "translit.tsv"},
        {"parallel", {{"source", "en.conllu"}, {"target", "l2.conllu"}, {"format", "conllu"}, {"alignments", "align.txt"}}},
        {"taxonomy", {{"hypernyms", "hypernyms.tsv"}, {"senses", "senses.tsv"}, {"antonyms", "antonyms.tsv"}}},
        {"sense_annotations", "sense_annotations.tsv"},
        {"glossary", "glossary.tsv"}}},
  };
  const auto path = dir / "config.json";
  write_file(path, config.dump(2) + "\n");
  return path;
}

}  // namespace gramex::fixtures
