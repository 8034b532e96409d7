#include "gramex/site.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "gramex/reporting.hpp"
#include "gramex/util.hpp"

namespace gramex {

namespace {

const char* kStyle = R"(body { font-family: sans-serif; max-width: 60em; margin: 2em auto; padding: 0 1em; color: #222; }
h1, h2, h3 { color: #234; }
table { border-collapse: collapse; margin: 0.5em 0 1em; }
th, td { border: 1px solid #ccc; padding: 0.2em 0.6em; text-align: left; vertical-align: top; }
.rule { margin: 0.4em 0; }
.notice { color: #a50; }
.example { margin: 0.6em 0; padding-left: 0.6em; border-left: 3px solid #9bd; }
.example.counter { border-left-color: #d99; }
.l2 mark { background: #fe9; }
.translit { color: #555; font-style: italic; }
.translation { color: #333; }
.meta { color: #777; font-size: 0.9em; }
)";

std::string page(const std::string& title, const std::string& body, const std::string& css_path) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" << html_escape(title)
      << "</title>\n<link rel=\"stylesheet\" href=\"" << css_path << "\">\n</head>\n<body>\n"
      << body << "</body>\n</html>\n";
  return out.str();
}

std::string safe_name(const std::string& id) {
  std::string out;
  for (unsigned char c : id) {
    out += (std::isalnum(c) && c < 0x80) || c == '-' || c == '_' ? static_cast<char>(c) : '_';
  }
  return out.empty() ? "_" : out;
}

std::string notices_html(const json& section) {
  std::string out;
  for (const auto& n : section.at("notices")) {
    out += "<p class=\"notice\">" + html_escape(n.get<std::string>()) + "</p>\n";
  }
  return out;
}

std::string percent(double fraction) { return format_fixed(100.0 * fraction, 2); }

std::string evaluation_line(const json& ev) {
  if (ev.is_null()) return {};
  return "<p class=\"meta\">" + html_escape(ev.at("model_kind").get<std::string>()) + " model accuracy " +
         percent(ev.at("model_accuracy").get<double>()) + "%, most-frequent baseline " +
         percent(ev.at("baseline_accuracy").get<double>()) + "% (" +
         html_escape(ev.at("baseline_label").get<std::string>()) + "), " +
         std::to_string(ev.at("test").get<std::size_t>()) + " held-out instances</p>\n";
}

class SiteWriter {
 public:
  SiteWriter(const json& bundle, std::filesystem::path out) : b_(bundle), out_(std::move(out)) {}

  std::vector<std::string> run() {
    write("style.css", kStyle);
    write("index.html", index());
    aspect_ = "general_information";
    write("general_information.html", general_information());
    aspect_ = "vocabulary";
    write("vocabulary.html", vocabulary());
    aspect_ = "word_order";
    write("word_order.html", tree_aspect("word_order"));
    aspect_ = "agreement";
    write("agreement.html", tree_aspect("agreement"));
    aspect_ = "suffix_usage";
    write("suffix_usage.html", suffix_usage());
    std::sort(written_.begin(), written_.end());
    written_.erase(std::unique(written_.begin(), written_.end()), written_.end());
    return written_;
  }

 private:
  void write(const std::string& rel, const std::string& content) {
    write_file(out_ / rel, content);
    written_.push_back(rel);
  }

  std::string language() const { return b_.at("language").at("name").get<std::string>(); }

  // ---- examples ----

  std::string example_html(const json& ex, bool counter) const {
    const std::string ref = ex.at("ref").get<std::string>();
    const json& rec = b_.at("sentences").at(ref);
    const bool parallel = starts_with(ref, "par:");
    std::set<std::size_t> marks;  // 0-based positions in `forms`
    const auto head = ex.at("head").get<std::size_t>();
    const auto dep = ex.at("dep").get<std::size_t>();
    if (parallel) {
      marks.insert(dep);
    } else {
      if (head > 0) marks.insert(head - 1);
      if (dep > 0) marks.insert(dep - 1);
    }
    std::string l2;
    const auto& forms = rec.at("forms");
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (i) l2 += ' ';
      const std::string f = html_escape(forms[i].get<std::string>());
      l2 += marks.count(i) ? "<mark>" + f + "</mark>" : f;
    }
    std::string out = std::string("<div class=\"example") + (counter ? " counter" : "") + "\">\n";
    out += "<div class=\"l2\">" + l2 + "</div>\n";
    const std::string translit = rec.at("transliteration").get<std::string>();
    if (!translit.empty()) out += "<div class=\"translit\">" + html_escape(translit) + "</div>\n";
    const std::string translation = rec.at("translation").get<std::string>();
    if (!translation.empty()) out += "<div class=\"translation\">" + html_escape(translation) + "</div>\n";
    out += "<div class=\"meta\">" + html_escape(ref) + "</div>\n</div>\n";
    return out;
  }

  std::string examples_html(const json& list, bool counter) const {
    std::string out;
    for (const auto& ex : list) out += example_html(ex, counter);
    return out;
  }

  // ---- rule pages ----

  std::string rule_link(const json& rule) {
    const std::string id = rule.at("id").get<std::string>();
    const std::string file = "rules/" + aspect_ + "/" + safe_name(id) + ".html";
    std::string body = "<p><a href=\"../../index.html\">" + html_escape(language()) + "</a></p>\n";
    body += "<h1>" + html_escape(id) + "</h1>\n";
    body += "<p class=\"rule\">" + html_escape(rule.at("rendered").get<std::string>()) + "</p>\n";
    if (rule.contains("p_value")) {
      body += "<p class=\"meta\">chi-squared " + format_fixed(rule.at("statistic").get<double>(), 3) + ", df " +
              std::to_string(rule.at("df").get<std::size_t>()) + ", p = " +
              format_fixed(rule.at("p_value").get<double>(), 6) + ", verdict " +
              html_escape(rule.at("verdict").get<std::string>()) + "</p>\n";
    }
    if (rule.contains("features")) {
      body += "<table>\n<tr><th>Feature</th><th>Weight</th></tr>\n";
      for (const auto& f : rule.at("features")) {
        body += "<tr><td>" + html_escape(f.at("feature").get<std::string>()) + "</td><td>" +
                format_fixed(f.at("weight").get<double>(), 4) + "</td></tr>\n";
      }
      body += "</table>\n";
    }
    body += "<h2>Examples</h2>\n";
    if (rule.at("examples").empty()) body += "<p class=\"notice\">No corpus example satisfies this rule.</p>\n";
    body += examples_html(rule.at("examples"), false);
    if (rule.contains("counter_examples") && !rule.at("counter_examples").empty()) {
      body += "<h2>Exceptions</h2>\n" + examples_html(rule.at("counter_examples"), true);
    }
    write(file, page(id, body, "../../style.css"));
    return "<a href=\"" + file + "\">examples</a>";
  }

  // ---- index ----

  std::string index() {
    std::string body = "<h1>" + html_escape(language()) + " learning materials</h1>\n";
    for (auto key : kAspects) {
      const std::string k(key);
      const json& s = b_.at(k);
      body += "<section id=\"" + k + "\">\n<h2>" + html_escape(std::string(aspect_title(key))) + "</h2>\n";
      body += "<p>" + section_summary(k, s) + " <a href=\"" + k + ".html\">Open</a></p>\n";
      body += notices_html(s);
      body += "</section>\n";
    }
    body += "<div id=\"evaluation\">\n<h2>Automatic evaluation</h2>\n";
    const auto& rows = b_.at("evaluation");
    if (rows.empty()) {
      body += "<p>No classification task completed.</p>\n";
    } else {
      body += "<table>\n<tr><th>Concept</th><th>Task</th><th>Model (rules)</th><th>Baseline</th></tr>\n";
      for (const auto& r : rows) {
        body += "<tr><td>" + html_escape(r.at("concept").get<std::string>()) + "</td><td>" +
                html_escape(r.at("task").get<std::string>()) + "</td><td>" +
                html_escape(r.at("cell").get<std::string>()) + "</td><td>" +
                html_escape(r.at("baseline_cell").get<std::string>()) + "</td></tr>\n";
      }
      body += "</table>\n";
    }
    body += "</div>\n<p class=\"meta\">seed " + std::to_string(b_.at("run").at("seed").get<std::uint64_t>()) + "</p>\n";
    return page(language() + " learning materials", body, "style.css");
  }

  static std::string count_of(std::size_t n, const std::string& one, const std::string& many) {
    return std::to_string(n) + " " + (n == 1 ? one : many);
  }

  static std::string section_summary(const std::string& key, const json& s) {
    if (key == "general_information") {
      return count_of(s.at("attributes").size(), "morphological attribute", "morphological attributes") + ".";
    }
    if (key == "vocabulary") {
      return count_of(s.at("subdivisions").size(), "word", "words") + " with several translations, " +
             count_of(s.at("categories").size(), "category", "categories") + ", " +
             count_of(s.at("adjectives").size(), "adjective", "adjectives") + ".";
    }
    return count_of(s.at("tasks").size(), "task", "tasks") + ".";
  }

  // ---- aspect pages ----

  std::string header(std::string_view key) const {
    return "<p><a href=\"index.html\">" + html_escape(language()) + "</a></p>\n<h1>" +
           html_escape(std::string(aspect_title(key))) + "</h1>\n";
  }

  std::string general_information() {
    const json& s = b_.at("general_information");
    std::string body = header("general_information") + notices_html(s);
    for (const auto& a : s.at("attributes")) {
      body += "<h2>" + html_escape(a.at("attribute").get<std::string>()) + "</h2>\n";
      body += "<table>\n<tr><th>Value</th><th>Meaning</th><th>Count</th><th>Word classes</th><th>Examples</th></tr>\n";
      for (const auto& v : a.at("values")) {
        std::string pos;
        for (const auto& [upos, n] : v.at("pos").items()) {
          if (!pos.empty()) pos += ", ";
          pos += html_escape(upos) + " " + std::to_string(n.get<std::size_t>());
        }
        std::string ex;
        for (const auto& e : v.at("examples")) {
          json ref = {{"ref", e.at("ref")}, {"head", 0}, {"dep", e.at("token")}};
          ex += "<b>" + html_escape(e.at("form").get<std::string>()) + "</b>" + example_html(ref, false);
        }
        body += "<tr><td>" + html_escape(v.at("value").get<std::string>()) + "</td><td>" +
                html_escape(v.at("phrase").get<std::string>()) + "</td><td>" +
                std::to_string(v.at("count").get<std::size_t>()) + "</td><td>" + pos + "</td><td>" + ex +
                "</td></tr>\n";
      }
      body += "</table>\n";
    }
    return page(std::string(aspect_title("general_information")), body, "style.css");
  }

  std::string class_rules_html(const json& task) {
    std::string body = evaluation_line(task.at("evaluation"));
    if (!task.at("completed").get<bool>()) {
      return "<p class=\"notice\">" + html_escape(task.at("note").get<std::string>()) + "</p>\n";
    }
    body += "<ul>\n";
    for (const auto& c : task.at("classes")) {
      body += "<li class=\"rule\">" + html_escape(c.at("rendered").get<std::string>()) + " " + rule_link(c) + "</li>\n";
    }
    body += "</ul>\n";
    return body;
  }

  std::string tree_aspect(const std::string& key) {
    const json& s = b_.at(key);
    std::string body = header(key) + notices_html(s);
    for (const auto& t : s.at("tasks")) {
      body += "<h2>" + html_escape(t.at("name").get<std::string>()) + "</h2>\n";
      if (!t.at("completed").get<bool>()) {
        body += "<p class=\"notice\">" + html_escape(t.at("note").get<std::string>()) + "</p>\n";
        continue;
      }
      body += evaluation_line(t.at("evaluation"));
      body += "<ul>\n";
      const json& d = t.at("default_rule");
      if (!d.is_null()) body += "<li class=\"rule\">" + html_escape(d.at("rendered").get<std::string>()) + " " + rule_link(d) + "</li>\n";
      for (const auto& r : t.at("rules")) {
        body += "<li class=\"rule\">" + html_escape(r.at("rendered").get<std::string>()) + " " + rule_link(r) + "</li>\n";
      }
      body += "</ul>\n";
    }
    return page(std::string(aspect_title(key)), body, "style.css");
  }

  std::string suffix_usage() {
    const json& s = b_.at("suffix_usage");
    std::string body = header("suffix_usage") + notices_html(s);
    body += "<p class=\"meta\">" + html_escape(s.at("segmentation").at("note").get<std::string>()) + "</p>\n";
    std::map<std::string, const json*> tasks;
    for (const auto& t : s.at("tasks")) tasks[t.at("name").get<std::string>()] = &t;
    for (const auto& inv : s.at("inventories")) {
      const std::string upos = inv.at("upos").get<std::string>();
      body += "<h2>" + html_escape(upos) + "</h2>\n<table>\n<tr><th>Suffix</th><th>Count</th></tr>\n";
      std::vector<std::pair<std::size_t, std::string>> rows;
      for (const auto& [suffix, n] : inv.at("suffixes").items()) rows.emplace_back(n.get<std::size_t>(), suffix);
      std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      for (const auto& [n, suffix] : rows) {
        body += "<tr><td>-" + html_escape(suffix) + "</td><td>" + std::to_string(n) + "</td></tr>\n";
      }
      body += "</table>\n";
      if (auto it = tasks.find(upos); it != tasks.end()) body += class_rules_html(*it->second);
    }
    return page(std::string(aspect_title("suffix_usage")), body, "style.css");
  }

  std::string vocabulary() {
    const json& s = b_.at("vocabulary");
    std::string body = header("vocabulary") + notices_html(s);
    body += "<h2>One word, several translations</h2>\n";
    for (const auto& d : s.at("subdivisions")) {
      body += "<h3>" + html_escape(d.at("l1").get<std::string>()) + "</h3>\n<table>\n<tr><th>Translation</th><th>Romanized</th><th>Count</th></tr>\n";
      for (const auto& c : d.at("candidates")) {
        body += "<tr><td>" + html_escape(c.at("l2").get<std::string>()) + "</td><td>" +
                html_escape(c.at("romanization").get<std::string>()) +
                (c.at("loanword").get<bool>() ? " (loanword)" : "") + "</td><td>" +
                std::to_string(c.at("count").get<std::size_t>()) + "</td></tr>\n";
      }
      body += "</table>\n" + class_rules_html(d.at("task"));
    }
    body += "<h2>Words by category</h2>\n";
    for (const auto& c : s.at("categories")) {
      body += "<h3>" + html_escape(c.at("name").get<std::string>()) + "</h3>\n<table>\n<tr><th>Word</th><th>Romanized</th><th>English</th><th>Count</th><th>Example</th></tr>\n";
      for (const auto& e : c.at("entries")) body += entry_row(e, e.at("gloss").get<std::string>());
      body += "</table>\n";
    }
    body += "<h2>Adjectives</h2>\n<table>\n<tr><th>Word</th><th>Romanized</th><th>English</th><th>Count</th><th>Example</th><th>Synonyms</th><th>Antonyms</th></tr>\n";
    for (const auto& a : s.at("adjectives")) {
      std::string row = entry_row(a, a.at("english").get<std::string>());
      row.resize(row.size() - std::string("</tr>\n").size());
      auto list = [](const json& xs) {
        std::string out;
        for (const auto& x : xs) out += (out.empty() ? "" : ", ") + html_escape(x.get<std::string>());
        return out;
      };
      body += row + "<td>" + list(a.at("synonyms")) + "</td><td>" + list(a.at("antonyms")) + "</td></tr>\n";
    }
    body += "</table>\n";
    return page(std::string(aspect_title("vocabulary")), body, "style.css");
  }

  std::string entry_row(const json& e, const std::string& english) const {
    std::string ex;
    for (const auto& x : e.at("examples")) ex += example_html(x, false);
    return "<tr><td>" + html_escape(e.at("l2").get<std::string>()) + "</td><td>" +
           html_escape(e.at("romanization").get<std::string>()) + "</td><td>" + html_escape(english) + "</td><td>" +
           std::to_string(e.at("count").get<std::size_t>()) + "</td><td>" + ex + "</td></tr>\n";
  }

  const json& b_;
  std::filesystem::path out_;
  std::vector<std::string> written_;
  std::string aspect_;
};

}  // namespace

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> emit_site(const json& bundle, const std::filesystem::path& out_dir) {
  return SiteWriter(bundle, out_dir).run();
}

}  // namespace gramex
