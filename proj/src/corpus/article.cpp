// Copyright 2026 The medforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medforge/corpus/article.hpp"

#include <expat.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"
#include "medforge/common/text.hpp"
#include "medforge/figure/labels.hpp"

namespace medforge::corpus {
namespace fs = std::filesystem;

namespace {

// Resolves a graphic reference to a file inside the package. JATS hrefs
// often omit the directory or the extension.
std::string ResolveGraphic(const fs::path& root, const std::string& href, const std::string& figure_id) {
  if (href.empty()) {
    throw Error(Errc::kDanglingGraphic, "figure " + figure_id + " has no graphic reference",
                {{"figure_id", figure_id}});
  }
  const fs::path canonical_root = fs::weakly_canonical(root);
  static const char* kExtensions[] = {"", ".png", ".jpg", ".jpeg", ".PNG", ".JPG", ".JPEG"};
  for (const fs::path& base : {fs::path("figures") / href, fs::path(href)}) {
    for (const char* ext : kExtensions) {
      fs::path rel = base;
      rel += ext;
      fs::path full = fs::weakly_canonical(root / rel);
      auto inside = fs::relative(full, canonical_root);
      if (inside.empty() || *inside.begin() == "..") continue;
      if (fs::is_regular_file(full)) return inside.generic_string();
    }
  }
  throw Error(Errc::kDanglingGraphic,
              "figure " + figure_id + " references missing image '" + href + "'",
              {{"figure_id", figure_id}, {"graphic", href}});
}

std::string LicenseFromHref(const std::string& href) {
  std::string h = text::ToLowerAscii(href);
  if (h.find("publicdomain/zero") != std::string::npos) return "CC0";
  auto pos = h.find("/licenses/");
  if (pos == std::string::npos) return "";
  std::string kind = h.substr(pos + 10);
  kind = kind.substr(0, kind.find('/'));
  if (kind.empty()) return "";
  std::string upper;
  for (char c : kind) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return "CC " + upper;
}

void DropUnknownRefs(ArticlePackage& pkg) {
  std::set<std::string> ids;
  for (const auto& f : pkg.figures) ids.insert(f.figure_id);
  for (auto& p : pkg.paragraphs) {
    for (auto it = p.fig_refs.begin(); it != p.fig_refs.end();) {
      if (ids.count(*it)) {
        ++it;
      } else {
        spdlog::warn("{}: paragraph {} cites unknown figure '{}'; reference dropped", pkg.article_id,
                     p.para_id, *it);
        it = p.fig_refs.erase(it);
      }
    }
  }
}

void CheckFigureIds(const ArticlePackage& pkg) {
  std::set<std::string> seen;
  for (const auto& f : pkg.figures) {
    if (f.figure_id.empty()) throw Error(Errc::kMalformedSource, "figure without id");
    if (!seen.insert(f.figure_id).second) {
      throw Error(Errc::kDuplicateFigureId, "figure id '" + f.figure_id + "' appears twice",
                  {{"figure_id", f.figure_id}});
    }
  }
}

// ---------------------------------------------------------------- JATS

class JatsReader {
 public:
  explicit JatsReader(fs::path root) : root_(std::move(root)) {}

  ArticlePackage Read(std::string_view xml) {
    XML_Parser parser = XML_ParserCreate(nullptr);
    XML_SetUserData(parser, this);
    XML_SetElementHandler(parser, &JatsReader::OnStart, &JatsReader::OnEnd);
    XML_SetCharacterDataHandler(parser, &JatsReader::OnText);
    const auto status = XML_Parse(parser, xml.data(), static_cast<int>(xml.size()), XML_TRUE);
    if (status != XML_STATUS_OK) {
      nlohmann::json where = {{"line", XML_GetCurrentLineNumber(parser)},
                              {"column", XML_GetCurrentColumnNumber(parser)}};
      std::string msg = std::string("article.xml line ") + std::to_string(where["line"].get<long>()) +
                        ", column " + std::to_string(where["column"].get<long>()) + ": " +
                        XML_ErrorString(XML_GetErrorCode(parser));
      XML_ParserFree(parser);
      throw Error(Errc::kMalformedSource, msg, where);
    }
    XML_ParserFree(parser);
    return Finish();
  }

 private:
  struct PendingFigure {
    std::string id;
    std::string href;
    std::string caption;
  };

  static void OnStart(void* self, const XML_Char* name, const XML_Char** attrs) {
    static_cast<JatsReader*>(self)->Start(name, attrs);
  }
  static void OnEnd(void* self, const XML_Char* name) { static_cast<JatsReader*>(self)->End(name); }
  static void OnText(void* self, const XML_Char* s, int len) {
    static_cast<JatsReader*>(self)->Text(std::string_view(s, static_cast<std::size_t>(len)));
  }

  static std::string Attr(const XML_Char** attrs, std::string_view key) {
    for (int i = 0; attrs[i]; i += 2) {
      if (key == attrs[i]) return attrs[i + 1];
    }
    return "";
  }

  static bool IsBlock(std::string_view name) {
    return name == "p" || name == "title" || name == "list-item" || name == "sec" || name == "label";
  }

  bool Inside(std::string_view name) const {
    return std::find(stack_.begin(), stack_.end(), name) != stack_.end();
  }

  void Start(std::string_view name, const XML_Char** attrs) {
    static const std::set<std::string_view> kKnown = {
        "article", "front", "article-meta", "article-id", "title-group", "article-title", "permissions",
        "license", "license-p", "body", "sec", "title", "p", "xref", "fig", "label", "caption", "graphic",
        "back", "journal-meta", "abstract", "italic", "bold", "sup", "sub", "underline", "sc",
        "monospace", "ext-link", "named-content", "list", "list-item", "break", "fig-group",
        "copyright-statement", "copyright-year", "journal-id", "journal-title", "contrib-group",
        "contrib", "name", "surname", "given-names", "aff", "pub-date", "day", "month", "year"};
    if (!kKnown.count(name) && warned_.insert(std::string(name)).second) {
      spdlog::warn("{}: skipping unsupported JATS element <{}>", root_.filename().string(), name);
    }

    if (capture_ && IsBlock(name)) capture_->push_back(' ');

    if (name == "article-id") {
      std::string type = Attr(attrs, "pub-id-type");
      if (article_id_.empty() || type == "pmc" || type == "pmcid") {
        article_id_.clear();
        article_id_pmc_ = type == "pmc" || type == "pmcid";
        Begin(&article_id_);
      }
    } else if (name == "article-title" && !Inside("ref-list") && title_.empty()) {
      Begin(&title_);
    } else if (name == "license") {
      std::string type = Attr(attrs, "license-type");
      std::string href = Attr(attrs, "xlink:href");
      if (href.empty()) href = Attr(attrs, "href");
      if (text::StartsWith(text::ToLowerAscii(type), "cc")) {
        license_ = type;
      } else if (auto mapped = LicenseFromHref(href); !mapped.empty()) {
        license_ = mapped;
      } else {
        Begin(&license_text_);
      }
    } else if (name == "fig") {
      figures_.push_back({Attr(attrs, "id"), "", ""});
      in_fig_ = true;
    } else if (name == "caption" && in_fig_) {
      Begin(&figures_.back().caption);
    } else if (name == "graphic" && in_fig_) {
      std::string href = Attr(attrs, "xlink:href");
      if (href.empty()) href = Attr(attrs, "href");
      if (figures_.back().href.empty()) figures_.back().href = href;
    } else if (name == "p" && Inside("body") && !in_fig_ && !capture_) {
      Paragraph p;
      p.para_id = Attr(attrs, "id");
      if (p.para_id.empty()) p.para_id = "p" + std::to_string(paragraphs_.size() + 1);
      paragraphs_.push_back(std::move(p));
      para_depth_ = stack_.size();
      Begin(&paragraphs_.back().text);
    } else if (name == "xref" && para_depth_ && Attr(attrs, "ref-type") == "fig") {
      for (auto& rid : text::SplitWhitespace(Attr(attrs, "rid"))) paragraphs_.back().fig_refs.insert(rid);
    }
    stack_.emplace_back(name);
  }

  void End(std::string_view name) {
    stack_.pop_back();
    if (capture_ && capture_depth_ == stack_.size()) {
      capture_ = nullptr;
      if (para_depth_ == stack_.size()) para_depth_ = 0;
    } else if (capture_ && IsBlock(name)) {
      capture_->push_back(' ');
    }
    if (name == "fig") in_fig_ = false;
  }

  void Text(std::string_view s) {
    if (capture_) capture_->append(s);
  }

  void Begin(std::string* target) {
    if (capture_) return;
    capture_ = target;
    capture_depth_ = stack_.size();
  }

  ArticlePackage Finish() {
    ArticlePackage pkg;
    pkg.article_id = text::NormalizeWhitespace(article_id_);
    if (pkg.article_id.empty()) pkg.article_id = root_.filename().string();
    if (article_id_pmc_ && !text::StartsWith(pkg.article_id, "PMC")) pkg.article_id = "PMC" + pkg.article_id;
    pkg.license = text::NormalizeWhitespace(license_.empty() ? license_text_ : license_);
    pkg.title = text::NormalizeWhitespace(title_);
    for (auto& p : paragraphs_) {
      p.text = text::NormalizeWhitespace(p.text);
      pkg.paragraphs.push_back(std::move(p));
    }
    for (auto& f : figures_) {
      FigureEntry e;
      e.figure_id = f.id;
      e.caption = text::NormalizeWhitespace(f.caption);
      e.sub_captions = figure::ParsePanelLabels(e.caption).AsMap();
      e.graphic_path = f.href;  // resolved after id checks
      pkg.figures.push_back(std::move(e));
    }
    CheckFigureIds(pkg);
    for (auto& e : pkg.figures) e.graphic_path = ResolveGraphic(root_, e.graphic_path, e.figure_id);
    DropUnknownRefs(pkg);
    return pkg;
  }

  fs::path root_;
  std::vector<std::string> stack_;
  std::set<std::string> warned_;
  std::string* capture_ = nullptr;
  std::size_t capture_depth_ = 0;
  std::size_t para_depth_ = 0;
  bool in_fig_ = false;
  bool article_id_pmc_ = false;
  std::string article_id_;
  std::string title_;
  std::string license_;
  std::string license_text_;
  std::vector<Paragraph> paragraphs_;
  std::vector<PendingFigure> figures_;
};

}  // namespace

const FigureEntry* ArticlePackage::FindFigure(const std::string& figure_id) const {
  for (const auto& f : figures) {
    if (f.figure_id == figure_id) return &f;
  }
  return nullptr;
}

ArticlePackage ParseJatsXml(std::string_view xml, const fs::path& package_root) {
  return JatsReader(package_root).Read(xml);
}

ArticlePackage ParseManifestJson(std::string_view json, const fs::path& package_root) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::kMalformedSource, std::string("article.json: ") + e.what(),
                {{"byte", e.byte}});
  }
  ArticlePackage pkg;
  try {
    pkg.article_id = text::NormalizeWhitespace(j.at("article_id").get<std::string>());
    pkg.license = text::NormalizeWhitespace(j.value("license", ""));
    pkg.title = text::NormalizeWhitespace(j.value("title", ""));
    for (const auto& pj : j.value("paragraphs", nlohmann::json::array())) {
      Paragraph p;
      p.para_id = pj.at("para_id").get<std::string>();
      p.text = text::NormalizeWhitespace(pj.at("text").get<std::string>());
      for (const auto& r : pj.value("fig_refs", nlohmann::json::array())) p.fig_refs.insert(r.get<std::string>());
      pkg.paragraphs.push_back(std::move(p));
    }
    for (const auto& fj : j.value("figures", nlohmann::json::array())) {
      FigureEntry f;
      f.figure_id = fj.at("figure_id").get<std::string>();
      f.graphic_path = fj.at("graphic").get<std::string>();
      f.caption = text::NormalizeWhitespace(fj.value("caption", ""));
      for (const auto& [label, sub] : fj.value("sub_captions", nlohmann::json::object()).items()) {
        f.sub_captions[label] = text::NormalizeWhitespace(sub.get<std::string>());
      }
      pkg.figures.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformedSource, std::string("article.json: ") + e.what());
  }
  if (pkg.article_id.empty()) throw Error(Errc::kMalformedSource, "article.json: empty article_id");
  CheckFigureIds(pkg);
  for (auto& f : pkg.figures) f.graphic_path = ResolveGraphic(package_root, f.graphic_path, f.figure_id);
  DropUnknownRefs(pkg);
  return pkg;
}

ArticlePackage ParseArticle(const fs::path& package_root) {
  const auto xml = package_root / "article.xml";
  const auto json = package_root / "article.json";
  if (fs::is_regular_file(xml)) return ParseJatsXml(files::ReadText(xml), package_root);
  if (fs::is_regular_file(json)) return ParseManifestJson(files::ReadText(json), package_root);
  throw Error(Errc::kMissingManifest,
              "neither article.xml nor article.json in " + package_root.string());
}

nlohmann::json ToManifestJson(const ArticlePackage& pkg) {
  nlohmann::json j;
  j["article_id"] = pkg.article_id;
  j["license"] = pkg.license;
  j["title"] = pkg.title;
  j["paragraphs"] = nlohmann::json::array();
  for (const auto& p : pkg.paragraphs) {
    j["paragraphs"].push_back(
        {{"para_id", p.para_id}, {"text", p.text}, {"fig_refs", std::vector<std::string>(p.fig_refs.begin(), p.fig_refs.end())}});
  }
  j["figures"] = nlohmann::json::array();
  for (const auto& f : pkg.figures) {
    nlohmann::json subs = nlohmann::json::object();
    for (const auto& [k, v] : f.sub_captions) subs[k] = v;
    j["figures"].push_back(
        {{"figure_id", f.figure_id}, {"graphic", f.graphic_path}, {"caption", f.caption}, {"sub_captions", subs}});
  }
  return j;
}

std::string ExtractInlineText(const ArticlePackage& pkg, const std::string& figure_id) {
  if (!pkg.FindFigure(figure_id)) {
    throw Error(Errc::kUnknownFigureId, "figure '" + figure_id + "' not in " + pkg.article_id,
                {{"figure_id", figure_id}});
  }
  std::vector<std::string> parts;
  for (const auto& p : pkg.paragraphs) {
    if (p.fig_refs.count(figure_id)) parts.push_back(p.text);
  }
  return text::Join(parts, "\n\n");
}

std::vector<fs::path> ListPackages(const fs::path& corpus_dir) {
  if (!fs::is_directory(corpus_dir)) {
    throw Error(Errc::kIoError, "corpus directory not found: " + corpus_dir.string());
  }
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (!entry.is_directory()) continue;
    if (fs::exists(entry.path() / "article.xml") || fs::exists(entry.path() / "article.json")) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace medforge::corpus
