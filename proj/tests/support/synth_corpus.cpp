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

#include "synth_corpus.hpp"

#include <cstdlib>
#include <stdexcept>

#include "medforge/common/files.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/figure/raster.hpp"

namespace medforge::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& prefix) {
  std::string tmpl = (fs::temp_directory_path() / (prefix + "-XXXXXX")).string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

namespace {

const char* const kVocabulary[] = {
    "axial",      "contrast",   "enhanced",    "lesion",      "hyperintense", "cortex",     "tissue",
    "biopsy",     "showing",    "marked",      "infiltrate",  "lymphocytic",  "margin",     "necrosis",
    "arterial",   "phase",      "homogeneous", "mass",        "left",         "right",      "lobe",
    "nodular",    "thickening", "staining",    "demonstrates", "section",     "sagittal",   "coronal",
    "fibrosis",   "edema",      "periventricular", "calcified", "cystic",     "component",  "follow-up",
    "resolution", "treatment",  "patient",     "findings",    "consistent",   "with",       "the",
    "of",         "and",        "in",          "after",       "diffuse",      "focal",      "signal"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

figure::Raster Render(const SynthFigure& f) {
  const int gutter = 16, margin = 8;
  const int rows = (f.panels + f.cols - 1) / f.cols;
  const int w = 2 * margin + f.cols * f.panel_size + (f.cols - 1) * gutter;
  const int h = 2 * margin + rows * f.panel_size + (rows - 1) * gutter;
  auto img = figure::Raster::Filled(w, h, 255, 255, 255);
  for (int i = 0; i < f.panels; ++i) {
    const int x0 = margin + (i % f.cols) * (f.panel_size + gutter);
    const int y0 = margin + (i / f.cols) * (f.panel_size + gutter);
    const bool red = i >= f.panels - f.non_medical_panels;
    for (int y = 0; y < f.panel_size; ++y) {
      for (int x = 0; x < f.panel_size; ++x) {
        auto* p = img.Pixel(x0 + x, y0 + y);
        if (red) {
          p[0] = 220, p[1] = 20, p[2] = 20;
        } else {
          const auto v = static_cast<std::uint8_t>(40 + ((x * 7 + y * 13 + i * 29) % 120));
          p[0] = p[1] = p[2] = v;
        }
      }
    }
  }
  return img;
}

}  // namespace

std::string SynthWords(int n, std::uint64_t seed) {
  SeededRng rng(seed);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out.push_back(' ');
    out += kVocabulary[rng.Index(std::size(kVocabulary))];
  }
  return out;
}

std::string SynthCaption(const SynthFigure& f) {
  if (!f.labeled) return SynthWords(f.caption_words, f.text_seed * 7919 + 1) + ".";
  std::vector<std::string> spans;
  int used = 0;
  for (int i = 0; i < f.panels; ++i) {
    const int n = i == 0 && f.short_sub_caption ? *f.short_sub_caption : f.sub_caption_words;
    spans.push_back(SynthWords(n, f.text_seed * 7919 + 100 + static_cast<std::uint64_t>(i)) + ".");
    used += n + 1;
  }
  const int preamble = f.caption_words - used;
  if (preamble < 1) throw std::invalid_argument("caption_words too small for the sub-captions");
  std::string caption = SynthWords(preamble, f.text_seed * 7919 + 2) + ".";
  for (int i = 0; i < f.panels; ++i) {
    caption += std::string(" (") + static_cast<char>('A' + i) + ") " + spans[static_cast<std::size_t>(i)];
  }
  return caption;
}

void WriteArticle(const fs::path& corpus_dir, const SynthArticle& a) {
  const fs::path root = corpus_dir / a.article_id;
  fs::create_directories(root / "figures");
  std::string body, figs;
  int para = 0;
  for (const auto& f : a.figures) {
    files::WriteAtomic(root / "figures" / (f.figure_id + ".png"), figure::EncodePng(Render(f)));
    if (f.inline_words > 0) {
      body += "<p id=\"p" + std::to_string(++para) + "\">" +
              Escape(SynthWords(f.inline_words, f.text_seed * 7919 + 3)) + " (<xref ref-type=\"fig\" rid=\"" +
              f.figure_id + "\">Figure</xref>).</p>\n";
    }
    figs += "<fig id=\"" + f.figure_id + "\"><caption><p>" + Escape(SynthCaption(f)) +
            "</p></caption><graphic xlink:href=\"" + f.figure_id + "\"/></fig>\n";
  }
  const std::string xml =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<article xmlns:xlink=\"http://www.w3.org/1999/xlink\">\n"
      "<front><article-meta><article-id pub-id-type=\"pmc\">" + a.article_id + "</article-id>\n"
      "<title-group><article-title>Synthetic case " + a.article_id + "</article-title></title-group>\n"
      "<permissions><license><license-p>" + Escape(a.license) + "</license-p></license></permissions>\n"
      "</article-meta></front>\n<body><sec><title>Case</title>\n" + body + figs + "</sec></body>\n</article>\n";
  files::WriteAtomic(root / "article.xml", xml);
}

void WriteCorpus(const fs::path& corpus_dir, const std::vector<SynthArticle>& articles) {
  for (const auto& a : articles) WriteArticle(corpus_dir, a);
}

bool RedPanelClassifier::IsMedical(const figure::Raster& crop, const figure::PanelBox&) const {
  double r = 0, g = 0;
  for (std::size_t i = 0; i + 2 < crop.rgb.size(); i += 3) {
    r += crop.rgb[i];
    g += crop.rgb[i + 1];
  }
  return !(r > 2.0 * g + 1.0);
}

std::vector<SynthArticle> CleanCorpus(int n, std::uint64_t seed) {
  std::vector<SynthArticle> out;
  for (int i = 0; i < n; ++i) {
    SynthArticle a;
    char id[16];
    std::snprintf(id, sizeof(id), "PMC%06d", i + 1);
    a.article_id = id;
    SynthFigure f;
    f.panels = 2 + (i % 4);
    f.cols = f.panels <= 3 ? f.panels : 2;
    f.text_seed = seed * 1000 + static_cast<std::uint64_t>(i);
    f.caption_words = 40 + f.panels * (f.sub_caption_words + 1);
    a.figures.push_back(f);
    out.push_back(a);
  }
  return out;
}

}  // namespace medforge::testing
