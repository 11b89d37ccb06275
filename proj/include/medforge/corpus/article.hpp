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

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace medforge::corpus {

struct Paragraph {
  std::string para_id;
  std::string text;
  std::set<std::string> fig_refs;

  bool operator==(const Paragraph&) const = default;
};

struct FigureEntry {
  std::string figure_id;
  std::string graphic_path;  // relative to the package root, '/' separated
  std::string caption;
  std::map<std::string, std::string> sub_captions;

  bool operator==(const FigureEntry&) const = default;
};

struct ArticlePackage {
  std::string article_id;
  std::string license;
  std::string title;
  std::vector<Paragraph> paragraphs;
  std::vector<FigureEntry> figures;

  const FigureEntry* FindFigure(const std::string& figure_id) const;
  bool operator==(const ArticlePackage&) const = default;
};

// Reads `<root>/article.xml` (JATS subset) or, failing that,
// `<root>/article.json`. Throws MissingManifest, MalformedSource,
// DanglingGraphic or DuplicateFigureId.
ArticlePackage ParseArticle(const std::filesystem::path& package_root);

ArticlePackage ParseJatsXml(std::string_view xml, const std::filesystem::path& package_root);
ArticlePackage ParseManifestJson(std::string_view json, const std::filesystem::path& package_root);

// Manifest schema, field names as in article.json.
nlohmann::json ToManifestJson(const ArticlePackage& pkg);

// Paragraphs citing `figure_id`, in document order, joined by one blank
// line. Throws UnknownFigureId.
std::string ExtractInlineText(const ArticlePackage& pkg, const std::string& figure_id);

// Package directories (those holding article.xml or article.json) directly
// under `corpus_dir`, sorted by name.
std::vector<std::filesystem::path> ListPackages(const std::filesystem::path& corpus_dir);

}  // namespace medforge::corpus
