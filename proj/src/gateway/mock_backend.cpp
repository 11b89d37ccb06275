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

#include "medforge/gateway/mock_backend.hpp"

#include <cctype>
#include <cmath>
#include <set>

#include "medforge/common/digest.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/common/text.hpp"

namespace medforge::gateway {

std::map<std::string, std::string> MockOptions::DefaultFixtures() {
  return {
      {"stage1", "SUMMARY: {sentences:INLINE_TEXT|CAPTION:2}"},
      {"stage2",
       "CONCEPT: {term:CAPTION:1}\nEXPLANATION: {sentences:SUMMARY|CAPTION:1}\n\n"
       "CONCEPT: {term:CAPTION:2}\nEXPLANATION: {sentences:CAPTION:1}"},
      {"stage3", "DESCRIPTION: {sentences:SUB_CAPTION|CAPTION:1}"},
      {"stage4_multi_subimage",
       "CONTEXT: {sentences:SUMMARY|CAPTION:2}\n"
       "QUESTION: Taking the sub-images together, what do they show about {term:CAPTION:1}?\n"
       "ANSWER: {sentences:DESCRIPTIONS|CAPTION:2}"},
      {"stage4_single_subimage",
       "CONTEXT: {sentences:SUMMARY|CAPTION:2}\n"
       "QUESTION: What is shown in sub-image {section:TARGET_PANEL}?\n"
       "ANSWER: {section:TARGET_DESCRIPTION|DESCRIPTIONS}"},
      {"stage4_single_image",
       "CONTEXT: {sentences:SUMMARY|CAPTION:2}\n"
       "QUESTION: What does this figure demonstrate as a whole?\n"
       "ANSWER: {sentences:CAPTION:1}"},
      {"stage4_text_only",
       "CONTEXT: {sentences:SUMMARY|CAPTION:2}\n"
       "QUESTION: What is the relevance of {term:KNOWLEDGE|CAPTION:1} in this case?\n"
       "ANSWER: {sentences:KNOWLEDGE|CAPTION:1}"},
      {"stage4_multi_choice",
       "CONTEXT: {sentences:SUMMARY|CAPTION:2}\n"
       "QUESTION: Which finding is shown in the figure?\n"
       "OPTIONS:\n"
       "A) {sentences:DESCRIPTIONS|CAPTION:1}\n"
       "B) {term:CAPTION:3}\n"
       "C) {term:CAPTION:4}\n"
       "D) {term:CAPTION:5}\n"
       "ANSWER: A"},
      {"stage5", "CONTEXT: {section:CONTEXT}"},
      {"judge", "{judge}"},
      {"tagger", "{{\"modality\": \"{tag:modality}\", \"anatomy\": \"{tag:anatomy}\"}}"},
  };
}

MockOptions MockOptions::FromJson(const nlohmann::json& j) {
  MockOptions o;
  try {
    if (j.contains("fixtures")) o.fixtures = j.at("fixtures").get<std::map<std::string, std::string>>();
    if (j.contains("embeddings")) {
      o.embeddings = j.at("embeddings").get<std::map<std::string, std::vector<double>>>();
    }
    o.embedding_dim = j.value("embedding_dim", o.embedding_dim);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidConfig, std::string("mock options: ") + e.what());
  }
  if (o.embedding_dim < 1) throw Error(Errc::kInvalidConfig, "mock embedding_dim must be >= 1");
  return o;
}

std::string TaskMarker(std::string_view task) { return "[task:" + std::string(task) + "]"; }

std::string Section(std::string_view name, std::string_view body) {
  return "<<" + std::string(name) + ">>\n" + std::string(body) + "\n<</" + std::string(name) + ">>\n";
}

std::string ExtractSection(std::string_view text, std::string_view name) {
  const std::string open = "<<" + std::string(name) + ">>";
  const std::string close = "<</" + std::string(name) + ">>";
  const auto b = text.find(open);
  if (b == std::string_view::npos) return {};
  const auto start = b + open.size();
  const auto e = text.find(close, start);
  if (e == std::string_view::npos) return {};
  return text::Trim(text.substr(start, e - start));
}

namespace {

bool Contains(const std::string& hay, std::initializer_list<const char*> needles) {
  for (const char* n : needles) {
    if (hay.find(n) != std::string::npos) return true;
  }
  return false;
}

// Pads with spaces so word-boundary needles such as " ct " match at the ends.
std::string Padded(std::string_view caption) {
  std::string s = " ";
  for (char c : text::ToLowerAscii(caption)) {
    s.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '&' || c == '/' ? c : ' ');
  }
  s.push_back(' ');
  return s;
}

std::string FirstNonEmptySection(std::string_view text, std::string_view names) {
  std::size_t pos = 0;
  while (pos <= names.size()) {
    auto bar = names.find('|', pos);
    if (bar == std::string_view::npos) bar = names.size();
    auto s = ExtractSection(text, names.substr(pos, bar - pos));
    if (!s.empty()) return s;
    pos = bar + 1;
  }
  return {};
}

std::vector<std::string> Terms(std::string_view s) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& raw : text::SplitWhitespace(s)) {
    std::size_t b = 0, e = raw.size();
    while (b < e && !std::isalpha(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && !std::isalpha(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string w = raw.substr(b, e - b);
    if (w.size() < 6) continue;
    bool alpha = true;
    for (char c : w) alpha = alpha && std::isalpha(static_cast<unsigned char>(c));
    if (!alpha) continue;
    if (seen.insert(text::ToLowerAscii(w)).second) out.push_back(w);
  }
  return out;
}

double JudgeScore(const std::string& response, const std::string& reference) {
  const auto a = text::MetricTokens(response);
  const auto b = text::MetricTokens(reference);
  if (a == b) return 2.0;
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (const auto& t : sa) inter += sb.count(t);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::string JudgeVerdict(std::string_view text) {
  const auto ref = ExtractSection(text, "REFERENCE");
  const double a = JudgeScore(ExtractSection(text, "RESPONSE_A"), ref);
  const double b = JudgeScore(ExtractSection(text, "RESPONSE_B"), ref);
  std::string winner = "tie";
  if (std::fabs(a - b) > 1e-12) winner = a > b ? "A" : "B";
  char buf[96];
  std::snprintf(buf, sizeof(buf), "overlap with reference: A %.4f, B %.4f", a, b);
  return nlohmann::json{{"winner", winner}, {"rationale", buf}}.dump();
}

std::size_t ParseCount(const std::string& s) {
  try {
    return static_cast<std::size_t>(std::stoul(s));
  } catch (const std::exception&) {
    return 0;
  }
}

std::string Expand(const std::string& directive, std::string_view text, const std::string& digest) {
  if (directive == "digest") return digest.substr(0, 12);
  if (directive == "judge") return JudgeVerdict(text);
  const auto colon = directive.find(':');
  if (colon == std::string::npos) return "{" + directive + "}";
  const std::string op = directive.substr(0, colon);
  std::string rest = directive.substr(colon + 1);
  if (op == "tag") {
    const auto caption = ExtractSection(text, "CAPTION");
    if (rest == "modality") return KeywordModality(caption);
    if (rest == "anatomy") return KeywordAnatomy(caption);
    return "other";
  }
  if (op == "section") return FirstNonEmptySection(text, rest);
  const auto colon2 = rest.rfind(':');
  if (colon2 == std::string::npos) return "{" + directive + "}";
  const std::string names = rest.substr(0, colon2);
  const std::size_t n = ParseCount(rest.substr(colon2 + 1));
  const std::string src = FirstNonEmptySection(text, names);
  if (op == "words") return text::FirstWords(src, n);
  if (op == "sentences") {
    auto sentences = text::SplitSentences(src);
    if (sentences.size() > n) sentences.resize(n);
    return text::Join(sentences, " ");
  }
  if (op == "term") {
    const auto terms = Terms(src);
    return n >= 1 && n <= terms.size() ? terms[n - 1] : std::string();
  }
  return "{" + directive + "}";
}

std::string Render(const std::string& tmpl, std::string_view text, const std::string& digest) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const char c = tmpl[i];
    if (c == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      out.push_back('{');
      ++i;
    } else if (c == '}' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
      out.push_back('}');
      ++i;
    } else if (c == '{') {
      const auto end = tmpl.find('}', i);
      if (end == std::string::npos) {
        out += tmpl.substr(i);
        break;
      }
      out += Expand(tmpl.substr(i + 1, end - i - 1), text, digest);
      i = end;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string FindTask(std::string_view s) {
  const auto b = s.find("[task:");
  if (b == std::string_view::npos) return {};
  const auto e = s.find(']', b);
  if (e == std::string_view::npos) return {};
  return std::string(s.substr(b + 6, e - b - 6));
}

std::vector<double> PseudoRandomUnit(const std::string& digest, std::size_t index, int dim) {
  SeededRng rng(DeriveSeed(0, digest + "/" + std::to_string(index)));
  std::vector<double> v(static_cast<std::size_t>(dim));
  double norm2 = 0;
  do {
    norm2 = 0;
    for (auto& x : v) {
      x = rng.Unit() * 2.0 - 1.0;
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

}  // namespace

std::string KeywordModality(std::string_view caption) {
  const std::string s = Padded(caption);
  std::vector<std::string> hits;
  if (Contains(s, {"pet-ct", "pet/ct", " pet ", "positron"})) hits.push_back("PET-CT");
  if (Contains(s, {"histopatholog", "histolog", " h&e", "hematoxylin", "haematoxylin", "biopsy"})) {
    hits.push_back("histopathology");
  }
  if (Contains(s, {" mri ", "magnetic resonance", " t1-", " t2-", " flair ", "diffusion-weighted"})) {
    hits.push_back("MRI");
  }
  if (hits.empty() || hits.front() != "PET-CT") {
    if (Contains(s, {" ct ", "computed tomograph", " cta ", " hrct "})) hits.push_back("CT");
  }
  if (Contains(s, {"ultrasound", "sonograph", "echocardiog", "doppler", "ultrasonograph"})) {
    hits.push_back("ultrasound");
  }
  if (Contains(s, {"x-ray", "radiograph", "mammogra", "angiogra"})) hits.push_back("X-ray");
  if (Contains(s, {"microscop", "immunofluoresc", "confocal", "immunohistochem", "magnification"})) {
    hits.push_back("microscopy");
  }
  if (Contains(s, {"photograph", "dermoscop", "endoscop", "clinical image", "clinical appearance"})) {
    hits.push_back("clinical photography");
  }
  if (hits.empty()) return "other";
  if (hits.size() > 1) return "multimodal composite";
  return hits.front();
}

std::string KeywordAnatomy(std::string_view caption) {
  const std::string s = Padded(caption);
  struct Rule {
    const char* name;
    std::initializer_list<const char*> needles;
  };
  const Rule rules[] = {
      {"neurological", {" brain", "cerebr", "neuro", "spinal cord", "cortex", "hippocamp", " nerve"}},
      {"ophthalmology", {"retina", " eye ", " eyes ", "ocular", "cornea", "ophthalm", " fundus"}},
      {"cardiovascular", {" heart", "cardi", " aort", "arter", "vascular", " vein", "ventric", "coronary"}},
      {"respiratory", {" lung", "pulmon", "bronch", "trache", "pleura", "alveol"}},
      {"gastrointestinal",
       {" liver", "hepat", "pancrea", "stomach", "gastr", "intestin", " colon", "bowel", "esophag", "duoden"}},
      {"musculoskeletal",
       {" bone", " joint", " muscle", "skelet", "cartilage", "tendon", "fracture", " femur", " spine ", "vertebr"}},
      {"reproductive", {" uter", " ovar", "prostat", "testi", "cervix", "cervical cancer", "placent", "endometri"}},
      {"dermatology", {" skin", "dermat", "cutaneous", "melanom", "epiderm"}},
  };
  for (const auto& r : rules) {
    if (Contains(s, r.needles)) return r.name;
  }
  return "other";
}

MockBackend::MockBackend(MockOptions options) : options_(std::move(options)) {
  auto merged = MockOptions::DefaultFixtures();
  for (auto& [k, v] : options_.fixtures) merged[k] = v;
  options_.fixtures = std::move(merged);
}

Reply MockBackend::Complete(const ModelCall& call, const std::string& digest) const {
  Reply r;
  std::int64_t prompt_words = static_cast<std::int64_t>(text::WordCount(call.system_prompt));
  for (const auto& p : call.parts) prompt_words += static_cast<std::int64_t>(text::WordCount(p.text));
  r.usage.prompt_tokens = prompt_words;
  if (call.kind == CallKind::kEmbed) {
    for (std::size_t i = 0; i < call.parts.size(); ++i) {
      auto it = options_.embeddings.find(call.parts[i].text);
      r.vectors.push_back(it != options_.embeddings.end()
                              ? it->second
                              : PseudoRandomUnit(digest, i, options_.embedding_dim));
    }
    return r;
  }
  const std::string user = call.JoinedText();
  std::string task = FindTask(call.system_prompt);
  if (task.empty()) task = FindTask(user);
  std::string body;
  if (auto it = options_.fixtures.find(task); it != options_.fixtures.end()) body = Render(it->second, user, digest);
  r.text = std::string(kMockReplyPrefix) + digest.substr(0, 12) + "\n" + body;
  r.usage.completion_tokens = static_cast<std::int64_t>(text::WordCount(r.text));
  return r;
}

}  // namespace medforge::gateway
