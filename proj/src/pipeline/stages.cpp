// Copyright 2026 The fractext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Data stages: ingest, tag, topics, series and fractal.

#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <spdlog/spdlog.h>

#include "common.hpp"
#include "fractext/corpus.hpp"
#include "fractext/error.hpp"
#include "fractext/io.hpp"
#include "fractext/lingpipe.hpp"
#include "fractext/parallel.hpp"
#include "fractext/random.hpp"
#include "fractext/series.hpp"
#include "fractext/stats.hpp"
#include "fractext/topicmodel.hpp"

namespace fractext::pipeline {

using detail::Json;
using detail::StageWriter;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) { return io::format_number(v); }

std::string key_of(const std::vector<std::string>& parts) {
  std::string material;
  for (const auto& p : parts) {
    material += p;
    material += '\x1f';
  }
  return io::sha256_hex(material);
}

corpus::CorpusManifest accepted_manifest(const RunConfig& c) {
  return corpus::load_manifest(detail::stage_dir(c, "ingest") / "accepted.tsv");
}

std::vector<lingpipe::TaggedDocument> load_tagged(const RunConfig& c,
                                                  const corpus::CorpusManifest& manifest) {
  const auto dir = detail::stage_dir(c, "tag");
  std::vector<lingpipe::TaggedDocument> docs(manifest.entries.size());
  parallel_for(docs.size(), c.jobs, [&](std::size_t i) {
    const auto& meta = manifest.entries[i];
    const auto path = dir / (meta.id + ".tsv");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("missing tagged document " + path.string());
    docs[i].meta = meta;
    docs[i].sentences = lingpipe::read_pretagged(in);
  });
  return docs;
}

std::string series_csv(const std::vector<double>& values) {
  io::CsvWriter csv({"index", "value"});
  for (std::size_t i = 0; i < values.size(); ++i) {
    csv.row({std::to_string(i + 1), num(values[i])});
  }
  return csv.str();
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
  const auto rows = io::parse_csv(io::read_text(path));
  std::vector<double> values;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw DataError("malformed series file " + path.string());
    values.push_back(io::parse_number(rows[r][1]));
  }
  return values;
}

}  // namespace

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)) {
  if (config_.jobs == 0) config_.jobs = std::max(1u, std::thread::hardware_concurrency());
}

void Pipeline::ingest() {
  const RunConfig& c = config_;
  if (c.manifest.empty()) throw UsageError("no manifest given");
  corpus::CorpusManifest manifest = corpus::load_manifest(c.manifest);
  if (c.min_tokens) manifest.min_tokens = *c.min_tokens;

  std::vector<std::string> parts = {"ingest", std::string(version()),
                                    io::file_sha256(c.manifest),
                                    std::to_string(manifest.min_tokens)};
  for (const auto& meta : manifest.entries) {
    detail::check_doc_id(meta.id);
    const auto path = manifest.resolve(meta);
    if (!std::filesystem::exists(path)) {
      throw DataError("document '" + meta.id + "': source file not found: " + path.string());
    }
    parts.push_back(meta.id + "=" + io::file_sha256(path));
  }
  const std::string key = key_of(parts);
  if (!force_ && detail::stage_current(c, "ingest", key)) {
    spdlog::info("ingest: up to date");
    skipped_.push_back("ingest");
    return;
  }
  const auto start = Clock::now();
  StageWriter out(c, "ingest", key);
  struct Row {
    std::size_t tokens = 0;
    bool accepted = false;
  };
  std::vector<Row> rows(manifest.entries.size());
  parallel_for(rows.size(), c.jobs, [&](std::size_t i) {
    const auto& meta = manifest.entries[i];
    const corpus::RawDocument raw = corpus::load_document(manifest, meta);
    const std::string cleaned = corpus::clean_text(raw.text);
    rows[i].tokens = corpus::count_whitespace_tokens(cleaned);
    rows[i].accepted = rows[i].tokens >= manifest.min_tokens;
    if (rows[i].accepted) out.write("clean/" + meta.id + ".txt", cleaned);
  });

  io::CsvWriter report({"doc_id", "title", "author", "category", "tokens", "status"});
  corpus::CorpusManifest accepted;
  accepted.min_tokens = manifest.min_tokens;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    corpus::DocumentMeta meta = manifest.entries[i];
    const std::string status = rows[i].accepted ? "ok" : "below_min_tokens";
    report.row({meta.id, meta.title, meta.author, std::string(corpus::category_name(meta.category)),
                std::to_string(rows[i].tokens), status});
    if (rows[i].accepted) {
      meta.source_path = "clean/" + meta.id + ".txt";
      accepted.entries.push_back(meta);
    } else {
      spdlog::warn("ingest: {} has {} tokens, below the minimum of {}; excluded", meta.id,
                   rows[i].tokens, manifest.min_tokens);
    }
  }
  out.write("report.csv", report.str());
  if (accepted.entries.empty()) {
    throw DataError("ingest: no document reaches min_tokens = " +
                    std::to_string(manifest.min_tokens));
  }
  out.write("accepted.tsv", corpus::format_manifest(accepted));
  out.finish({{"documents", rows.size()},
              {"accepted", accepted.entries.size()},
              {"min_tokens", manifest.min_tokens}});
  spdlog::info("ingest: {} of {} documents accepted ({:.1f} s)", accepted.entries.size(),
               rows.size(), seconds_since(start));
}

void Pipeline::tag() {
  const RunConfig& c = config_;
  const std::string ingest_key = detail::upstream_key(c, "ingest");
  const corpus::CorpusManifest manifest = accepted_manifest(c);
  const auto lexicon_path =
      c.lexicon.empty() ? lingpipe::LexiconTagger::default_lexicon_path() : c.lexicon;
  std::vector<std::string> parts = {"tag", std::string(version()), ingest_key, c.tagger,
                                    lingpipe::Abbreviations::defaults().version()};
  if (c.tagger == "lexicon") {
    parts.push_back(io::file_sha256(lexicon_path));
  } else {
    for (const auto& meta : manifest.entries) {
      parts.push_back(io::file_sha256(c.pretagged_dir / (meta.id + ".tsv")));
    }
  }
  if (!c.tagger_gold.empty()) parts.push_back(io::file_sha256(c.tagger_gold));
  const std::string key = key_of(parts);
  if (!force_ && detail::stage_current(c, "tag", key)) {
    spdlog::info("tag: up to date");
    skipped_.push_back("tag");
    return;
  }
  const auto start = Clock::now();
  std::unique_ptr<lingpipe::LexiconTagger> lexicon;
  if (c.tagger == "lexicon" || !c.tagger_gold.empty()) {
    lexicon = lingpipe::LexiconTagger::load(lexicon_path);
  }
  StageWriter out(c, "tag", key);
  std::vector<std::array<std::size_t, 2>> counts(manifest.entries.size());
  parallel_for(manifest.entries.size(), c.jobs, [&](std::size_t i) {
    const auto& meta = manifest.entries[i];
    lingpipe::TaggedDocument doc;
    if (c.tagger == "lexicon") {
      doc = lingpipe::tag_document(meta, io::read_text(manifest.resolve(meta)), *lexicon);
    } else {
      const auto path = c.pretagged_dir / (meta.id + ".tsv");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw DataError("document '" + meta.id + "': missing pretagged file " + path.string());
      doc.meta = meta;
      doc.sentences = lingpipe::read_pretagged(in);
      const lingpipe::PretaggedBackend backend;
      for (auto& s : doc.sentences) lingpipe::pos_tag(s.tokens, backend);
    }
    std::ostringstream text;
    lingpipe::write_pretagged(text, doc.sentences);
    out.write(meta.id + ".tsv", text.str());
    counts[i] = {doc.sentences.size(), doc.token_count()};
  });

  io::CsvWriter report({"doc_id", "sentences", "tokens"});
  for (std::size_t i = 0; i < counts.size(); ++i) {
    report.row({manifest.entries[i].id, std::to_string(counts[i][0]),
                std::to_string(counts[i][1])});
  }
  out.write("report.csv", report.str());

  Json summary = {{"backend", c.tagger},
                  {"abbreviations_version", lingpipe::Abbreviations::defaults().version()}};
  if (c.tagger == "lexicon") summary["lexicon_sha256"] = io::file_sha256(lexicon_path);
  if (!c.tagger_gold.empty()) {
    std::ifstream in(c.tagger_gold, std::ios::binary);
    if (!in) throw DataError("cannot read tagger gold file " + c.tagger_gold.string());
    const auto gold = lingpipe::read_pretagged(in);
    std::size_t total = 0;
    std::size_t correct = 0;
    for (const auto& s : gold) {
      std::vector<lingpipe::Token> tokens = s.tokens;
      for (auto& t : tokens) t.tag.clear();
      lexicon->tag(tokens);
      for (std::size_t k = 0; k < tokens.size(); ++k) {
        ++total;
        if (tokens[k].tag == s.tokens[k].tag) ++correct;
      }
    }
    summary["gold_tokens"] = total;
    summary["gold_accuracy"] =
        total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
    spdlog::info("tag: lexicon tagger accuracy {}/{} on the gold sample", correct, total);
  }
  out.write_json("tag.json", summary);
  out.finish({{"documents", manifest.entries.size()}});
  spdlog::info("tag: {} documents ({:.1f} s)", manifest.entries.size(), seconds_since(start));
}

void Pipeline::topics() {
  const RunConfig& c = config_;
  const std::string tag_key = detail::upstream_key(c, "tag");
  const auto& stopwords = topicmodel::Stopwords::defaults();
  const std::string key = key_of(
      {"topics", std::string(version()), tag_key, stopwords.version(), std::to_string(c.min_df),
       std::to_string(c.topic_chunk), std::to_string(c.lda.topics),
       c.lda.alpha ? num(*c.lda.alpha) : "auto", num(c.lda.beta),
       std::to_string(c.lda.iterations), std::to_string(c.seed)});
  if (!force_ && detail::stage_current(c, "topics", key)) {
    spdlog::info("topics: up to date");
    skipped_.push_back("topics");
    return;
  }
  const auto start = Clock::now();
  const corpus::CorpusManifest manifest = accepted_manifest(c);
  const auto docs = load_tagged(c, manifest);
  std::vector<std::vector<std::string>> terms(docs.size());
  parallel_for(docs.size(), c.jobs,
               [&](std::size_t i) { terms[i] = topicmodel::content_terms(docs[i], stopwords); });
  const auto vocab = topicmodel::Vocabulary::build(terms, c.min_df);

  StageWriter out(c, "topics", key);
  std::vector<topicmodel::Chunk> chunks;
  std::size_t docs_with_chunks = 0;
  if (vocab.size() > 0) {
    for (const auto& t : terms) {
      try {
        auto doc_chunks = topicmodel::segment_chunks(t, vocab, c.topic_chunk);
        ++docs_with_chunks;
        for (auto& ch : doc_chunks) chunks.push_back(std::move(ch));
      } catch (const DataError&) {
        // Too short for one chunk; the document gets no topic series.
      }
    }
  }
  Json summary = {{"vocabulary", vocab.size()},
                  {"chunks", chunks.size()},
                  {"documents_with_chunks", docs_with_chunks},
                  {"stopwords_version", stopwords.version()}};
  if (chunks.empty()) {
    spdlog::warn("topics: no chunks to train on; topic series will be unavailable");
    summary["available"] = false;
    out.write_json("topics.json", summary);
    out.finish({{"available", false}});
    return;
  }
  std::string vocab_text;
  for (const auto& term : vocab.terms()) vocab_text += term + "\n";
  out.write("vocab.txt", vocab_text);

  topicmodel::LdaConfig lda = c.lda;
  lda.seed = derive_seed(c.seed, "lda");
  spdlog::info("topics: training LDA, K = {}, V = {}, {} chunks, {} sweeps", lda.topics,
               vocab.size(), chunks.size(), lda.iterations);
  const auto model = topicmodel::train_lda(
      chunks, static_cast<int>(vocab.size()), lda, [&](int sweep, const topicmodel::TopicModel&) {
        if (sweep % 100 == 0) spdlog::info("topics: sweep {}/{}", sweep, lda.iterations);
      });
  std::ostringstream model_text;
  topicmodel::save_model(model_text, model);
  out.write("model.txt", model_text.str());

  io::CsvWriter top({"topic", "rank", "term", "count"});
  for (int k = 0; k < model.topics; ++k) {
    std::vector<int> ids(vocab.size());
    for (std::size_t v = 0; v < ids.size(); ++v) ids[v] = static_cast<int>(v);
    const std::size_t keep = std::min<std::size_t>(10, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep), ids.end(),
                      [&](int a, int b) {
                        const auto ca = model.count(k, a);
                        const auto cb = model.count(k, b);
                        return ca != cb ? ca > cb : a < b;
                      });
    for (std::size_t r = 0; r < keep; ++r) {
      top.row({std::to_string(k), std::to_string(r + 1), vocab.term(ids[r]),
               std::to_string(model.count(k, ids[r]))});
    }
  }
  out.write("top_terms.csv", top.str());
  summary["available"] = true;
  summary["topics"] = model.topics;
  summary["alpha"] = model.alpha;
  summary["beta"] = model.beta;
  summary["iterations"] = model.iterations;
  summary["lda_seed"] = model.seed;
  out.write_json("topics.json", summary);
  out.finish({{"available", true}});
  spdlog::info("topics: trained in {:.1f} s", seconds_since(start));
}

void Pipeline::series() {
  const RunConfig& c = config_;
  const std::string tag_key = detail::upstream_key(c, "tag");
  const std::string topics_key = detail::upstream_key(c, "topics");
  const std::string key =
      key_of({"series", std::string(version()), tag_key, topics_key, std::to_string(c.mtld_chunk),
              num(c.ttr_threshold), std::to_string(c.topic_chunk),
              std::to_string(c.lda.infer_sweeps), std::to_string(c.lda.infer_burn_in),
              std::to_string(c.seed)});
  if (!force_ && detail::stage_current(c, "series", key)) {
    spdlog::info("series: up to date");
    skipped_.push_back("series");
    return;
  }
  const auto start = Clock::now();
  const corpus::CorpusManifest manifest = accepted_manifest(c);
  const auto docs = load_tagged(c, manifest);

  const auto topics_dir = detail::stage_dir(c, "topics");
  std::optional<topicmodel::TopicModel> model;
  std::optional<topicmodel::Vocabulary> vocab;
  if (std::filesystem::exists(topics_dir / "model.txt")) {
    std::ifstream in(topics_dir / "model.txt", std::ios::binary);
    model = topicmodel::load_model(in);
    std::vector<std::string> terms;
    std::istringstream vt(io::read_text(topics_dir / "vocab.txt"));
    for (std::string line; std::getline(vt, line);) {
      if (!line.empty()) terms.push_back(line);
    }
    vocab = topicmodel::Vocabulary::from_terms(std::move(terms));
  }
  const auto& stopwords = topicmodel::Stopwords::defaults();
  const std::uint64_t infer_seed = derive_seed(c.seed, "topic-infer");

  StageWriter out(c, "series", key);
  constexpr std::size_t kProps = series::kAllProperties.size();
  struct Cell {
    bool ok = false;
    std::size_t length = 0;
    std::string reason;
  };
  std::vector<std::array<Cell, kProps>> cells(docs.size());
  std::vector<double> global_mtld(docs.size(), std::nan(""));

  parallel_for(docs.size() * kProps, c.jobs, [&](std::size_t job) {
    const std::size_t d = job / kProps;
    const std::size_t pi = job % kProps;
    const auto& doc = docs[d];
    const series::Property p = series::kAllProperties[pi];
    const std::string name(series::property_name(p));
    Cell& cell = cells[d][pi];
    try {
      series::TimeSeries ts;
      switch (p) {
        case series::Property::kSentenceLength:
          ts = series::sentence_length_series(doc);
          break;
        case series::Property::kMtld:
          ts = series::mtld_series(doc, c.mtld_chunk, c.ttr_threshold);
          global_mtld[d] = series::mtld(series::mtld_tokens(doc), c.ttr_threshold);
          break;
        case series::Property::kTopicJsd: {
          if (!model) throw DataError("no topic model available");
          auto ts_theta = series::topic_jsd_series(doc, *model, *vocab, stopwords, infer_seed,
                                                   c.topic_chunk, c.lda.infer_sweeps,
                                                   c.lda.infer_burn_in);
          std::vector<std::string> header = {"chunk"};
          for (int k = 0; k < model->topics; ++k) header.push_back("topic_" + std::to_string(k));
          io::CsvWriter theta(header);
          for (std::size_t i = 0; i < ts_theta.thetas.size(); ++i) {
            std::vector<std::string> row = {std::to_string(i + 1)};
            for (double v : ts_theta.thetas[i]) row.push_back(num(v));
            theta.row(row);
          }
          out.write(doc.meta.id + "/topic_theta.csv", theta.str());
          ts = std::move(ts_theta.series);
          break;
        }
        default:
          ts = series::pos_frequency_series(doc, series::property_group(p));
          break;
      }
      out.write(doc.meta.id + "/" + name + ".csv", series_csv(ts.values));
      out.write_json(doc.meta.id + "/" + name + ".json",
                     {{"doc_id", doc.meta.id},
                      {"property", name},
                      {"x_unit", std::string(series::x_unit_name(ts.x_unit))},
                      {"length", ts.values.size()}});
      cell.ok = true;
      cell.length = ts.values.size();
    } catch (const Error& e) {
      cell.reason = e.what();
      if (p == series::Property::kMtld && std::isnan(global_mtld[d])) {
        try {
          global_mtld[d] = series::mtld(series::mtld_tokens(doc), c.ttr_threshold);
        } catch (const Error&) {
        }
      }
    }
  });

  io::CsvWriter availability({"doc_id", "category", "property", "status", "length", "reason"});
  io::CsvWriter mtld_csv({"doc_id", "category", "mtld"});
  std::size_t missing = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const std::string cat(corpus::category_name(docs[d].meta.category));
    for (std::size_t pi = 0; pi < kProps; ++pi) {
      const Cell& cell = cells[d][pi];
      const std::string name(series::property_name(series::kAllProperties[pi]));
      if (!cell.ok) {
        ++missing;
        spdlog::warn("series: {} {} unavailable: {}", docs[d].meta.id, name, cell.reason);
      }
      availability.row({docs[d].meta.id, cat, name, cell.ok ? "ok" : "unavailable",
                        std::to_string(cell.length), cell.reason});
    }
    mtld_csv.row({docs[d].meta.id, cat, num(global_mtld[d])});
  }
  out.write("availability.csv", availability.str());
  out.write("global_mtld.csv", mtld_csv.str());
  out.finish({{"documents", docs.size()}, {"unavailable_series", missing},
              {"topic_inference_seed", infer_seed}});
  spdlog::info("series: {} documents, {} unavailable series ({:.1f} s)", docs.size(), missing,
               seconds_since(start));
}

void Pipeline::fractal() {
  const RunConfig& c = config_;
  const std::string series_key = detail::upstream_key(c, "series");
  const std::string key = key_of({"fractal", std::string(version()), series_key,
                                  detail::dump(Json::parse(c.echo())["mfdfa"])});
  if (!force_ && detail::stage_current(c, "fractal", key)) {
    spdlog::info("fractal: up to date");
    skipped_.push_back("fractal");
    return;
  }
  const auto start = Clock::now();
  const auto series_dir = detail::stage_dir(c, "series");
  const auto rows = io::parse_csv(io::read_text(series_dir / "availability.csv"));
  struct Job {
    std::string doc_id;
    std::string category;
    std::string property;
    std::size_t length = 0;
    double variance = std::nan("");
    std::optional<fractal::FractalSummary> summary;
    std::string status;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 6) throw DataError("malformed availability.csv");
    if (rows[r][3] != "ok") continue;
    Job j;
    j.doc_id = rows[r][0];
    j.category = rows[r][1];
    j.property = rows[r][2];
    jobs.push_back(std::move(j));
  }
  const fractal::MfdfaConfig mcfg = c.mfdfa();
  StageWriter out(c, "fractal", key);
  parallel_for(jobs.size(), c.jobs, [&](std::size_t i) {
    Job& job = jobs[i];
    const auto values = read_series_csv(series_dir / job.doc_id / (job.property + ".csv"));
    job.length = values.size();
    const std::string base = job.doc_id + "/" + job.property + "/";
    try {
      job.variance = stats::variance(values);
    } catch (const Error& e) {
      job.status = std::string("variance failed: ") + e.what();
      return;
    }
    try {
      const auto res = fractal::mfdfa(values, mcfg);
      const auto prof = fractal::profile(values);
      io::CsvWriter profile_csv({"index", "value", "profile"});
      for (std::size_t k = 0; k < values.size(); ++k) {
        profile_csv.row({std::to_string(k + 1), num(values[k]), num(prof[k])});
      }
      out.write(base + "profile.csv", profile_csv.str());

      io::CsvWriter surface({"q", "s", "windows", "F_q", "log10_s", "log10_F_q"});
      for (std::size_t qi = 0; qi < res.surface.q.size(); ++qi) {
        for (std::size_t si = 0; si < res.surface.scales.size(); ++si) {
          const double f = res.surface.at(qi, si);
          surface.row({num(res.surface.q[qi]), std::to_string(res.surface.scales[si]),
                       std::to_string(res.surface.windows_per_scale[si]), num(f),
                       num(std::log10(static_cast<double>(res.surface.scales[si]))),
                       num(std::log10(f))});
        }
      }
      out.write(base + "fq_surface.csv", surface.str());

      io::CsvWriter hq({"q", "h", "r2"});
      for (std::size_t k = 0; k < res.hurst.q.size(); ++k) {
        hq.row({num(res.hurst.q[k]), num(res.hurst.h[k]), num(res.hurst.r2[k])});
      }
      out.write(base + "hq.csv", hq.str());

      io::CsvWriter spectrum({"q", "alpha", "f"});
      for (std::size_t k = 0; k < res.spectrum.q.size(); ++k) {
        spectrum.row({num(res.spectrum.q[k]), num(res.spectrum.alpha[k]),
                      num(res.spectrum.f_alpha[k])});
      }
      out.write(base + "spectrum.csv", spectrum.str());

      const auto& s = res.summary;
      out.write_json(base + "summary.json",
                     {{"doc_id", job.doc_id},
                      {"property", job.property},
                      {"length", values.size()},
                      {"variance", job.variance},
                      {"H", s.hurst},
                      {"D", s.dimension},
                      {"A", s.asymmetry},
                      {"alpha0", s.alpha0},
                      {"alpha_min", s.alpha_min},
                      {"alpha_max", s.alpha_max},
                      {"delta_alpha_left", s.delta_left},
                      {"delta_alpha_right", s.delta_right},
                      {"degenerate", s.degenerate},
                      {"mfdfa", Json::parse(c.echo())["mfdfa"]}});
      job.summary = s;
      job.status = "ok";
    } catch (const Error& e) {
      job.status = std::string("mfdfa failed: ") + e.what();
    }
  });

  io::CsvWriter features(
      {"doc_id", "category", "property", "length", "V", "H", "D", "A", "alpha0", "degenerate",
       "status"});
  std::size_t failed = 0;
  for (const Job& job : jobs) {
    if (job.status != "ok") {
      ++failed;
      spdlog::warn("fractal: {} {}: {}", job.doc_id, job.property, job.status);
    }
    const auto& s = job.summary;
    const double nan = std::nan("");
    features.row({job.doc_id, job.category, job.property, std::to_string(job.length),
                  num(job.variance), num(s ? s->hurst : nan), num(s ? s->dimension : nan),
                  num(s ? s->asymmetry : nan), num(s ? s->alpha0 : nan),
                  s ? (s->degenerate ? "true" : "false") : "", job.status});
  }
  out.write("features.csv", features.str());
  out.finish({{"series", jobs.size()}, {"failed", failed}});
  spdlog::info("fractal: {} series, {} failed ({:.1f} s)", jobs.size(), failed,
               seconds_since(start));
}

void Pipeline::run_all() {
  ingest();
  tag();
  topics();
  series();
  fractal();
  stats();
  classify();
  report();
}

}  // namespace fractext::pipeline
