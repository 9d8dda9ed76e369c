// Copyright 2026 The mrtk Authors.
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

#include "mrtk/cli.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mrtk/annotation_json.h"
#include "mrtk/errors.h"
#include "mrtk/penman.h"
#include "mrtk/resources.h"
#include "mrtk/server.h"
#include "mrtk/session.h"

namespace mrtk {

namespace {

namespace fs = std::filesystem;

std::string ReadText(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error("write failed for " + path.string());
}

using Converter = std::function<std::string(const fs::path &, const std::string &)>;

struct Job {
  fs::path input;
  fs::path output;
};

int ConvertTree(const fs::path &in, const std::optional<fs::path> &out,
                const std::string &from_ext, const std::string &to_ext,
                const Converter &convert, std::ostream &err,
                ConvertStats *stats) {
  std::error_code ec;
  std::vector<Job> jobs;
  if (fs::is_directory(in, ec)) {
    const fs::path root = out.value_or(in);
    fs::recursive_directory_iterator it(in, ec), end;
    if (ec) {
      err << "cannot read directory " << in.string() << ": " << ec.message()
          << "\n";
      return kExitUsage;
    }
    for (; it != end; it.increment(ec)) {
      if (ec) {
        err << "cannot read directory " << in.string() << ": " << ec.message()
            << "\n";
        return kExitUsage;
      }
      if (!it->is_regular_file() || it->path().extension() != from_ext) continue;
      fs::path target = root / fs::relative(it->path(), in);
      target.replace_extension(to_ext);
      jobs.push_back({it->path(), target});
    }
  } else if (fs::is_regular_file(in, ec)) {
    fs::path target;
    if (out && fs::is_directory(*out)) {
      target = *out / in.filename();
      target.replace_extension(to_ext);
    } else if (out) {
      target = *out;
    } else {
      target = in;
      target.replace_extension(to_ext);
    }
    jobs.push_back({in, target});
  } else {
    err << "cannot read " << in.string() << "\n";
    return kExitUsage;
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const Job &a, const Job &b) { return a.input < b.input; });

  // Directories first, serially; each file is then written independently.
  for (const Job &job : jobs) {
    if (job.output.has_parent_path()) {
      fs::create_directories(job.output.parent_path(), ec);
    }
  }
  const int n = static_cast<int>(jobs.size());
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      if (fs::equivalent(jobs[i].input, jobs[i].output)) {
        throw Error("refusing to overwrite the input");
      }
    } catch (const fs::filesystem_error &) {
      // The output does not exist yet.
    } catch (const std::exception &e) {
      errors[i] = e.what();
      continue;
    }
    try {
      WriteText(jobs[i].output, convert(jobs[i].input, ReadText(jobs[i].input)));
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }

  ConvertStats s;
  for (int i = 0; i < n; ++i) {
    if (errors[i].empty()) {
      ++s.converted;
    } else {
      ++s.failed;
      err << jobs[i].input.string() << ": " << errors[i] << "\n";
    }
  }
  if (stats != nullptr) *stats = s;
  return s.failed == 0 ? kExitOk : kExitFailures;
}

std::string Fixed(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

nlohmann::ordered_json ScoreJson(const SmatchScore &s) {
  return {{"precision", s.precision}, {"recall", s.recall},
          {"f1", s.f1},               {"matched", s.matched},
          {"predicted", s.total_left}, {"gold", s.total_right}};
}

void AddTable(std::ostringstream &out, const std::string &heading,
              const std::vector<std::pair<std::string, SmatchScore>> &rows) {
  size_t width = heading.size();
  for (const auto &row : rows) width = std::max(width, row.first.size());
  out << std::left << std::setw(static_cast<int>(width)) << heading
      << "  P       R       F1      matched/pred/gold\n";
  for (const auto &[name, s] : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << name << "  "
        << Fixed(s.precision) << "  " << Fixed(s.recall) << "  " << Fixed(s.f1)
        << "  " << s.matched << "/" << s.total_left << "/" << s.total_right
        << "\n";
  }
}

int AnnotateCommand(const std::string &annotator,
                    const std::optional<std::string> &scheme,
                    const std::optional<fs::path> &resource_dir,
                    const std::string &host, int port,
                    const std::optional<fs::path> &file,
                    const std::optional<fs::path> &static_dir, bool check,
                    std::ostream &out, std::ostream &err) {
  SessionOptions options;
  options.annotator = annotator;
  try {
    options.resources = LoadResources(scheme, resource_dir);
  } catch (const ResourceError &e) {
    err << "annotate: " << e.what() << "\n";
    return kExitUsage;
  }
  if (check) {
    out << "annotator: " << annotator << "\n"
        << "scheme: " << options.resources.scheme << "\n"
        << "concepts: " << options.resources.concepts.size() << "\n"
        << "relations: " << options.resources.relations.size() << "\n";
    return kExitOk;
  }

  // Signals are taken synchronously by this thread; server threads inherit
  // the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Session session(options);
  if (file) {
    try {
      OpenInfo info = session.Open(*file);
      out << "opened " << info.source.string() << " ("
          << info.sentences << " sentences"
          << (info.from_claim ? ", from " + info.claim_path.string() : "")
          << ")\n";
    } catch (const std::exception &e) {
      err << "annotate: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  ServerOptions server_options;
  server_options.host = host;
  server_options.port = port;
  if (static_dir) server_options.static_dir = *static_dir;
  Server server(session, server_options);
  int bound = 0;
  try {
    bound = server.Bind();
  } catch (const Error &e) {
    err << "annotate: " << e.what() << "\n";
    return kExitUsage;
  }
  out << "serving " << options.resources.scheme << " resources for "
      << annotator << " at http://" << host << ":" << bound << "/\n"
      << std::flush;
  std::thread listener([&server] { server.Listen(); });
  int received = 0;
  sigwait(&signals, &received);
  server.Stop();
  listener.join();
  session.Flush();
  if (auto error = session.TakeAutosaveError()) {
    err << "annotate: " << *error << "\n";
    return kExitFailures;
  }
  return kExitOk;
}

}  // namespace

int JsonToPenmanCommand(const fs::path &in, const std::optional<fs::path> &out,
                        std::ostream &err, ConvertStats *stats) {
  return ConvertTree(
      in, out, ".json", ".penman",
      [](const fs::path &path, const std::string &text) {
        return SerializePenman(ReadJson(text, BaseName(path.string())));
      },
      err, stats);
}

int PenmanToJsonCommand(const fs::path &in, const std::optional<fs::path> &out,
                        std::ostream &err, ConvertStats *stats) {
  return ConvertTree(
      in, out, ".penman", ".json",
      [](const fs::path &path, const std::string &text) {
        return WriteJson(ParsePenman(text, BaseName(path.string())));
      },
      err, stats);
}

Batch ReadBatchFile(const fs::path &path, InputFormat format) {
  if (!fs::is_regular_file(path)) throw NotFoundError("no such file " + path.string());
  if (format == InputFormat::kAuto) {
    const std::string ext = path.extension().string();
    if (ext == ".json") {
      format = InputFormat::kJson;
    } else if (ext == ".penman" || ext == ".amr" || ext == ".txt") {
      format = InputFormat::kPenman;
    } else {
      throw InvalidArgumentError("cannot tell the format of " + path.string() +
                                 "; pass --format");
    }
  }
  const std::string text = ReadText(path);
  return format == InputFormat::kJson ? ReadJson(text, BaseName(path.string()))
                                      : ParsePenman(text, BaseName(path.string()));
}

std::string EvalReportJson(const EvalCommandOptions &options,
                           const CorpusScore &score) {
  nlohmann::ordered_json report;
  report["gold"] = options.gold.string();
  report["predicted"] = options.predicted.string();
  report["restarts"] = options.restarts;
  report["seed"] = options.seed;
  report["total"] = ScoreJson(score.total);
  nlohmann::ordered_json sentences = nlohmann::ordered_json::array();
  for (const SentenceScore &s : score.sentences) {
    nlohmann::ordered_json row = {{"tid", s.tid}};
    row.update(ScoreJson(s.score));
    if (!s.categories.empty()) {
      nlohmann::ordered_json cats = nlohmann::ordered_json::object();
      for (const CategoryScore &c : s.categories) {
        cats[c.category] = ScoreJson(c.score);
      }
      row["categories"] = std::move(cats);
    }
    sentences.push_back(std::move(row));
  }
  report["sentences"] = std::move(sentences);
  nlohmann::ordered_json cats = nlohmann::ordered_json::object();
  for (const CategoryScore &c : score.categories) {
    cats[c.category] = ScoreJson(c.score);
  }
  report["categories"] = std::move(cats);
  return report.dump(2) + "\n";
}

std::string EvalReportText(const CorpusScore &score) {
  std::ostringstream out;
  out << "Precision: " << Fixed(score.total.precision) << "\n"
      << "Recall:    " << Fixed(score.total.recall) << "\n"
      << "F-score:   " << Fixed(score.total.f1) << "\n"
      << "Triples:   " << score.total.matched << " matched, "
      << score.total.total_left << " predicted, " << score.total.total_right
      << " gold over " << score.sentences.size() << " sentences\n";
  if (!score.categories.empty()) {
    std::vector<std::pair<std::string, SmatchScore>> rows;
    for (const CategoryScore &c : score.categories) {
      rows.emplace_back(c.category, c.score);
    }
    out << "\n";
    AddTable(out, "category", rows);
  }
  std::vector<std::pair<std::string, SmatchScore>> rows;
  for (const SentenceScore &s : score.sentences) rows.emplace_back(s.tid, s.score);
  out << "\n";
  AddTable(out, "sentence", rows);
  return out.str();
}

int EvalCommand(const EvalCommandOptions &options, std::ostream &out,
                std::ostream &err) {
  Batch gold, predicted;
  try {
    gold = ReadBatchFile(options.gold, options.format);
    predicted = ReadBatchFile(options.predicted, options.format);
  } catch (const std::exception &e) {
    err << "eval: " << e.what() << "\n";
    return kExitUsage;
  }
  EvalOptions eval;
  eval.restarts = options.restarts;
  eval.seed = options.seed;
  if (options.breakdown) eval.categories = BuiltinCategoryNames();
  for (const auto &c : options.categories) {
    if (std::find(eval.categories.begin(), eval.categories.end(), c) ==
        eval.categories.end()) {
      eval.categories.push_back(c);
    }
  }
  CorpusScore score;
  try {
    score = EvaluateCorpus(gold, predicted, eval);
  } catch (const std::exception &e) {
    err << "eval: " << e.what() << "\n";
    return kExitFailures;
  }
  out << (options.json_report ? EvalReportJson(options, score)
                              : EvalReportText(score));
  return kExitOk;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Meaning representation annotation toolkit", "mrtk"};
  app.require_subcommand(1);

  std::string annotator, host = "127.0.0.1";
  std::optional<std::string> scheme;
  std::optional<fs::path> resource_dir, open_file, static_dir;
  int port = 8080;
  bool check = false;
  CLI::App *annotate =
      app.add_subcommand("annotate", "Serve the annotation workspace over HTTP");
  annotate->add_option("-a,--annotator", annotator, "Annotator ID")->required();
  annotate->add_option("-s,--scheme", scheme,
                       "Annotation scheme (default: wiser)");
  annotate->add_option("-r,--resources", resource_dir,
                       "Resource directory; overrides -s");
  annotate->add_option("--host", host, "Address to listen on");
  annotate->add_option("-p,--port", port, "Port (0 picks a free one)");
  annotate->add_option("--static", static_dir, "Directory of UI assets");
  annotate->add_flag("--check", check,
                     "Print the resolved configuration and exit");
  annotate->add_option("file", open_file, "Batch to open at start-up");

  fs::path in_path;
  std::optional<fs::path> out_path;
  CLI::App *to_penman =
      app.add_subcommand("json-to-penman", "Convert *.json files to Penman");
  to_penman->add_option("-i,--input", in_path, "Input directory or file")
      ->required();
  to_penman->add_option("-o,--output", out_path,
                        "Output directory (default: the input directory)");
  CLI::App *to_json =
      app.add_subcommand("penman-to-json", "Convert *.penman files to JSON");
  to_json->add_option("-i,--input", in_path, "Input directory or file")
      ->required();
  to_json->add_option("-o,--output", out_path,
                      "Output directory (default: the input directory)");

  EvalCommandOptions eval;
  std::string format = "auto", report = "text";
  CLI::App *evaluate =
      app.add_subcommand("eval", "Score predicted graphs against gold graphs");
  evaluate->add_option("gold", eval.gold, "Gold file")->required();
  evaluate->add_option("predicted", eval.predicted, "Predicted file")
      ->required();
  evaluate->add_flag("-b,--breakdown", eval.breakdown,
                     "Add the built-in category breakdown");
  evaluate->add_option("-c,--category", eval.categories,
                       "Extra category, e.g. label:ARG0 (repeatable)");
  evaluate->add_option("--restarts", eval.restarts, "Hill-climbing restarts")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--seed", eval.seed, "Random seed");
  evaluate->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"auto", "json", "penman"}));
  evaluate->add_option("--report", report, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> argv(args.rbegin(), args.rend());
  if (!argv.empty()) argv.pop_back();  // program name
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (annotate->parsed()) {
    return AnnotateCommand(annotator, scheme, resource_dir, host, port,
                           open_file, static_dir, check, out, err);
  }
  if (to_penman->parsed() || to_json->parsed()) {
    ConvertStats stats;
    int code = to_penman->parsed()
                   ? JsonToPenmanCommand(in_path, out_path, err, &stats)
                   : PenmanToJsonCommand(in_path, out_path, err, &stats);
    if (code != kExitUsage) {
      out << stats.converted << " converted, " << stats.failed << " failed\n";
    }
    return code;
  }
  eval.format = format == "json"     ? InputFormat::kJson
                : format == "penman" ? InputFormat::kPenman
                                     : InputFormat::kAuto;
  eval.json_report = report == "json";
  return EvalCommand(eval, out, err);
}

}  // namespace mrtk
