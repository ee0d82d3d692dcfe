#include "rankdiff/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "rankdiff/baselines.hpp"
#include "rankdiff/digest.hpp"
#include "rankdiff/log.hpp"
#include "rankdiff/report.hpp"
#include "rankdiff/synth.hpp"

namespace fs = std::filesystem;

namespace rankdiff {

namespace {

constexpr const char* kSubdirs[] = {"scoreboards", "comparisons", "summaries", "manifest"};

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string level_lower(Level level) {
  std::string s(to_string(level));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Collects every file a run writes, relative to the output directory.
class OutputDir {
 public:
  OutputDir(fs::path root, bool force) : root_(std::move(root)), force_(force) {}

  // Refuses to touch a directory holding earlier results unless forced; with force, clears
  // only the subdirectories this tool owns.
  void prepare(std::span<const fs::path> owned_files = {}) {
    bool occupied = false;
    for (const auto* sub : kSubdirs) {
      const auto p = root_ / sub;
      if (fs::exists(p) && !fs::is_empty(p)) occupied = true;
    }
    for (const auto& f : owned_files) occupied = occupied || fs::exists(root_ / f);
    if (occupied && !force_) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("{} already holds results; pass --force to overwrite", root_.string()));
    }
    if (occupied) {
      for (const auto* sub : kSubdirs) fs::remove_all(root_ / sub);
      for (const auto& f : owned_files) fs::remove(root_ / f);
    }
    fs::create_directories(root_);
  }

  void write(const fs::path& relative, const std::function<void(std::ostream&)>& body) {
    const auto path = root_ / relative;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    body(out);
    if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
    files_.push_back(relative.generic_string());
  }

  void record(const fs::path& relative) { files_.push_back(relative.generic_string()); }

  const fs::path& root() const { return root_; }
  std::vector<std::string> files() const {
    auto f = files_;
    std::sort(f.begin(), f.end());
    return f;
  }

 private:
  fs::path root_;
  bool force_;
  std::vector<std::string> files_;
};

void write_manifest(OutputDir& dir, RunManifest manifest) {
  manifest.outputs = dir.files();
  manifest.outputs.push_back("manifest/manifest.json");
  manifest.timestamp = utc_timestamp();
  dir.write("manifest/manifest.json", [&](std::ostream& o) { o << manifest.to_json() << '\n'; });
}

void add_input(RunManifest& m, const fs::path& path) {
  m.inputs.push_back(InputDigest{path.generic_string(), sha256_file(path)});
}

AnalysisConfig load_config(const std::optional<fs::path>& path, RunManifest& m) {
  AnalysisConfig cfg;
  if (path) {
    cfg = read_analysis_config(*path);
    add_input(m, *path);
  }
  m.config = cfg.describe();
  return cfg;
}

// Loaded, filtered corpus plus the baseline table and scoring context built on it.
struct Prepared {
  Corpus corpus;
  ScalingFactorTable table;
  bool imported_baselines = false;
};

Prepared prepare_corpus(const CorpusInputs& inputs, const AnalysisConfig& cfg,
                        const std::optional<fs::path>& baselines, RunManifest& m) {
  const auto paths = inputs.resolve();
  for (const auto& p : paths.all()) add_input(m, p);
  const auto raw = load_corpus(paths, cfg.window);
  auto filtered = apply_filters(raw, cfg.filters);
  const auto& r = filtered.report;
  if (r.professors_removed) {
    m.warnings.push_back(fmt::format("{} professor(s) below the minimum years on staff removed",
                                     r.professors_removed));
  }
  if (r.publications_removed_window) {
    m.warnings.push_back(fmt::format("{} publication(s) outside the observation window removed",
                                     r.publications_removed_window));
  }
  if (r.publications_removed_doc_type || r.publications_baseline_only) {
    m.warnings.push_back(fmt::format("{} publication(s) of excluded document types removed, {} "
                                     "kept for baselines only",
                                     r.publications_removed_doc_type, r.publications_baseline_only));
  }
  Prepared p{std::move(filtered.corpus), {}, false};
  if (baselines) {
    p.table = ScalingFactorTable::read_csv(*baselines);
    p.imported_baselines = true;
    add_input(m, *baselines);
  } else {
    p.table = compute_scaling_factors(p.corpus);
  }
  m.corpus_digest = p.corpus.digest();
  m.baseline_digest = p.table.digest();
  return p;
}

void note_exclusions(const ScoringContext& ctx, RunManifest& m) {
  const auto& ex = ctx.exclusions;
  if (!ex.missing_baseline_pubs.empty()) {
    std::string ids;
    const std::size_t shown = std::min<std::size_t>(ex.missing_baseline_pubs.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) ids += (i ? ", " : "") + ex.missing_baseline_pubs[i];
    if (shown < ex.missing_baseline_pubs.size()) ids += ", ...";
    m.warnings.push_back(fmt::format("{} publication(s) excluded for a missing baseline: {}",
                                     ex.missing_baseline_pubs.size(), ids));
  }
  for (const auto& sds : ex.unstandardizable_sds) {
    m.warnings.push_back(fmt::format("SDS '{}' has no productive professor; its professors are "
                                     "excluded from FSS",
                                     sds));
  }
}

// Scores the requested scopes; non-rankable scopes become warnings.
LevelScores score_requested(const ScoringContext& ctx, Level level,
                            const std::optional<std::string>& scope, const FilterConfig& filters,
                            RunManifest& m) {
  LevelScores scores;
  if (scope) {
    scores.level = level;
    try {
      scores.boards.push_back(score_scope(ctx, level, *scope, filters));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kScopeNotRankable) throw;
      scores.not_rankable.push_back(SkippedScope{*scope, e.what()});
    }
  } else {
    scores = score_level(ctx, level, filters);
  }
  for (const auto& s : scores.not_rankable) {
    m.warnings.push_back(fmt::format("not rankable: {}", s.reason));
  }
  for (const auto& b : scores.boards) {
    for (const auto& w : b.warnings) m.warnings.push_back(fmt::format("{}: {}", b.fss.scope_code, w));
  }
  return scores;
}

std::string board_file(Level level, std::string_view scope, std::string_view suffix = {}) {
  return fmt::format("{}_{}{}.csv", level_lower(level), file_safe(scope), suffix);
}

// Comparison CSVs, summary CSVs and the markdown report for a set of scopes.
void write_comparisons(OutputDir& dir, Level level, std::vector<ScopeComparison>& scopes,
                       RunManifest& m) {
  for (const auto& s : scopes) {
    dir.write(fs::path("comparisons") / board_file(level, s.scope_code),
              [&](std::ostream& o) { write_comparison_csv(o, s.table); });
    for (const auto& w : s.warnings) m.warnings.push_back(w);
  }
  const auto prefix = level_lower(level);
  dir.write(fs::path("summaries") / (prefix + "_divergence.csv"),
            [&](std::ostream& o) { write_divergence_csv(o, scopes); });
  dir.write(fs::path("summaries") / (prefix + "_quartiles.csv"),
            [&](std::ostream& o) { write_quartile_csv(o, scopes); });
  dir.write(fs::path("summaries") / (prefix + "_dispersion.csv"),
            [&](std::ostream& o) { write_dispersion_csv(o, scopes); });
  std::vector<RangeSummary> ranges;
  if (level == Level::kSds) {
    std::vector<ScopeComparison> with_uda;
    for (const auto& s : scopes) {
      if (!s.uda_code.empty()) with_uda.push_back(s);
    }
    if (!with_uda.empty()) {
      ranges = ranges_by_uda(with_uda);
      dir.write(fs::path("summaries") / "sds_ranges_by_uda.csv",
                [&](std::ostream& o) { write_range_csv(o, ranges); });
    }
  }
  dir.write(fs::path("summaries") / (prefix + "_report.md"),
            [&](std::ostream& o) { write_markdown_report(o, level, scopes, ranges); });
}

void print_warnings(const RunManifest& m, std::ostream& err) {
  for (const auto& w : m.warnings) err << "warning: " << w << '\n';
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << v.describe() << '\n';
    err << e.what() << '\n';
    return kExitDataError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kUnknownScope:
    case ErrorCode::kInvalidSynthConfig:
      return kExitConfigError;
    default:
      return kExitDataError;
  }
}

std::string file_safe(std::string_view scope_code) {
  std::string out(scope_code);
  for (auto& c : out) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  auto args = nlohmann::ordered_json::object();
  for (const auto& [k, v] : arguments) args[k] = v;
  j["arguments"] = args;
  j["config"] = config;
  auto in = nlohmann::ordered_json::array();
  for (const auto& d : inputs) in.push_back({{"path", d.path}, {"sha256", d.sha256}});
  j["inputs"] = in;
  j["outputs"] = outputs;
  j["warnings"] = warnings;
  j["provenance"] = {{"corpus_digest", corpus_digest}, {"baseline_digest", baseline_digest}};
  j["timestamp"] = timestamp;
  return j.dump(2);
}

CorpusPaths CorpusInputs::resolve() const {
  CorpusPaths p;
  if (dir) p = CorpusPaths::in_directory(*dir);
  auto pick = [](fs::path& slot, const std::optional<fs::path>& override_path, const char* name) {
    if (override_path) slot = *override_path;
    if (slot.empty()) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("no {} file given (use --corpus DIR or --{})", name, name));
    }
  };
  pick(p.publications, publications, "publications");
  pick(p.authorships, authorships, "authorships");
  pick(p.professors, professors, "professors");
  pick(p.fields, fields, "fields");
  pick(p.salaries, salaries, "salaries");
  return p;
}

int run_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunManifest m;
    m.command = "validate";
    const auto cfg = load_config(opts.config, m);
    std::optional<OutputDir> dir;
    if (opts.out) {
      dir.emplace(*opts.out, opts.force);
      dir->prepare();
    }
    const auto paths = opts.corpus.resolve();
    for (const auto& p : paths.all()) add_input(m, p);

    SourceMap sources;
    std::vector<Violation> violations;
    std::optional<CorpusData> data;
    try {
      data = read_corpus_data(paths, cfg.window, &sources);
      violations = validate(*data, &sources);
    } catch (const LoadError& e) {
      violations.push_back(Violation{e.file(), e.line(), e.field(), e.message()});
    }
    for (const auto& v : violations) {
      err << v.describe() << '\n';
      m.warnings.push_back(v.describe());
    }
    if (violations.empty()) {
      const auto corpus = Corpus::build(*data, &sources);
      const auto r = corpus.report();
      m.corpus_digest = corpus.digest();
      out << fmt::format("ok: {} universities, {} professors, {} publications, {} authorships, "
                         "{} SDS in {} UDA\n",
                         r.universities, r.professors, r.publications, r.authorships, r.sds, r.udas);
    } else {
      out << fmt::format("{} violation(s)\n", violations.size());
    }
    if (dir) write_manifest(*dir, m);
    return violations.empty() ? kExitOk : kExitDataError;
  });
}

int run_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunManifest m;
    m.command = "score";
    m.arguments = {{"indicator", opts.indicator == IndicatorChoice::kBoth   ? "both"
                                 : opts.indicator == IndicatorChoice::kFss ? "fss"
                                                                            : "mncs"},
                   {"level", level_lower(opts.level)},
                   {"scope", opts.scope.value_or("")}};
    const auto cfg = load_config(opts.config, m);
    OutputDir dir(opts.out, opts.force);
    dir.prepare();

    auto prepared = prepare_corpus(opts.corpus, cfg, opts.baselines, m);
    const auto ctx = ScoringContext::build(prepared.corpus, prepared.table, m.config);
    note_exclusions(ctx, m);
    const auto scores = score_requested(ctx, opts.level, opts.scope, cfg.filters, m);

    for (const auto& b : scores.boards) {
      const auto& scope = b.fss.scope_code;
      switch (opts.indicator) {
        case IndicatorChoice::kBoth:
          dir.write(fs::path("scoreboards") / board_file(opts.level, scope),
                    [&](std::ostream& o) { write_paired_scoreboard_csv(o, b); });
          break;
        case IndicatorChoice::kFss:
          dir.write(fs::path("scoreboards") / board_file(opts.level, scope, "_fss"),
                    [&](std::ostream& o) { write_scoreboard_csv(o, b.fss); });
          break;
        case IndicatorChoice::kMncs:
          dir.write(fs::path("scoreboards") / board_file(opts.level, scope, "_mncs"),
                    [&](std::ostream& o) { write_scoreboard_csv(o, b.mncs); });
          break;
      }
    }
    if (!prepared.imported_baselines) {
      fs::create_directories(dir.root() / "summaries");
      prepared.table.write_csv(dir.root() / "summaries" / "baselines.csv");
      dir.record(fs::path("summaries") / "baselines.csv");
    }
    write_manifest(dir, m);
    print_warnings(m, err);
    out << fmt::format("{} scoreboard(s) written to {}; {} scope(s) not rankable\n",
                       scores.boards.size(), opts.out.string(), scores.not_rankable.size());
    return kExitOk;
  });
}

int run_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunManifest m;
    m.command = "compare";
    m.arguments = {{"level", level_lower(opts.level)}, {"scope", opts.scope.value_or("")}};
    if (opts.from_scores.has_value() == opts.corpus.has_value()) {
      throw Error(ErrorCode::kConfig, "give exactly one of a corpus or --from-scores");
    }
    OutputDir dir(opts.out, opts.force);

    std::vector<ScopeComparison> scopes;
    if (opts.from_scores) {
      m.arguments.emplace_back("from_scores", opts.from_scores->generic_string());
      m.arguments.emplace_back("scope_label", opts.scope_label);
      m.config = AnalysisConfig{}.describe();
      add_input(m, *opts.from_scores);
      const auto boards = read_score_pairs(*opts.from_scores, opts.level, opts.scope_label);
      dir.prepare();
      scopes.push_back(compare_scope(boards.fss, boards.mncs));
    } else {
      const auto cfg = load_config(opts.config, m);
      dir.prepare();
      auto prepared = prepare_corpus(*opts.corpus, cfg, opts.baselines, m);
      const auto ctx = ScoringContext::build(prepared.corpus, prepared.table, m.config);
      note_exclusions(ctx, m);
      const auto scores = score_requested(ctx, opts.level, opts.scope, cfg.filters, m);
      for (const auto& b : scores.boards) {
        auto s = compare_scope(b.fss, b.mncs);
        if (opts.level == Level::kSds) {
          if (const auto* info = prepared.corpus.fields().find_sds(s.scope_code)) {
            s.uda_code = info->uda_code;
          }
        }
        scopes.push_back(std::move(s));
        dir.write(fs::path("scoreboards") / board_file(opts.level, b.fss.scope_code),
                  [&](std::ostream& o) { write_paired_scoreboard_csv(o, b); });
      }
    }
    write_comparisons(dir, opts.level, scopes, m);
    write_manifest(dir, m);
    print_warnings(m, err);
    out << fmt::format("{} scope(s) compared; results in {}\n", scopes.size(), opts.out.string());
    return kExitOk;
  });
}

int run_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RunManifest m;
    m.command = "synth";
    auto cfg = read_synth_config(opts.config);
    add_input(m, opts.config);
    if (opts.seed) cfg.seed = *opts.seed;
    m.arguments = {{"seed", std::to_string(cfg.seed)}};
    validate(cfg);

    const auto paths = CorpusPaths::in_directory(opts.out);
    std::vector<fs::path> owned;
    for (const auto& p : paths.all()) owned.push_back(p.filename());
    OutputDir dir(opts.out, opts.force);
    dir.prepare(owned);

    const auto data = generate(cfg);
    write_corpus(data, paths);
    for (const auto& f : owned) dir.record(f);
    m.corpus_digest = Corpus::build(data).digest();
    write_manifest(dir, m);
    print_warnings(m, err);
    out << fmt::format("{} professors, {} publications, {} authorships written to {}\n",
                       data.professors.size(), data.publications.size(), data.authorships.size(),
                       opts.out.string());
    return kExitOk;
  });
}

}  // namespace rankdiff
