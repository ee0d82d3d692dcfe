// rankdiff: FSS vs MNCS scoring, comparison and synthetic corpora.

#include <CLI11.hpp>
#include <iostream>

#include "rankdiff/log.hpp"
#include "rankdiff/pipeline.hpp"

namespace {

using rankdiff::CorpusInputs;

void add_corpus_options(CLI::App& cmd, CorpusInputs& in) {
  cmd.add_option("--corpus", in.dir,
                 "directory holding publications.csv, authorships.csv, professors.csv, "
                 "fields.csv and salaries.csv");
  cmd.add_option("--publications", in.publications, "publications CSV (overrides --corpus)");
  cmd.add_option("--authorships", in.authorships, "authorships CSV");
  cmd.add_option("--professors", in.professors, "professors CSV");
  cmd.add_option("--fields", in.fields, "SDS/UDA field scheme CSV");
  cmd.add_option("--salaries", in.salaries, "salary per academic rank CSV");
}

const CLI::IsMember kLevelNames({"sds", "uda", "overall"}, CLI::ignore_case);

rankdiff::IndicatorChoice indicator_of(std::string text) {
  for (auto& ch : text) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (text == "fss") return rankdiff::IndicatorChoice::kFss;
  if (text == "mncs") return rankdiff::IndicatorChoice::kMncs;
  return rankdiff::IndicatorChoice::kBoth;
}

}  // namespace

int main(int argc, char** argv) {
  rankdiff::log::configure_from_env();

  CLI::App app{"Compare university rankings by FSS and MNCS"};
  app.require_subcommand(1);

  rankdiff::ValidateOptions v;
  auto* validate = app.add_subcommand("validate", "load a corpus and check its invariants");
  add_corpus_options(*validate, v.corpus);
  validate->add_option("--config", v.config, "analysis config (window, thresholds)");
  validate->add_option("--out", v.out, "write a run manifest here");
  validate->add_flag("--force", v.force, "overwrite earlier results");

  rankdiff::ScoreOptions s;
  auto* score = app.add_subcommand("score", "write FSS and/or MNCS scoreboards");
  add_corpus_options(*score, s.corpus);
  score->add_option("--config", s.config, "analysis config (window, thresholds)");
  score->add_option("--baselines", s.baselines, "import a baseline table instead of computing it");
  std::string score_indicator = "both", score_level = "sds";
  score->add_option("--indicator", score_indicator, "fss, mncs or both")
      ->check(CLI::IsMember({"fss", "mncs", "both"}, CLI::ignore_case));
  score->add_option("--level", score_level, "sds, uda or overall")->check(kLevelNames);
  score->add_option("--scope", s.scope, "score only this scope code");
  score->add_option("--out", s.out, "output directory")->required();
  score->add_flag("--force", s.force, "overwrite earlier results");

  rankdiff::CompareOptions c;
  CorpusInputs compare_corpus;
  auto* compare = app.add_subcommand("compare", "rank both indicators and summarise divergence");
  add_corpus_options(*compare, compare_corpus);
  compare->add_option("--from-scores", c.from_scores,
                      "CSV of unit,fss_score,mncs_score to replay instead of a corpus");
  compare->add_option("--scope-label", c.scope_label, "scope name used with --from-scores");
  compare->add_option("--config", c.config, "analysis config (window, thresholds)");
  compare->add_option("--baselines", c.baselines, "import a baseline table instead of computing it");
  std::string compare_level = "sds";
  compare->add_option("--level", compare_level, "sds, uda or overall")->check(kLevelNames);
  compare->add_option("--scope", c.scope, "compare only this scope code");
  compare->add_option("--out", c.out, "output directory")->required();
  compare->add_flag("--force", c.force, "overwrite earlier results");

  rankdiff::SynthOptions y;
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  synth->add_option("--config", y.config, "synthetic corpus config")->required()->check(CLI::ExistingFile);
  synth->add_option("--seed", y.seed, "override the config seed");
  synth->add_option("--out", y.out, "output directory")->required();
  synth->add_flag("--force", y.force, "overwrite earlier results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? rankdiff::kExitOk : rankdiff::kExitConfigError;
  }

  if (*validate) return rankdiff::run_validate(v, std::cout, std::cerr);
  if (*score) {
    s.indicator = indicator_of(score_indicator);
    s.level = rankdiff::parse_level(score_level);
    return rankdiff::run_score(s, std::cout, std::cerr);
  }
  if (*compare) {
    c.level = rankdiff::parse_level(compare_level);
    const auto& ci = compare_corpus;
    if (ci.dir || ci.publications || ci.authorships || ci.professors || ci.fields || ci.salaries) {
      c.corpus = compare_corpus;
    }
    return rankdiff::run_compare(c, std::cout, std::cerr);
  }
  return rankdiff::run_synth(y, std::cout, std::cerr);
}
