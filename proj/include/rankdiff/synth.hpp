#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "rankdiff/baselines.hpp"
#include "rankdiff/corpus.hpp"

namespace rankdiff {

struct SdsSpec {
  std::string code;
  std::string name;
  std::string uda_code;
  int min_professors = 0;  // per university
  int max_professors = 0;
};

// Parameters of the synthetic corpus generator.
//
// Each professor carries a latent ability z ~ N(0, 1).  Lead-authored publication counts are
// gamma-mixed Poisson with log-mean shifted by z; citation counts are gamma-mixed Poisson
// (negative binomial) whose log-mean is shifted by a second latent correlated with z.  The
// coupling between the two latents is calibrated on a pilot draw so that the measured
// Pearson correlation between a professor's publication count and mean normalised impact
// lands near quantity_impact_corr.
struct SynthConfig {
  std::uint64_t seed = 1;
  int n_universities = 10;
  ObservationWindow window{2008, 2012, "synthetic snapshot"};
  std::vector<SdsSpec> sds;
  std::map<std::string, std::string> uda_names;
  SalaryTable salaries{{"assistant", 52000.0}, {"associate", 78000.0}, {"full", 110000.0}};

  double pubs_per_professor = 8.0;      // mean lead-authored publications over the window
  double publication_dispersion = 3.0;  // gamma shape of the per-professor output rate
  double mean_citations = 8.0;
  double citation_dispersion = 0.8;  // gamma shape of per-publication citations; lower = heavier tail
  double quantity_impact_corr = 0.5;
  double internal_coauthor_prob = 0.35;
  double cross_university_prob = 0.15;
  double external_authors_mean = 2.5;
  double multi_category_share = 0.2;
  double short_tenure_share = 0.05;
  double excluded_doc_type_share = 0.03;
  double orphan_publication_share = 0.25;  // national publications without a professor author
};

// Throws InvalidSynthConfig.
void validate(const SynthConfig& cfg);

// INI-style file; see configs/ for examples.  Throws Error(kConfig).
SynthConfig read_synth_config(const std::filesystem::path& path);

// Same config and seed give the same records in the same order.
CorpusData generate(const SynthConfig& cfg);

// Pearson correlation, over professors with at least one normalizable publication, between
// publication count and mean normalised impact.
double measure_quantity_impact_corr(const Corpus& corpus, const ScalingFactorTable& table);

// A field scheme of `n_sds` SDSs per listed UDA with uniform per-university headcounts.
std::vector<SdsSpec> make_sds_block(const std::string& uda_code, const std::string& prefix,
                                    int n_sds, int min_professors, int max_professors);

}  // namespace rankdiff
