#include "rankdiff/synth.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/discrete_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <charconv>
#include <cmath>
#include <map>

#include "rankdiff/config.hpp"
#include "rankdiff/csv.hpp"
#include "rankdiff/divergence.hpp"
#include "rankdiff/log.hpp"

namespace rankdiff {

namespace {

using Engine = boost::random::mt19937_64;

// Log-scale spread of the latent output and citation multipliers.
constexpr double kImpactSigma = 0.9;
constexpr double kCategorySigma = 0.5;
constexpr double kPilotProfessors = 4000;
constexpr double kPilotCoupling = 0.9;
constexpr int kCalibrationSteps = 3;
constexpr double kMaxCoupling = 0.995;
constexpr int kMaxAttempts = 10;

const std::vector<std::string> kExcludedTypes{"editorial material", "meeting abstract",
                                              "reply to letter"};

struct Sampler {
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double normal() { return boost::random::normal_distribution<double>(0.0, 1.0)(rng); }
  double uniform(double lo, double hi) {
    return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
  }
  int uniform_int(int lo, int hi) { return boost::random::uniform_int_distribution<int>(lo, hi)(rng); }
  bool bernoulli(double p) { return p > 0 && boost::random::bernoulli_distribution<double>(p)(rng); }
  double gamma(double shape) {
    return boost::random::gamma_distribution<double>(shape, 1.0 / shape)(rng);
  }
  int poisson(double mean) {
    if (!(mean > 0)) return 0;
    return boost::random::poisson_distribution<int, double>(mean)(rng);
  }
  // Gamma-mixed Poisson with the given mean and mixing shape.
  int mixed_poisson(double mean, double shape) { return poisson(mean * gamma(shape)); }

  Engine rng;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Gamma(shape, 1/shape) variate at the latent's normal quantile: the output-rate mixing
// distribution, driven entirely by ability.
double gamma_multiplier(double shape, double latent) {
  const double u = std::clamp(boost::math::cdf(boost::math::normal_distribution<double>(), latent),
                              1e-12, 1.0 - 1e-12);
  return boost::math::quantile(boost::math::gamma_distribution<double>(shape, 1.0 / shape), u);
}

double lognormal_multiplier(double sigma, double latent) {
  return std::exp(sigma * latent - 0.5 * sigma * sigma);
}

std::string padded(std::string_view prefix, std::size_t value, int width) {
  return fmt::format("{}{:0{}}", prefix, value, width);
}

int digits(std::size_t n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

struct ProfessorDraw {
  std::size_t index;
  double tenure;
  double quantity_mult;
  double impact_mult;
};

bool baselines_dense(const CorpusData& d) {
  std::map<std::pair<int, std::string>, std::pair<int, int>> cells;
  for (const auto& p : d.publications) {
    for (const auto& c : p.subject_categories) {
      auto& [total, cited] = cells[{p.year, c}];
      ++total;
      if (p.citations > 0) ++cited;
    }
  }
  for (const auto& [key, v] : cells) {
    if (v.first >= 50 && v.second == 0) return false;
  }
  return true;
}

CorpusData generate_once(const SynthConfig& cfg, std::uint64_t seed, double coupling) {
  Sampler s(seed);
  CorpusData d;
  d.window = cfg.window;
  d.salaries = cfg.salaries;
  d.fields.uda_names = cfg.uda_names;
  for (const auto& spec : cfg.sds) d.fields.sds[spec.code] = SdsInfo{spec.name, spec.uda_code};

  const int years = cfg.window.length();
  std::map<std::string, double> category_factor;
  std::map<std::string, std::vector<std::string>> categories_by_uda;
  std::vector<std::string> all_categories;
  for (const auto& spec : cfg.sds) {
    const auto cat = "SC:" + spec.code;
    category_factor[cat] = lognormal_multiplier(kCategorySigma, s.normal());
    categories_by_uda[spec.uda_code].push_back(cat);
    all_categories.push_back(cat);
  }
  std::vector<std::string> ranks;
  for (const auto& [rank, salary] : cfg.salaries) ranks.push_back(rank);

  // Professors, grouped for co-author draws.
  std::vector<ProfessorDraw> draws;
  std::map<std::pair<int, std::string>, std::vector<std::size_t>> by_uni_sds;
  std::map<int, std::vector<std::size_t>> by_uni;
  std::map<std::string, std::vector<std::size_t>> by_sds;
  std::vector<int> uni_of;
  const int uni_width = digits(static_cast<std::size_t>(cfg.n_universities));
  for (int u = 1; u <= cfg.n_universities; ++u) {
    for (const auto& spec : cfg.sds) {
      const int count = s.uniform_int(spec.min_professors, spec.max_professors);
      for (int k = 0; k < count; ++k) {
        Professor p;
        p.professor_id = padded("P", d.professors.size() + 1, 6);
        p.university_id = padded("UNIV_", static_cast<std::size_t>(u), uni_width);
        p.sds_code = spec.code;
        p.academic_rank = ranks[static_cast<std::size_t>(s.uniform_int(0, static_cast<int>(ranks.size()) - 1))];
        double tenure = years;
        if (s.bernoulli(cfg.short_tenure_share)) {
          tenure = std::max(0.5, std::round(s.uniform(0.5, years) * 2.0) / 2.0);
        }
        p.years_on_staff = tenure;
        const double z = s.normal();
        const double a = coupling * z + std::sqrt(1.0 - coupling * coupling) * s.normal();
        const auto idx = d.professors.size();
        draws.push_back(ProfessorDraw{idx, tenure, gamma_multiplier(cfg.publication_dispersion, z),
                                      lognormal_multiplier(kImpactSigma, a)});
        by_uni_sds[{u, spec.code}].push_back(idx);
        by_uni[u].push_back(idx);
        by_sds[spec.code].push_back(idx);
        uni_of.push_back(u);
        d.professors.push_back(std::move(p));
      }
    }
  }

  // Productive professors are proportionally more likely to be picked as co-authors.
  std::map<const std::vector<std::size_t>*, boost::random::discrete_distribution<std::size_t>>
      pickers;
  auto pick = [&](const std::vector<std::size_t>& pool) {
    auto it = pickers.find(&pool);
    if (it == pickers.end()) {
      std::vector<double> w;
      for (const auto idx : pool) w.push_back(draws[idx].quantity_mult);
      it = pickers.emplace(&pool, boost::random::discrete_distribution<std::size_t>(w)).first;
    }
    return pool[it->second(s.rng)];
  };
  auto draw_citations = [&](const std::vector<std::string>& cats, int year, double mult) {
    double cf = 0.0;
    for (const auto& c : cats) cf += category_factor[c];
    cf /= static_cast<double>(cats.size());
    const double age = 1.0 + 0.3 * (cfg.window.end_year - year);
    return static_cast<std::int64_t>(
        s.mixed_poisson(cfg.mean_citations * cf * age * mult, cfg.citation_dispersion));
  };
  auto draw_doc_type = [&]() -> std::string {
    if (s.bernoulli(cfg.excluded_doc_type_share)) {
      return kExcludedTypes[static_cast<std::size_t>(s.uniform_int(0, 2))];
    }
    return s.bernoulli(0.1) ? "review" : "article";
  };

  std::size_t pub_counter = 0;
  auto next_pub_id = [&] { return padded("W", ++pub_counter, 9); };

  for (const auto& draw : draws) {
    const auto& lead = d.professors[draw.index];
    const int u = uni_of[draw.index];
    const double rate = cfg.pubs_per_professor * (draw.tenure / years) * draw.quantity_mult;
    const int n_pubs = s.poisson(rate);
    for (int k = 0; k < n_pubs; ++k) {
      Publication pub;
      pub.pub_id = next_pub_id();
      pub.year = s.uniform_int(cfg.window.start_year, cfg.window.end_year);
      pub.doc_type = draw_doc_type();
      const auto home = "SC:" + lead.sds_code;
      pub.subject_categories.push_back(home);
      const auto& uda = d.fields.sds.at(lead.sds_code).uda_code;
      const auto& siblings = categories_by_uda[uda];
      if (siblings.size() > 1 && s.bernoulli(cfg.multi_category_share)) {
        std::string other = home;
        while (other == home) other = siblings[static_cast<std::size_t>(s.uniform_int(0, static_cast<int>(siblings.size()) - 1))];
        pub.subject_categories.push_back(other);
      }
      std::vector<std::size_t> authors{draw.index};
      auto add_author = [&](std::size_t idx) {
        if (std::find(authors.begin(), authors.end(), idx) == authors.end()) authors.push_back(idx);
      };
      for (int tries = 0; tries < 3 && s.bernoulli(cfg.internal_coauthor_prob); ++tries) {
        const auto& same_field = by_uni_sds[{u, lead.sds_code}];
        add_author(same_field.size() > 1 && s.bernoulli(0.7) ? pick(same_field) : pick(by_uni[u]));
      }
      if (s.bernoulli(cfg.cross_university_prob)) {
        const auto candidate = pick(by_sds[lead.sds_code]);
        if (uni_of[candidate] != u) add_author(candidate);
      }
      const int external = s.poisson(cfg.external_authors_mean);
      pub.n_authors_total = static_cast<int>(authors.size()) + external;
      // Citation rate follows the team's mean ability.
      double team = 0.0;
      for (const auto idx : authors) team += draws[idx].impact_mult;
      pub.citations = draw_citations(pub.subject_categories, pub.year,
                                     team / static_cast<double>(authors.size()));
      for (const auto idx : authors) {
        d.authorships.push_back(Authorship{pub.pub_id, d.professors[idx].professor_id});
      }
      d.publications.push_back(std::move(pub));
    }
  }

  const auto orphans = static_cast<std::size_t>(
      std::llround(cfg.orphan_publication_share * static_cast<double>(d.publications.size())));
  for (std::size_t k = 0; k < orphans && !all_categories.empty(); ++k) {
    Publication pub;
    pub.pub_id = next_pub_id();
    pub.year = s.uniform_int(cfg.window.start_year, cfg.window.end_year);
    pub.doc_type = draw_doc_type();
    pub.subject_categories.push_back(all_categories[static_cast<std::size_t>(
        s.uniform_int(0, static_cast<int>(all_categories.size()) - 1))]);
    pub.n_authors_total = 1 + s.poisson(cfg.external_authors_mean);
    pub.citations = draw_citations(pub.subject_categories, pub.year,
                                   lognormal_multiplier(kImpactSigma, s.normal()));
    d.publications.push_back(std::move(pub));
  }
  return d;
}

// Measured correlation of a pilot corpus drawn with the given coupling.  The pilot has the
// config's structure, scaled to about kPilotProfessors professors.
double pilot_correlation(const SynthConfig& cfg, double coupling, std::uint64_t seed) {
  double per_university = 0.0;
  for (const auto& spec : cfg.sds) per_university += 0.5 * (spec.min_professors + spec.max_professors);
  auto pilot = cfg;
  if (per_university > 0) {
    pilot.n_universities = std::max(cfg.n_universities,
                                    static_cast<int>(std::ceil(kPilotProfessors / per_university)));
  }
  try {
    const auto corpus = Corpus::build(generate_once(pilot, seed, coupling));
    return measure_quantity_impact_corr(corpus, compute_scaling_factors(corpus));
  } catch (const Error&) {
    return 0.0;
  }
}

// Treats the measured correlation as proportional to the latent coupling and refines by
// secant steps through the origin.
double calibrate_coupling(const SynthConfig& cfg) {
  if (cfg.quantity_impact_corr <= 0) return 0.0;
  double coupling = kPilotCoupling;
  for (int step = 0; step < kCalibrationSteps; ++step) {
    const double measured =
        pilot_correlation(cfg, coupling, mix_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(step)));
    if (!(measured > 0)) return kMaxCoupling;
    coupling = std::clamp(cfg.quantity_impact_corr * coupling / measured, 0.0, kMaxCoupling);
  }
  return coupling;
}

double parse_real(const std::string& key, const std::string& v) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size()) {
    throw Error(ErrorCode::kConfig, fmt::format("synth config key '{}': bad number '{}'", key, v));
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_real(key, v);
  if (d != std::floor(d)) {
    throw Error(ErrorCode::kConfig, fmt::format("synth config key '{}': expected integer", key));
  }
  return static_cast<int>(d);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void validate(const SynthConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.n_universities < 1) problems.emplace_back("n_universities must be positive");
  if (cfg.window.start_year > cfg.window.end_year) problems.emplace_back("window is empty");
  if (cfg.sds.empty()) problems.emplace_back("no SDS defined");
  for (const auto& s : cfg.sds) {
    if (s.min_professors < 0 || s.max_professors < s.min_professors) {
      problems.push_back(fmt::format("SDS {}: bad professor range [{}, {}]", s.code,
                                     s.min_professors, s.max_professors));
    }
    if (!cfg.uda_names.contains(s.uda_code)) {
      problems.push_back(fmt::format("SDS {}: unknown UDA {}", s.code, s.uda_code));
    }
  }
  if (cfg.salaries.empty()) problems.emplace_back("no salary levels");
  for (const auto& [rank, salary] : cfg.salaries) {
    if (!(salary > 0)) problems.push_back("salary of " + rank + " must be positive");
  }
  if (!(cfg.quantity_impact_corr >= 0 && cfg.quantity_impact_corr < 1)) {
    problems.emplace_back("quantity_impact_corr must lie in [0, 1)");
  }
  if (cfg.pubs_per_professor < 0 || cfg.mean_citations < 0 || cfg.external_authors_mean < 0) {
    problems.emplace_back("means must be non-negative");
  }
  if (!(cfg.publication_dispersion > 0) || !(cfg.citation_dispersion > 0)) {
    problems.emplace_back("dispersion shapes must be positive");
  }
  for (double p : {cfg.internal_coauthor_prob, cfg.cross_university_prob, cfg.multi_category_share,
                   cfg.short_tenure_share, cfg.excluded_doc_type_share}) {
    if (p < 0 || p > 1) problems.emplace_back("probabilities must lie in [0, 1]");
  }
  if (cfg.orphan_publication_share < 0) problems.emplace_back("orphan_publication_share < 0");
  if (!problems.empty()) {
    std::string msg = "invalid synth config:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::kInvalidSynthConfig, msg);
  }
}

CorpusData generate(const SynthConfig& cfg) {
  validate(cfg);
  const double coupling = calibrate_coupling(cfg);
  log::debug("synth: latent coupling {:.3f} for target {:.3f}", coupling, cfg.quantity_impact_corr);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto data = generate_once(cfg, mix_seed(cfg.seed, static_cast<std::uint64_t>(attempt)), coupling);
    if (baselines_dense(data)) return data;
    log::info("synth: attempt {} left a populated cell without citations; regenerating", attempt);
  }
  throw Error(ErrorCode::kInvalidSynthConfig,
              "could not generate a corpus whose populated cells all have cited publications");
}

double measure_quantity_impact_corr(const Corpus& corpus, const ScalingFactorTable& table) {
  std::vector<double> counts, impacts;
  const auto profs = corpus.professors();
  for (std::size_t i = 0; i < profs.size(); ++i) {
    double sum = 0.0;
    int n = 0;
    for (const auto pub : corpus.publications_of(i)) {
      const auto impact = try_normalized_impact(corpus.publications()[pub], table);
      if (!impact) continue;
      sum += *impact;
      ++n;
    }
    if (n == 0) continue;
    counts.push_back(n);
    impacts.push_back(sum / n);
  }
  return pearson(counts, impacts);
}

std::vector<SdsSpec> make_sds_block(const std::string& uda_code, const std::string& prefix,
                                    int n_sds, int min_professors, int max_professors) {
  std::vector<SdsSpec> out;
  for (int i = 1; i <= n_sds; ++i) {
    const auto code = fmt::format("{}/{:02}", prefix, i);
    out.push_back(SdsSpec{code, code, uda_code, min_professors, max_professors});
  }
  return out;
}

SynthConfig read_synth_config(const std::filesystem::path& path) {
  SynthConfig cfg;
  bool salaries_seen = false;
  for (const auto& [key, value] : read_key_values(path)) {
    if (key == "seed") {
      std::uint64_t seed = 0;
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (value.empty() || ec != std::errc{} || p != value.data() + value.size()) {
        throw Error(ErrorCode::kConfig, "synth config: bad seed '" + value + "'");
      }
      cfg.seed = seed;
    } else if (key == "n_universities") {
      cfg.n_universities = parse_int(key, value);
    } else if (key == "window_start") {
      cfg.window.start_year = parse_int(key, value);
    } else if (key == "window_end") {
      cfg.window.end_year = parse_int(key, value);
    } else if (key == "citation_snapshot") {
      cfg.window.citation_snapshot_label = value;
    } else if (key == "pubs_per_professor") {
      cfg.pubs_per_professor = parse_real(key, value);
    } else if (key == "publication_dispersion") {
      cfg.publication_dispersion = parse_real(key, value);
    } else if (key == "mean_citations") {
      cfg.mean_citations = parse_real(key, value);
    } else if (key == "citation_dispersion") {
      cfg.citation_dispersion = parse_real(key, value);
    } else if (key == "quantity_impact_corr") {
      cfg.quantity_impact_corr = parse_real(key, value);
    } else if (key == "internal_coauthor_prob") {
      cfg.internal_coauthor_prob = parse_real(key, value);
    } else if (key == "cross_university_prob") {
      cfg.cross_university_prob = parse_real(key, value);
    } else if (key == "external_authors_mean") {
      cfg.external_authors_mean = parse_real(key, value);
    } else if (key == "multi_category_share") {
      cfg.multi_category_share = parse_real(key, value);
    } else if (key == "short_tenure_share") {
      cfg.short_tenure_share = parse_real(key, value);
    } else if (key == "excluded_doc_type_share") {
      cfg.excluded_doc_type_share = parse_real(key, value);
    } else if (key == "orphan_publication_share") {
      cfg.orphan_publication_share = parse_real(key, value);
    } else if (key.starts_with("salary.")) {
      if (!salaries_seen) cfg.salaries.clear();
      salaries_seen = true;
      cfg.salaries[key.substr(7)] = parse_real(key, value);
    } else if (key.starts_with("uda.")) {
      cfg.uda_names[key.substr(4)] = value;
    } else if (key.starts_with("sds.")) {
      // uda:name:min:max
      const auto parts = split(value, ':');
      if (parts.size() != 4) {
        throw Error(ErrorCode::kConfig, "synth config: expected uda:name:min:max for " + key);
      }
      cfg.sds.push_back(SdsSpec{key.substr(4), parts[1], parts[0], parse_int(key, parts[2]),
                                parse_int(key, parts[3])});
    } else if (key.starts_with("sds_block.")) {
      // count:min:max:prefix
      const auto parts = split(value, ':');
      if (parts.size() != 4) {
        throw Error(ErrorCode::kConfig,
                    "synth config: expected count:min:max:prefix for " + key);
      }
      auto block = make_sds_block(key.substr(10), parts[3], parse_int(key, parts[0]),
                                  parse_int(key, parts[1]), parse_int(key, parts[2]));
      cfg.sds.insert(cfg.sds.end(), block.begin(), block.end());
    } else {
      throw Error(ErrorCode::kConfig, fmt::format("{}: unknown key '{}'", path.string(), key));
    }
  }
  validate(cfg);
  return cfg;
}

}  // namespace rankdiff
