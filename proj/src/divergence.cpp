#include "rankdiff/divergence.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace rankdiff {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void widen(StatRange& r, double v, bool first) {
  if (first) {
    r = StatRange{v, v};
  } else {
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  }
}

void widen(std::optional<StatRange>& r, const std::optional<double>& v) {
  if (!v) return;
  if (!r) {
    r = StatRange{*v, *v};
  } else {
    r->min = std::min(r->min, *v);
    r->max = std::max(r->max, *v);
  }
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument(
        fmt::format("pearson: length mismatch {} vs {}", xs.size(), ys.size()));
  }
  if (xs.size() < 3) {
    throw Error(ErrorCode::kDegenerateVariance,
                fmt::format("correlation needs at least 3 pairs, got {}", xs.size()));
  }
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0) || !(syy > 0)) {
    throw Error(ErrorCode::kDegenerateVariance, "correlation undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument(
        fmt::format("spearman: length mismatch {} vs {}", xs.size(), ys.size()));
  }
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

DivergenceSummary shift_stats(const ComparisonTable& cmp, std::string scope_code) {
  DivergenceSummary s;
  s.scope_code = std::move(scope_code);
  s.n_units = cmp.rows.size();
  if (cmp.rows.empty()) return s;

  std::vector<double> abs_shift;
  std::vector<double> fss, mncs;
  abs_shift.reserve(s.n_units);
  std::size_t shifting = 0;
  for (const auto& r : cmp.rows) {
    const int a = std::abs(r.rank_shift);
    abs_shift.push_back(a);
    s.max_abs_shift = std::max(s.max_abs_shift, a);
    if (r.rank_shift != 0) ++shifting;
    fss.push_back(r.fss.score);
    mncs.push_back(r.mncs.score);
  }
  const auto n = static_cast<double>(s.n_units);
  s.pct_shifting_rank = 100.0 * static_cast<double>(shifting) / n;
  s.mean_abs_shift = mean_of(abs_shift);
  s.median_abs_shift = median_of(abs_shift);
  const double to_pct = s.n_units < 2 ? 0.0 : 100.0 / (n - 1.0);
  s.mean_pct_shift = s.mean_abs_shift * to_pct;
  s.median_pct_shift = s.median_abs_shift * to_pct;
  s.max_pct_shift = s.max_abs_shift * to_pct;
  try {
    s.pearson = pearson(fss, mncs);
    s.spearman = spearman(fss, mncs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateVariance) throw;
  }
  return s;
}

QuartileSummary quartile_stats(const ComparisonTable& cmp, std::string scope_code) {
  QuartileSummary q;
  q.scope_code = std::move(scope_code);
  q.n_units = cmp.rows.size();
  if (cmp.rows.empty()) return q;
  std::size_t shifting = 0, in_q1 = 0, left_q1 = 0;
  int total = 0;
  for (const auto& r : cmp.rows) {
    const int d = std::abs(r.quartile_fss - r.quartile_mncs);
    total += d;
    q.max_quartile_shift = std::max(q.max_quartile_shift, d);
    if (d) ++shifting;
    if (r.quartile_fss == 1) {
      ++in_q1;
      if (r.quartile_mncs != 1) ++left_q1;
    }
  }
  const auto n = static_cast<double>(q.n_units);
  q.pct_shifting_quartile = 100.0 * static_cast<double>(shifting) / n;
  q.mean_abs_quartile_shift = total / n;
  q.pct_leaving_q1 = in_q1 ? 100.0 * static_cast<double>(left_q1) / static_cast<double>(in_q1) : 0.0;
  return q;
}

DispersionStats dispersion(std::span<const double> scores, Indicator indicator,
                           std::string scope_code) {
  if (scores.size() < 2) {
    throw Error(ErrorCode::kDegeneratePopulation,
                fmt::format("dispersion needs at least 2 scores, got {}", scores.size()));
  }
  DispersionStats d;
  d.scope_code = std::move(scope_code);
  d.indicator = indicator;
  d.n = scores.size();
  d.mean = mean_of(scores);
  if (d.mean == 0.0) throw Error(ErrorCode::kZeroMean, "coefficient of variation undefined at mean 0");
  double ss = 0.0;
  for (double v : scores) ss += (v - d.mean) * (v - d.mean);
  d.std_dev = std::sqrt(ss / static_cast<double>(d.n - 1));
  d.coefficient_of_variation = d.std_dev / std::fabs(d.mean);
  return d;
}

DispersionStats dispersion(const ScoreBoard& board) {
  std::vector<double> scores;
  scores.reserve(board.units.size());
  for (const auto& u : board.units) scores.push_back(u.score);
  return dispersion(scores, board.indicator, board.scope_code);
}

RangeSummary range_summary(std::span<const DivergenceSummary> per_sds, std::string uda_code) {
  if (per_sds.empty()) {
    throw Error(ErrorCode::kNoRankableSds, fmt::format("UDA '{}' has no rankable SDS", uda_code));
  }
  RangeSummary r;
  r.uda_code = std::move(uda_code);
  r.n_sds = per_sds.size();
  bool first = true;
  for (const auto& s : per_sds) {
    widen(r.pct_shifting_rank, s.pct_shifting_rank, first);
    widen(r.mean_abs_shift, s.mean_abs_shift, first);
    widen(r.mean_pct_shift, s.mean_pct_shift, first);
    widen(r.median_abs_shift, s.median_abs_shift, first);
    widen(r.max_abs_shift, s.max_abs_shift, first);
    widen(r.max_pct_shift, s.max_pct_shift, first);
    widen(r.pearson, s.pearson);
    widen(r.spearman, s.spearman);
    first = false;
  }
  return r;
}

}  // namespace rankdiff
