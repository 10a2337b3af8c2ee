#include "rigwalk/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigwalk/errors.hpp"

namespace rigwalk {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Process-wide ln S(k,i) table, grown on demand, checked against exact
// integers for small k the first time it is built.
class StirlingLogTable {
 public:
  double value(uint32_t k, uint32_t i) {
    std::lock_guard<std::mutex> lock(mu_);
    grow(k);
    return rows_[k][i];
  }

 private:
  void grow(uint32_t k_max) {
    if (rows_.size() > k_max) return;
    if (rows_.empty()) rows_.push_back({0.0});  // S(0,0) = 1
    for (uint32_t k = static_cast<uint32_t>(rows_.size()); k <= k_max; ++k) {
      const auto& prev = rows_[k - 1];
      std::vector<double> row(k + 1, kNegInf);
      row[k] = 0.0;
      for (uint32_t i = 1; i < k; ++i) {
        double from_same = i < prev.size() ? std::log(static_cast<double>(i)) + prev[i] : kNegInf;
        double from_below = prev[i - 1];
        row[i] = log_add(from_same, from_below);
      }
      rows_.push_back(std::move(row));
      if (k == 25) self_check();
    }
  }

  void self_check() const {
    // Exact S(k,i) in 128-bit integers for k <= 25 (values stay below 2^63).
    std::vector<std::vector<unsigned __int128>> exact{{1}};
    for (uint32_t k = 1; k <= 25; ++k) {
      std::vector<unsigned __int128> row(k + 1, 0);
      for (uint32_t i = 1; i <= k; ++i) {
        unsigned __int128 same = i < exact[k - 1].size() ? exact[k - 1][i] : 0;
        row[i] = static_cast<unsigned __int128>(i) * same + exact[k - 1][i - 1];
      }
      for (uint32_t i = 1; i <= k; ++i) {
        double want = std::log(static_cast<double>(row[i]));
        double got = rows_[k][i];
        double scale = std::max(1.0, std::abs(want));
        if (std::abs(got - want) > 1e-12 * scale)
          throw std::logic_error("Stirling log table failed its exact-integer self check");
      }
      exact.push_back(std::move(row));
    }
  }

  std::vector<std::vector<double>> rows_;
  mutable std::mutex mu_;
};

StirlingLogTable& stirling_table() {
  static StirlingLogTable table;
  return table;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw validation_error(msg);
}

double lambda_of(double np, double c) {
  // ln(a+1) < np holds for every c > 1, so lambda > 0 unconditionally.
  double a = (c - 1.0) / c * std::expm1(np);
  return std::log(np / std::log1p(a));
}

}  // namespace

double stirling2_log(uint32_t k, uint32_t i) {
  require(i >= 1 && i <= k, "stirling2_log: need 1 <= i <= k");
  require(k <= 2000, "stirling2_log: k capped at 2000");
  return stirling_table().value(k, i);
}

double dbar(uint32_t k, uint32_t i, const DerivedQuantities& q) {
  require(i >= 1 && i <= k, "dbar: need 1 <= i <= k");
  const double ln_n = std::log(static_cast<double>(q.n));
  const double x = static_cast<double>(q.m) * q.p * std::exp(-q.np);
  const double lg = stirling2_log(k, i) - std::lgamma(static_cast<double>(k) + 1.0) +
                    i * std::log(x) + k * std::log(q.np) + (1.0 - q.c) * ln_n;
  return std::exp(lg);
}

double dbar_k(uint32_t k, const DerivedQuantities& q) {
  double total = 0.0;
  for (uint32_t i = 1; i <= k; ++i) total += dbar(k, i, q);
  return total;
}

LambdaFamily lambda_family(double n, double c, double np) {
  require(c > 1.0, "lambda_family: c must exceed 1");
  require(np > 0.0, "lambda_family: np must be positive");
  require(n >= 8.0, "lambda_family: n must be at least 8");

  LambdaFamily f;
  const double ln_n = std::log(n);
  const double lnln_n = std::log(ln_n);
  f.a = (c - 1.0) / c * std::expm1(np);
  f.A = std::exp(10.0 * lnln_n / ((c - 1.0) * ln_n));
  f.eps_n = lnln_n / ln_n;
  f.lambda = std::log(np / std::log1p(f.a));
  f.lambda0 = (1.0 + f.eps_n) * f.lambda;
  f.x = c * ln_n * std::exp(-np) / -std::expm1(-np);
  f.y = np * std::exp(-f.lambda);

  const double padded = std::log1p(f.A * f.a);
  if (padded >= np) {
    f.lambda1_state = LambdaFamily::L1State::undefined;
  } else {
    f.lambda1 = std::log(np / padded);
    f.y1 = np * std::exp(-f.lambda1);
    // Within 5% of the definability edge the value is dominated by the
    // finite-n padding; flag it so consumers can treat it with suspicion.
    f.lambda1_state = padded > 0.95 * np ? LambdaFamily::L1State::near_boundary
                                         : LambdaFamily::L1State::defined;
  }
  return f;
}

double cover_prediction(const DerivedQuantities& q) {
  require(q.c > 1.0, "cover_prediction: realized c must exceed 1");
  const double n = q.n;
  const double lambda = lambda_family(n, q.c, q.np).lambda;
  return lambda * q.kappa * q.c * n * std::log(n);
}

CoverTimes cover_times(const DerivedQuantities& q) {
  require(q.c > 1.0, "cover_times: realized c must exceed 1");
  const LambdaFamily f = lambda_family(q.n, q.c, q.np);
  CoverTimes t;
  t.principal = f.lambda * q.kappa * q.c * q.n * std::log(static_cast<double>(q.n));
  const double mn2p2 = static_cast<double>(q.m) * q.np * q.np;  // m n^2 p^2
  t.t0 = f.lambda0 * mn2p2;
  if (f.lambda1_state != LambdaFamily::L1State::undefined) {
    t.t1 = f.lambda1 * mn2p2;
    t.t1_defined = true;
  }
  return t;
}

double er_cover_prediction(double n, double c) {
  require(c > 1.0, "er_cover_prediction: multiplier must exceed 1");
  return std::log(c / (c - 1.0)) * c * n * std::log(n);
}

double er_same_density_prediction(const DerivedQuantities& q) {
  require(q.cbar > 1.0, "er_same_density_prediction: cbar must exceed 1");
  return er_cover_prediction(q.n, q.cbar);
}

double figure1_ratio(double np, double c) {
  require(c > 1.0, "figure1_ratio: c must exceed 1");
  require(np > 0.0, "figure1_ratio: np must be positive");
  const double kappa = np / -std::expm1(-np);
  const double cbar = kappa * c;
  return lambda_of(np, c) / std::log(cbar / (cbar - 1.0));
}

Fact5Result fact5_check(double np, double c, double n) {
  require(c > 1.0 && np > 0.0, "fact5_check: need c > 1 and np > 0");
  Fact5Result r;
  const double lnln_n = std::log(std::log(n));
  const double kappa = np / -std::expm1(-np);
  r.lambda = lambda_of(np, c);
  r.lower = std::log(c * kappa / (c * kappa - 1.0));
  r.upper = std::log(c / (c - 1.0));
  r.positive = r.lambda > 0.0;
  r.upper_2lnln = r.lambda <= 2.0 * lnln_n;
  if (c - 1.0 <= std::pow(std::log(n), -1.0 / 3.0))
    r.small_c_lower = r.lambda >= lnln_n / 4.0;
  r.sandwich = r.lower < r.lambda && r.lambda < r.upper;
  const LambdaFamily f = lambda_family(n, c, np);
  r.lambda1_defined = f.lambda1_state != LambdaFamily::L1State::undefined;
  if (r.lambda1_defined) r.lambda1_rel_gap = std::abs(f.lambda1 - f.lambda) / f.lambda;
  r.pass = r.positive && r.upper_2lnln && r.small_c_lower && r.sandwich;
  return r;
}

Fact6Result fact6_sums(double y, uint32_t i, double tol) {
  require(y > 0.0 && y <= 5.0, "fact6_sums: y must lie in (0, 5]");
  require(i >= 1 && i <= 100, "fact6_sums: i must lie in [1, 100]");

  Fact6Result r;
  // Past k = i + 2eyi consecutive terms shrink by more than half, so the
  // truncated tail is geometric and negligible. On this domain iy <= 500,
  // hence beyond the table cap of 2000 the term ratio is at most iy/k < 1/4
  // and clamping the cut there keeps the recorded tail_ratio meaningful.
  r.k_cut = i + static_cast<uint32_t>(std::ceil(2.0 * std::exp(1.0) * y * i)) + 40;
  r.k_cut = std::min(r.k_cut, 2000u);
  const double ln_y = std::log(y);

  // Accumulate both series in log space against a running maximum.
  std::vector<double> log_terms_sum, log_terms_id;
  log_terms_sum.reserve(r.k_cut - i + 1);
  log_terms_id.reserve(r.k_cut - i + 1);
  for (uint32_t k = i; k <= r.k_cut; ++k) {
    double base = stirling2_log(k, i) + k * ln_y - std::lgamma(static_cast<double>(k) + 1.0);
    log_terms_id.push_back(base);
    log_terms_sum.push_back(base - std::log(static_cast<double>(k)));
  }
  auto log_sum = [](const std::vector<double>& terms) {
    double hi = *std::max_element(terms.begin(), terms.end());
    if (hi == kNegInf) return kNegInf;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - hi);
    return hi + std::log(acc);
  };
  const double log_S = log_sum(log_terms_sum);
  const double log_id = log_sum(log_terms_id);
  r.sum = std::exp(log_S);
  r.identity_lhs = std::exp(log_id);
  r.tail_ratio = std::exp(log_terms_sum.back() - log_S);

  const double log_em1 = std::log(std::expm1(y));  // ln(e^y - 1)
  const double lg_i1 = std::lgamma(static_cast<double>(i) + 1.0);
  const double lg_i2 = std::lgamma(static_cast<double>(i) + 2.0);
  const double log_rhs = i * log_em1 - lg_i1;
  r.identity_rhs = std::exp(log_rhs);
  r.identity_ok = std::abs(r.identity_lhs - r.identity_rhs) <=
                  tol * std::max(r.identity_lhs, r.identity_rhs);

  const double log_b1 = std::log(static_cast<double>(i) + 1.0) -
                        2.0 * std::log(static_cast<double>(i)) - lg_i1 + i * log_em1 - ln_y;
  const double log_b2 = std::log(4.0) + i * log_em1 - lg_i2 - ln_y;
  r.bounds_ok = log_S <= log_b1 && log_S <= log_b2;
  r.second_regime = std::expm1(y) < 0.5;
  if (r.second_regime) {
    const double log_b3 = std::log(1.5) - std::log(static_cast<double>(i)) - lg_i1 +
                          (i + 1.0) * log_em1 - ln_y;
    const double log_b4 = std::log(3.0) + (i + 1.0) * log_em1 - lg_i2 - ln_y;
    r.bounds_ok = r.bounds_ok && log_S <= log_b3 && log_S <= log_b4;
  }
  return r;
}

bool stirling_inequalities_check(uint32_t k, uint32_t i, uint32_t t, uint32_t h) {
  require(t >= 1 && t < i && i <= k && k <= 60,
          "stirling_inequalities_check: need 1 <= t < i <= k <= 60");
  require(h >= 1 && h <= k - i + 1, "stirling_inequalities_check: need 1 <= h <= k-i+1");

  using boost::multiprecision::cpp_int;
  const uint32_t kmax = k;
  std::vector<std::vector<cpp_int>> S(kmax + 1);
  S[0] = {1};
  for (uint32_t kk = 1; kk <= kmax; ++kk) {
    S[kk].assign(kk + 1, 0);
    for (uint32_t ii = 1; ii <= kk; ++ii) {
      cpp_int same = ii < S[kk - 1].size() ? S[kk - 1][ii] : cpp_int(0);
      S[kk][ii] = ii * same + S[kk - 1][ii - 1];
    }
  }
  auto ipow = [](cpp_int base, uint32_t e) {
    cpp_int r = 1;
    while (e--) r *= base;
    return r;
  };
  cpp_int binom = 1;
  for (uint32_t j = 1; j <= i; ++j) binom = binom * (k - j + 1) / j;

  // C(k,i) i^{k-i} >= 2 S(k,i)
  if (binom * ipow(i, k - i) < 2 * S[k][i]) return false;
  // S(k,i) k^{2(i-t)} >= S(k,t)
  if (S[k][i] * ipow(k, 2 * (i - t)) < S[k][t]) return false;
  // S(k,i) >= i^{h-1} S(k-h+1,i) >= i^{h-1} S(k-h,i-1)
  const cpp_int pad = ipow(i, h - 1);
  const cpp_int mid = i <= k - h + 1 ? pad * S[k - h + 1][i] : cpp_int(0);
  if (S[k][i] < mid) return false;
  const cpp_int low = i - 1 <= k - h ? pad * S[k - h][i - 1] : cpp_int(0);
  return mid >= low;
}

DegreeBands degree_bands(const DerivedQuantities& q) {
  require(q.c > 1.0, "degree_bands: realized c must exceed 1");
  DegreeBands bands;
  const double ln_n = std::log(static_cast<double>(q.n));
  const double lnln_n = std::log(ln_n);
  const double ln2_n = ln_n * ln_n;
  for (uint32_t k = 1; k <= q.delta; ++k) {
    const double v = dbar_k(k, q);
    if (k <= 20 && v <= lnln_n)
      bands.K1.push_back(k);
    else if (k >= 21 && v <= ln2_n)
      bands.K2.push_back(k);
    else
      bands.K3.push_back(k);
  }
  const double target = static_cast<double>(q.i0) * q.i0;
  for (uint32_t k = q.i0; k <= q.k0; ++k)
    if (dbar(k, q.i0, q) >= target) bands.I.push_back(k);
  return bands;
}

TheoryReport theory_report(const DerivedQuantities& q) {
  TheoryReport r;
  r.lf = lambda_family(q.n, q.c, q.np);
  r.cover = cover_times(q);
  r.er_prediction_same_c = er_cover_prediction(q.n, q.c);
  r.er_prediction_same_density = er_same_density_prediction(q);
  r.figure1_ratio = figure1_ratio(q.np, q.c);
  r.dbar_table.assign(q.delta + 1, 0.0);
  for (uint32_t k = 1; k <= q.delta; ++k) r.dbar_table[k] = dbar_k(k, q);
  r.bands = degree_bands(q);
  return r;
}

}  // namespace rigwalk
