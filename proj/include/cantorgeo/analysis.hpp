#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantorgeo/cantor.hpp"
#include "cantorgeo/geometry.hpp"
#include "cantorgeo/logreal.hpp"

namespace cantorgeo {

enum class Status { HoldsOnPrefix, FailsWithWitness, Inconclusive };
const char* to_string(Status s);

struct Witness {
  std::uint64_t index = 0;
  LogScalar value;
};

struct TracePoint {
  std::uint64_t n = 0;
  LogScalar value;
};

struct Verdict {
  Status status = Status::Inconclusive;
  std::uint64_t horizon = 0;
  std::optional<Witness> witness;
  std::vector<TracePoint> trace;
  std::vector<std::string> notes;
};

// Finite-horizon integer: exact when status is HoldsOnPrefix, a certified
// lower bound when Inconclusive.
struct CountVerdict {
  Status status = Status::Inconclusive;
  std::uint64_t value = 0;
  std::uint64_t horizon = 0;
  std::uint64_t at_index = 0;  // i attaining the sup (N_estimate)
};

// Divergence on a finite prefix: min of the last quarter exceeds the max of
// the first quarter, and the final value exceeds the threshold.
bool divergence_trend(const std::vector<long double>& values, long double threshold);
constexpr long double kDefaultThreshold = 10.0L;

// omega(delta; i) = inf{k >= 1 : q_{i+k} >= delta}, searched with i + k <= horizon.
CountVerdict omega_delta_i(const OmegaSpec& spec, long double delta, std::uint64_t i,
                           std::uint64_t horizon);
// sup over 1 <= i < horizon.
CountVerdict N_estimate(const OmegaSpec& spec, long double delta, std::uint64_t horizon);

enum class QcClass { QCEquivalentEvidence, NotQCEquivalent, Inconclusive };
enum class QcReason { None, SupOne, NUnboundedAllDelta };
const char* to_string(QcClass c);
const char* to_string(QcReason r);

struct QcDeltaRow {
  long double delta = 0;
  CountVerdict n_full;  // horizon H
  CountVerdict n_half;  // horizon ceil(H/2)
  enum class Trend { Bounded, Unbounded, Unknown } trend = Trend::Unknown;
};
const char* to_string(QcDeltaRow::Trend t);

struct QcReport {
  QcClass cls = QcClass::Inconclusive;
  QcReason reason = QcReason::None;
  bool analytic = false;
  std::uint64_t horizon = 0;
  LogScalar sup_q;
  LogScalar sup_q_half;
  std::vector<QcDeltaRow> rows;
  std::string note;
};

std::vector<long double> default_delta_grid();
QcReport classify_qc(const OmegaSpec& spec, std::uint64_t horizon,
                     const std::vector<long double>& delta_grid = default_delta_grid());

// t_n = q_n lnln(1/q_{n+1}) for n = 1..horizon.
Verdict check_condition_I(const OmegaSpec& spec, std::uint64_t horizon,
                          long double threshold = kDefaultThreshold);

enum class SumMethod { Direct, AnalyticApproximation };
const char* to_string(SumMethod m);

struct BlockSum {
  std::uint64_t m = 0;
  long double a_lo = 0;  // a_m
  long double a_hi = 0;  // a_{m+1}
  long double S = 0;
  std::optional<long double> T;  // absent when some p_n in the block is outside (0,1)
  SumMethod method = SumMethod::Direct;
  long double error_bound = 0;
};

struct BlockSumSeries {
  std::vector<BlockSum> blocks;
};

// Direct summation limit for a single block.
constexpr long double kDirectBlockLimit = 1e7L;

BlockSum block_sum(const OmegaSpec& spec, std::uint64_t m, bool with_T = true);
BlockSumSeries block_sums(const OmegaSpec& spec, std::uint64_t M, bool with_T = true);

struct ConditionIIResult {
  Verdict verdict;
  BlockSumSeries series;
  bool p_decreasing = false;
  bool gaps_increasing = false;
};

ConditionIIResult check_condition_II(const OmegaSpec& spec, std::uint64_t M,
                                     long double threshold = kDefaultThreshold);

struct EtaBlock {
  long double S = 0;
  long double T = 0;
  long double ratio = 0;  // T / (2 S)
  SumMethod method = SumMethod::Direct;
};

EtaBlock block_sum_eta(const OmegaSpec& spec, std::uint64_t m);

struct WitnessRatio {
  LogScalar ratio;       // L(q_{n+1}) / U(q_n)
  LogScalar comparator;  // q_n lnln(1/q_{n+1}) / pi^2
};

WitnessRatio witness_ratio(const OmegaSpec& spec, std::uint64_t n);

// Conservative lower bound on distance/length from the pentagon relation.
LogScalar pants_ratio_bound(const OmegaSpec& spec, std::uint64_t k);

// 2 eta(core(2q/(1+q))); equal to L(q) by construction of the annulus.
LogScalar claim31_lower_bound(const LogScalar& q);

struct CriterionRowI {
  std::uint64_t k = 0;
  LogScalar upper;  // U(q_k), certified for monotone specs
  LogScalar pants_ratio;
};

struct CriterionRowII {
  std::uint64_t m = 0;
  long double a_m = 0;
  LogScalar alpha_cap;  // U(d)
  long double S = 0;
  std::optional<LogScalar> claim31;  // L(q_{a_m + 1}) when defined
};

struct CriterionReport {
  OmegaKind kind = OmegaKind::RecursiveI;
  std::uint64_t horizon = 0;
  std::vector<CriterionRowI> rows_i;
  std::vector<CriterionRowII> rows_ii;
  Status status = Status::Inconclusive;
  std::string trend;
};

CriterionReport theorem_criterion_report(const OmegaSpec& spec, std::uint64_t horizon,
                                         long double threshold = kDefaultThreshold);

}  // namespace cantorgeo
