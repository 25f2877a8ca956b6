#pragma once

#include <optional>

#include "cantorgeo/cantor.hpp"
#include "cantorgeo/logreal.hpp"

namespace cantorgeo {

// U(q) = 2 pi^2 / log((1+q)/(1-q)) = pi^2 / atanh(q)
LogScalar U(const LogScalar& q);
inline LogScalar length_upper_bound(const LogScalar& q) { return U(q); }

// eta(x) = asinh(1 / sinh(x/2))
LogScalar collar_eta(const LogScalar& x);

// L(q) = 2 eta(2 pi^2 / log((1+q)/(2q)))
LogScalar L(const LogScalar& q);
inline LogScalar length_lower_bound(const LogScalar& q) { return L(q); }

// Core curve of the round annulus with radius ratio R: 2 pi^2 / log(1/R).
LogScalar annulus_core_length(const LogScalar& R);

// Even-case branch 2 pi^2 / log((1 - q_k + 2 q_{k-l}) / (1 - q_k)).
LogScalar even_case_bound(const LogScalar& q_k, const LogScalar& q_k_minus_l);

// Right-angled pentagon: cosh d = sinh a sinh b.
LogScalar pentagon_d(const LogScalar& a, const LogScalar& b);
LogScalar pentagon_b(const LogScalar& a, const LogScalar& d);

enum class UpperBranch { OddCase, EvenCase, MaxOfBoth, CertifiedU };
const char* to_string(UpperBranch b);

struct UpperBound {
  LogScalar value;
  UpperBranch branch = UpperBranch::OddCase;
  int ell = 0;  // EvenCase only
  bool certified = false;
  LogScalar u_value;                    // U(q_k)
  std::optional<LogScalar> even_value;  // interior indices
};

UpperBound upper_bound_geodesic(const OmegaSpec& spec, int k, std::uint64_t i);
LogScalar lower_bound_geodesic(const OmegaSpec& spec, int k);

struct BoundReport {
  DyadicIndex index;
  LogScalar lower;
  LogScalar upper;
  UpperBranch branch = UpperBranch::OddCase;
  int ell = 0;
  bool certified = false;
};

BoundReport bound_report(const OmegaSpec& spec, int k, std::uint64_t i);

// q_1..q_k non-increasing, or q_k no larger than every earlier term.
bool prefix_monotone(const OmegaSpec& spec, int k);
bool prefix_min(const OmegaSpec& spec, int k);

}  // namespace cantorgeo
