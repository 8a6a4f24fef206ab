// Truncated multivariate power series over Rational, graded by total degree.
//
// A ProbeFrame fixes the formal variables t_1..t_m (one per probe class),
// their pairwise intersection numbers, and a default truncation degree D.
// An ExpandedSeries stores the coefficients of all monomials of total degree
// <= its truncation, sparsely; zero coefficients are never stored.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dinv/cohclass.hpp"
#include "dinv/error.hpp"
#include "dinv/rational.hpp"

namespace dinv {

class Surface;

struct ProbeFrame {
  std::vector<std::string> names;
  std::vector<std::vector<Rational>> gram;  // symmetric pairing matrix of the probes
  int truncation = 0;

  // Probe classes are retained when the frame is built over a surface, so a
  // structured series can later pair its own classes against the probes.
  std::vector<CohClass> classes;

  std::size_t size() const { return names.size(); }
  Rational pairing(std::size_t i, std::size_t j) const { return gram[i][j]; }

  static std::shared_ptr<const ProbeFrame> raw(std::vector<std::string> names,
                                               std::vector<std::vector<Rational>> gram,
                                               int truncation);
  static std::shared_ptr<const ProbeFrame> over(
      const std::shared_ptr<const Surface>& surface,
      const std::vector<std::pair<std::string, CohClass>>& probes, int truncation);
};

using FramePtr = std::shared_ptr<const ProbeFrame>;

bool same_frame(const ProbeFrame& a, const ProbeFrame& b);

// Exponent vector, one entry per probe.  Total degree = sum of entries.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

class ExpandedSeries {
 public:
  ExpandedSeries() = default;
  ExpandedSeries(FramePtr frame, int truncation);

  static ExpandedSeries constant(FramePtr frame, int truncation, const Rational& value);

  const FramePtr& frame() const { return frame_; }
  int truncation() const { return trunc_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  void set_coefficient(const Monomial& m, const Rational& value);
  void add_term(const Monomial& m, const Rational& value);

  ExpandedSeries& operator+=(const ExpandedSeries& rhs);
  ExpandedSeries& operator-=(const ExpandedSeries& rhs);
  ExpandedSeries operator+(const ExpandedSeries& rhs) const;
  ExpandedSeries operator-(const ExpandedSeries& rhs) const;
  ExpandedSeries operator*(const ExpandedSeries& rhs) const;
  ExpandedSeries operator-() const;
  ExpandedSeries operator*(const Rational& c) const;
  bool operator==(const ExpandedSeries& rhs) const;

 private:
  FramePtr frame_;
  int trunc_ = 0;
  std::map<Monomial, Rational> terms_;

  void check_compatible(const ExpandedSeries& rhs) const;
};

// Degree-1 series sum_j pairings[j] * t_j.
ExpandedSeries linear_form(FramePtr frame, const std::vector<Rational>& pairings,
                           std::optional<int> truncation = std::nullopt);

enum class ExpKind { exp, sinh, cosh };

// exp / sinh / cosh of a series with zero constant term.
ExpandedSeries exp_like(const ExpandedSeries& s, ExpKind kind);

// Exact quotient q with q * den = num up to degree num.truncation() - ord(den).
// Fails with Errc::divisibility if den does not divide num exactly.
ExpandedSeries exact_divide(const ExpandedSeries& num, const ExpandedSeries& den);

// Sum of the degree-d terms, as a series on the same frame.
ExpandedSeries homogeneous_part(const ExpandedSeries& s, int d);

// Lowest total degree with a nonzero coefficient.
// Errc::order_undetermined if the series vanishes up to its truncation.
int order(const ExpandedSeries& s);

// Polarized read-off: (prod_i a_i!) * coefficient of prod_i t_i^{a_i}.
Rational polarized_coefficient(const ExpandedSeries& s, const std::vector<int>& exponents);

// Copy with truncation lowered to d (terms above d dropped).
ExpandedSeries truncate_to(const ExpandedSeries& s, int d);

}  // namespace dinv
