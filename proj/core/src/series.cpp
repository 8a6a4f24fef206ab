#include "dinv/series.hpp"

#include <algorithm>
#include <numeric>

#include "dinv/surface.hpp"

namespace dinv {

namespace {

using TermMap = std::map<Monomial, Rational>;

void map_add_term(TermMap& m, const Monomial& mono, const Rational& c) {
  if (c == 0) return;
  auto it = m.find(mono);
  if (it == m.end()) {
    m.emplace(mono, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

TermMap map_mul(const TermMap& a, const TermMap& b, int cutoff) {
  TermMap out;
  for (const auto& [ma, ca] : a) {
    int da = total_degree(ma);
    if (da > cutoff) continue;
    for (const auto& [mb, cb] : b) {
      if (da + total_degree(mb) > cutoff) continue;
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      map_add_term(out, m, ca * cb);
    }
  }
  return out;
}

TermMap map_homogeneous(const TermMap& a, int d) {
  TermMap out;
  for (const auto& [m, c] : a)
    if (total_degree(m) == d) out.emplace(m, c);
  return out;
}

std::optional<int> map_order(const TermMap& a) {
  std::optional<int> best;
  for (const auto& [m, c] : a) {
    int d = total_degree(m);
    if (!best || d < *best) best = d;
  }
  return best;
}

bool monomial_divides(const Monomial& g, const Monomial& r) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] > r[i]) return false;
  return true;
}

// Exact division of a homogeneous polynomial r by a homogeneous divisor g,
// by repeated cancellation of the lexicographically leading term.  Over an
// integral domain this yields remainder zero exactly when g divides r.
TermMap divide_homogeneous(TermMap r, const TermMap& g, const std::string& context) {
  TermMap q;
  const auto& [g_lead, g_lead_c] = *g.rbegin();
  while (!r.empty()) {
    const auto& [r_lead, r_lead_c] = *r.rbegin();
    if (!monomial_divides(g_lead, r_lead))
      raise(Errc::divisibility, "inexact series division: " + context);
    Monomial shift(r_lead.size());
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = r_lead[i] - g_lead[i];
    Rational coef = r_lead_c / g_lead_c;
    map_add_term(q, shift, coef);
    for (const auto& [mg, cg] : g) {
      Monomial m(mg.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = mg[i] + shift[i];
      map_add_term(r, m, -(coef * cg));
    }
  }
  return q;
}

}  // namespace

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

std::shared_ptr<const ProbeFrame> ProbeFrame::raw(std::vector<std::string> names,
                                                  std::vector<std::vector<Rational>> gram,
                                                  int truncation) {
  auto f = std::make_shared<ProbeFrame>();
  if (truncation < 0) raise(Errc::validation, "negative truncation degree");
  if (gram.size() != names.size())
    raise(Errc::dimension_mismatch, "pairing matrix size does not match probe count");
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names[i] == names[j])
        raise(Errc::validation, "probe names must be unique: '" + names[i] + "'");
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (gram[i].size() != names.size())
      raise(Errc::dimension_mismatch, "pairing matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) raise(Errc::validation, "pairing matrix is not symmetric");
  }
  f->names = std::move(names);
  f->gram = std::move(gram);
  f->truncation = truncation;
  return f;
}

std::shared_ptr<const ProbeFrame> ProbeFrame::over(
    const std::shared_ptr<const Surface>& surface,
    const std::vector<std::pair<std::string, CohClass>>& probes, int truncation) {
  std::vector<std::string> names;
  std::vector<CohClass> classes;
  for (const auto& [name, cls] : probes) {
    if (cls.surface != surface)
      raise(Errc::incompatible_class, "probe class does not live on the given surface");
    names.push_back(name);
    classes.push_back(cls);
  }
  std::vector<std::vector<Rational>> gram(classes.size(), std::vector<Rational>(classes.size()));
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j)
      gram[i][j] = surface->pair(classes[i], classes[j]);
  auto f = std::const_pointer_cast<ProbeFrame>(ProbeFrame::raw(std::move(names), std::move(gram), truncation));
  f->classes = std::move(classes);
  return f;
}

bool same_frame(const ProbeFrame& a, const ProbeFrame& b) {
  return a.names == b.names && a.gram == b.gram;
}

ExpandedSeries::ExpandedSeries(FramePtr frame, int truncation)
    : frame_(std::move(frame)), trunc_(truncation) {
  if (!frame_) raise(Errc::validation, "series requires a probe frame");
  if (trunc_ < 0) raise(Errc::validation, "negative truncation degree");
}

ExpandedSeries ExpandedSeries::constant(FramePtr frame, int truncation, const Rational& value) {
  ExpandedSeries s(std::move(frame), truncation);
  if (value != 0) s.terms_.emplace(Monomial(s.frame_->size(), 0), value);
  return s;
}

Rational ExpandedSeries::coefficient(const Monomial& m) const {
  if (m.size() != frame_->size()) raise(Errc::dimension_mismatch, "monomial arity mismatch");
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational ExpandedSeries::constant_term() const {
  return coefficient(Monomial(frame_->size(), 0));
}

void ExpandedSeries::set_coefficient(const Monomial& m, const Rational& value) {
  if (m.size() != frame_->size()) raise(Errc::dimension_mismatch, "monomial arity mismatch");
  if (total_degree(m) > trunc_) raise(Errc::truncation_exceeded, "monomial beyond truncation");
  if (value == 0)
    terms_.erase(m);
  else
    terms_[m] = value;
}

void ExpandedSeries::add_term(const Monomial& m, const Rational& value) {
  if (m.size() != frame_->size()) raise(Errc::dimension_mismatch, "monomial arity mismatch");
  if (total_degree(m) > trunc_) return;
  map_add_term(terms_, m, value);
}

void ExpandedSeries::check_compatible(const ExpandedSeries& rhs) const {
  if (!frame_ || !rhs.frame_) raise(Errc::validation, "operation on an empty series");
  if (!same_frame(*frame_, *rhs.frame_))
    raise(Errc::incompatible_frame, "series live on different probe frames");
  if (trunc_ != rhs.trunc_)
    raise(Errc::incompatible_frame, "series have different truncation degrees");
}

ExpandedSeries& ExpandedSeries::operator+=(const ExpandedSeries& rhs) {
  check_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) map_add_term(terms_, m, c);
  return *this;
}

ExpandedSeries& ExpandedSeries::operator-=(const ExpandedSeries& rhs) {
  check_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) map_add_term(terms_, m, -c);
  return *this;
}

ExpandedSeries ExpandedSeries::operator+(const ExpandedSeries& rhs) const {
  ExpandedSeries out = *this;
  out += rhs;
  return out;
}

ExpandedSeries ExpandedSeries::operator-(const ExpandedSeries& rhs) const {
  ExpandedSeries out = *this;
  out -= rhs;
  return out;
}

ExpandedSeries ExpandedSeries::operator*(const ExpandedSeries& rhs) const {
  check_compatible(rhs);
  ExpandedSeries out(frame_, trunc_);
  out.terms_ = map_mul(terms_, rhs.terms_, trunc_);
  return out;
}

ExpandedSeries ExpandedSeries::operator-() const {
  ExpandedSeries out(frame_, trunc_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

ExpandedSeries ExpandedSeries::operator*(const Rational& c) const {
  ExpandedSeries out(frame_, trunc_);
  if (c == 0) return out;
  for (const auto& [m, coef] : terms_) out.terms_.emplace(m, coef * c);
  return out;
}

bool ExpandedSeries::operator==(const ExpandedSeries& rhs) const {
  check_compatible(rhs);
  return terms_ == rhs.terms_;
}

ExpandedSeries linear_form(FramePtr frame, const std::vector<Rational>& pairings,
                           std::optional<int> truncation) {
  if (!frame) raise(Errc::validation, "linear form requires a probe frame");
  if (pairings.size() != frame->size())
    raise(Errc::dimension_mismatch, "one pairing per probe required");
  int trunc = truncation.value_or(frame->truncation);
  ExpandedSeries s(frame, trunc);
  if (trunc < 1) return s;
  for (std::size_t j = 0; j < pairings.size(); ++j) {
    if (pairings[j] == 0) continue;
    Monomial m(frame->size(), 0);
    m[j] = 1;
    s.set_coefficient(m, pairings[j]);
  }
  return s;
}

ExpandedSeries exp_like(const ExpandedSeries& s, ExpKind kind) {
  if (s.constant_term() != 0)
    raise(Errc::not_nilpotent, "exponential of a series with nonzero constant term");
  const int D = s.truncation();
  ExpandedSeries acc(s.frame(), D);
  if (kind != ExpKind::sinh) acc += ExpandedSeries::constant(s.frame(), D, 1);
  ExpandedSeries power = ExpandedSeries::constant(s.frame(), D, 1);
  Rational kfact = 1;
  for (int k = 1; k <= D; ++k) {
    power = power * s;
    if (power.is_zero()) break;
    kfact *= k;
    bool want = kind == ExpKind::exp || (kind == ExpKind::sinh ? k % 2 == 1 : k % 2 == 0);
    if (want) acc += power * (Rational(1) / kfact);
  }
  return acc;
}

ExpandedSeries exact_divide(const ExpandedSeries& num, const ExpandedSeries& den) {
  if (!same_frame(*num.frame(), *den.frame()))
    raise(Errc::incompatible_frame, "quotient operands live on different probe frames");
  if (num.truncation() != den.truncation())
    raise(Errc::incompatible_frame, "quotient operands have different truncation degrees");
  auto den_ord = map_order(den.terms());
  if (!den_ord) raise(Errc::divisibility, "denominator vanishes up to truncation");
  const int m = *den_ord;
  const int out_trunc = num.truncation() - m;
  ExpandedSeries quot(num.frame(), out_trunc < 0 ? 0 : out_trunc);
  if (num.is_zero()) return quot;
  auto num_ord = map_order(num.terms());
  if (*num_ord < m)
    raise(Errc::divisibility, "numerator order below denominator order");
  if (out_trunc < 0) return quot;

  const TermMap den_low = map_homogeneous(den.terms(), m);
  TermMap rem = num.terms();
  TermMap quot_terms;
  for (int d = 0; d <= out_trunc; ++d) {
    TermMap r_d = map_homogeneous(rem, m + d);
    if (r_d.empty()) continue;
    TermMap q_d = divide_homogeneous(std::move(r_d), den_low,
                                     "degree " + std::to_string(m + d) + " step");
    // rem -= q_d * den, up to the numerator's truncation
    TermMap sub = map_mul(q_d, den.terms(), num.truncation());
    for (const auto& [mono, c] : sub) map_add_term(rem, mono, -c);
    for (const auto& [mono, c] : q_d) map_add_term(quot_terms, mono, c);
  }
  for (const auto& [mono, c] : rem)
    if (total_degree(mono) <= num.truncation())
      raise(Errc::divisibility, "nonzero remainder after quotient reconstruction");
  for (const auto& [mono, c] : quot_terms) quot.add_term(mono, c);
  return quot;
}

ExpandedSeries homogeneous_part(const ExpandedSeries& s, int d) {
  if (d > s.truncation()) raise(Errc::truncation_exceeded, "homogeneous degree beyond truncation");
  ExpandedSeries out(s.frame(), s.truncation());
  for (const auto& [m, c] : s.terms())
    if (total_degree(m) == d) out.add_term(m, c);
  return out;
}

int order(const ExpandedSeries& s) {
  auto o = map_order(s.terms());
  if (!o)
    raise(Errc::order_undetermined,
          "series vanishes up to truncation " + std::to_string(s.truncation()) +
              "; raise the truncation degree");
  return *o;
}

Rational polarized_coefficient(const ExpandedSeries& s, const std::vector<int>& exponents) {
  if (exponents.size() != s.frame()->size())
    raise(Errc::dimension_mismatch, "one exponent per probe required");
  int d = 0;
  for (int a : exponents) {
    if (a < 0) raise(Errc::validation, "negative exponent");
    d += a;
  }
  if (d > s.truncation())
    raise(Errc::truncation_exceeded, "polarized degree exceeds truncation");
  Rational c = s.coefficient(exponents);
  for (int a : exponents) c *= Rational(factorial(a));
  return c;
}

ExpandedSeries truncate_to(const ExpandedSeries& s, int d) {
  if (d > s.truncation())
    raise(Errc::truncation_exceeded, "cannot raise a truncation degree");
  ExpandedSeries out(s.frame(), d);
  for (const auto& [m, c] : s.terms())
    if (total_degree(m) <= d) out.add_term(m, c);
  return out;
}

}  // namespace dinv
