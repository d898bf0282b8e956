#include <cmath>

#include "zagreb/errors.hpp"
#include "zagreb/replicates.hpp"

namespace zagreb {

namespace {

mpz_class to_mpz(u128 v) {
  mpz_class out = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return out;
}

mpf_class sqrt_of(const Rational& q) {
  mpf_class v(q, kEvaluationBits);
  mpf_class r(0, kEvaluationBits);
  r = sqrt(v);
  return r;
}

}  // namespace

void PowerSums::add(u128 z) {
  const mpz_class v = to_mpz(z);
  const mpz_class v2 = v * v;
  ++count;
  s1 += v;
  s2 += v2;
  s3 += v2 * v;
  s4 += v2 * v2;
  s5 += v2 * v2 * v;
  s6 += v2 * v2 * v2;
}

void PowerSums::merge(const PowerSums& other) {
  count += other.count;
  s1 += other.s1;
  s2 += other.s2;
  s3 += other.s3;
  s4 += other.s4;
  s5 += other.s5;
  s6 += other.s6;
}

Rational SampleSummary::mean() const {
  if (replicates == 0) throw DomainError("mean of an empty sample");
  Rational q(sums.s1, mpz_class(static_cast<unsigned long>(replicates)));
  q.canonicalize();
  return q;
}

Rational SampleSummary::variance() const {
  if (replicates < 2) throw DomainError("sample variance needs R >= 2");
  const mpz_class r = static_cast<unsigned long>(replicates);
  Rational q(r * sums.s2 - sums.s1 * sums.s1, r * (r - 1));
  q.canonicalize();
  return q;
}

Rational SampleSummary::central_moment(unsigned k) const {
  if (replicates == 0) throw DomainError("central moment of an empty sample");
  if (k < 2 || k > 6) throw DomainError("central moments are available for k = 2..6");
  // R^k mu_k = sum_j C(k, j) s_j (-s_1)^(k-j) R^(j-1), with s_0 = R.
  const mpz_class r = static_cast<unsigned long>(replicates);
  const mpz_class* power_sums[] = {&sums.s1, &sums.s2, &sums.s3, &sums.s4, &sums.s5, &sums.s6};
  const mpz_class neg_a = -sums.s1;
  mpz_class num;
  mpz_pow_ui(num.get_mpz_t(), neg_a.get_mpz_t(), k);
  for (unsigned j = 1; j <= k; ++j) {
    mpz_class binom, a_pow, r_pow;
    mpz_bin_uiui(binom.get_mpz_t(), k, j);
    mpz_pow_ui(a_pow.get_mpz_t(), neg_a.get_mpz_t(), k - j);
    mpz_pow_ui(r_pow.get_mpz_t(), r.get_mpz_t(), j - 1);
    num += binom * *power_sums[j - 1] * a_pow * r_pow;
  }
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), r.get_mpz_t(), k);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

double SampleSummary::se_mean() const {
  const Rational v = variance();
  return sqrt_of(v / mpz_class(static_cast<unsigned long>(replicates))).get_d();
}

double SampleSummary::se_variance() const {
  if (replicates < 4) throw DomainError("variance standard error needs R >= 4");
  const Rational var = variance();
  const mpz_class r = static_cast<unsigned long>(replicates);
  Rational spread = central_moment(4) - var * var * Rational(r - 3, r - 1);
  if (spread < 0) spread = 0;
  return sqrt_of(spread / r).get_d();
}

double SampleSummary::skewness() const {
  if (replicates < 3) throw DomainError("sample skewness needs R >= 3");
  const Rational m2 = central_moment(2);
  if (m2 == 0) throw UndefinedSkewnessError("sample skewness undefined: zero variance");
  const Rational m3 = central_moment(3);
  const mpf_class root = sqrt_of(m2);
  mpf_class g1(m3, kEvaluationBits);
  g1 /= mpf_class(m2, kEvaluationBits) * root;
  const double r = static_cast<double>(replicates);
  return g1.get_d() * std::sqrt(r * (r - 1)) / (r - 2);
}

double SampleSummary::se_skewness() const {
  const double r = static_cast<double>(replicates);
  return std::sqrt(6 * r * (r - 1) / ((r - 2) * (r + 1) * (r + 3)));
}

double SampleSummary::se_skewness_robust() const {
  if (replicates < 3) throw DomainError("sample skewness needs R >= 3");
  const Rational m2 = central_moment(2);
  if (m2 == 0) throw UndefinedSkewnessError("sample skewness undefined: zero variance");
  const Rational m3 = central_moment(3);
  const Rational m4 = central_moment(4);
  const Rational m5 = central_moment(5);
  const Rational m6 = central_moment(6);
  // Influence function of g1: a (c^3 - 3 m2 c - m3) - b (c^2 - m2), c = x - mean,
  // a = m2^(-3/2), b = (3/2) m3 m2^(-5/2).
  const Rational cubic_sq = m6 - 6 * m2 * m4 + 9 * m2 * m2 * m2 - m3 * m3;
  const Rational cross = m5 - 4 * m2 * m3;
  const Rational square_sq = m4 - m2 * m2;
  const Rational m2_cubed = m2 * m2 * m2;
  const Rational b_over_a = Rational(3, 2) * m3 / m2;
  Rational influence = (cubic_sq - 2 * b_over_a * cross + b_over_a * b_over_a * square_sq) / m2_cubed;
  if (influence < 0) influence = 0;
  return sqrt_of(influence / mpz_class(static_cast<unsigned long>(replicates))).get_d();
}

double empirical_skewness(const SampleSummary& summary) { return summary.skewness(); }

u128 simulate_zagreb(const ModelSpec& model, std::uint64_t n, std::uint64_t seed,
                     std::uint64_t stream) {
  RngStream rng(seed, stream);
  return grow_to(model, n, rng).indices.zagreb;
}

}  // namespace zagreb
