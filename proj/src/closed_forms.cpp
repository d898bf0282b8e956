#include "zagreb/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "zagreb/errors.hpp"
#include "zagreb/moments.hpp"

namespace zagreb {

namespace {

// sum_{i=lo}^{hi-1} 1/i as p/q, unreduced, by binary splitting.
void harmonic_split(std::uint64_t lo, std::uint64_t hi, mpz_class& p, mpz_class& q) {
  if (hi - lo == 1) {
    p = 1;
    q = static_cast<unsigned long>(lo);
    return;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  mpz_class p2, q2;
  harmonic_split(lo, mid, p, q);
  harmonic_split(mid, hi, p2, q2);
  p = p * q2 + p2 * q;
  q *= q2;
}

mpz_class factorial(std::uint64_t k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kPi = std::numbers::pi;

AuditEntry exact_entry(std::string quantity, std::uint64_t n, const Rational& recurrence,
                       const Rational& closed) {
  AuditEntry e;
  e.quantity = std::move(quantity);
  e.n = n;
  e.exact = true;
  e.recurrence = recurrence;
  e.delta = closed - recurrence;
  e.residual = e.delta->get_d();
  return e;
}

AuditEntry leading_entry(std::string quantity, std::uint64_t n, const Rational& recurrence,
                         double residual, std::string order) {
  AuditEntry e;
  e.quantity = std::move(quantity);
  e.n = n;
  e.exact = false;
  e.recurrence = recurrence;
  e.residual = residual;
  e.remainder_order = std::move(order);
  return e;
}

std::vector<std::uint64_t> range_rows(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> rows;
  for (std::uint64_t n = lo; n <= hi; ++n) rows.push_back(n);
  return rows;
}

void audit_port(AuditReport& report, std::uint64_t lo, std::uint64_t hi) {
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return;
  const MomentTable table = port_moment_table(hi, TableOptions{range_rows(lo, hi)});
  const double g = kEulerGamma;
  for (const MomentRow& row : table.rows) {
    const std::uint64_t n = row.n;
    report.entries.push_back(exact_entry("mean_Z", n, row.mean_z, port_mean_closed(n)));
    report.entries.push_back(exact_entry("mean_Y", n, *row.mean_y, port_cubic_closed(n)));
    report.entries.push_back(exact_entry("mean_X", n, *row.mean_x, port_quartic_closed(n)));

    const double nd = static_cast<double>(n);
    const double ln = std::log(nd);
    const double second_lead = 4 * (nd * ln) * (nd * ln) + 8 * g * nd * nd * ln +
                               (16 + 4 * g * g - 2 * kPi * kPi / 3) * nd * nd;
    report.entries.push_back(leading_entry("second_Z", n, row.second_z,
                                           (row.second_z.get_d() - second_lead) / std::pow(nd, 1.5),
                                           "n^(3/2)"));
    const double third_lead = (nd + 1) * nd * (nd - 1) * (8 * ln * ln * ln + 24 * ln * ln);
    if (n >= 3) {
      report.entries.push_back(leading_entry("third_Z", n, *row.third_z,
                                             (row.third_z->get_d() - third_lead) / (nd * nd * nd * ln),
                                             "n^3 log n"));
    }
    // Gamma(n + 3/2) / (sqrt(pi) Gamma(n - 1)) = R(n) (n + 1/2)
    const double gamma_ratio = half_gamma_ratio(n).get_d() * (nd + 0.5);
    report.entries.push_back(leading_entry("mixed_ZY", n, *row.mixed_zy,
                                           (row.mixed_zy->get_d() - 64 * ln * gamma_ratio) / gamma_ratio,
                                           "Gamma(n+3/2)/Gamma(n-1)"));
  }
}

void audit_caterpillar(AuditReport& report, std::uint32_t m, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return;
  const MomentTable table = caterpillar_moment_table(m, hi, TableOptions{range_rows(lo, hi)});
  const double md = m;
  const double second_den = (2 * md + 1) * (2 * md - 1) * md * (md - 1);
  const double var_den = (2 * md - 1) * (2 * md - 1) * (md - 1) * (md - 1) * (2 * md + 1) * md;
  for (const MomentRow& row : table.rows) {
    const std::uint64_t n = row.n;
    report.entries.push_back(exact_entry("mean_Z", n, row.mean_z, caterpillar_mean_closed(n, m)));
    report.entries.push_back(exact_entry("mean_Y", n, *row.mean_y, caterpillar_cubic_closed(n, m)));
    if (n == 0) continue;
    const double nd = static_cast<double>(n);
    const double n3 = nd * nd * nd;
    const double second_lead =
        ((9 * md * md - 3 * md - 16) * n3 * nd + 2 * (3 * md - 2) * (12 * md * md - 7 * md - 17) * n3) /
        second_den;
    report.entries.push_back(leading_entry("second_Z", n, row.second_z,
                                           (row.second_z.get_d() - second_lead) / (nd * nd), "n^2"));
    const double var_lead = (6 * md * md * md - 22 * md * md + 29 * md - 16) * n3 * nd / var_den;
    report.entries.push_back(
        leading_entry("var_Z", n, row.var_z, (row.var_z.get_d() - var_lead) / n3, "n^3"));
  }
}

void audit_ext_rrt(AuditReport& report, std::uint32_t m0, std::uint32_t m, std::uint64_t lo,
                   std::uint64_t hi) {
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return;
  const MomentTable table = ext_rrt_moment_table(m0, m, hi, TableOptions{range_rows(lo, hi)});
  const double md = m;
  const double m0d = m0;
  for (const MomentRow& row : table.rows) {
    const double nd = static_cast<double>(row.n);
    const double ln = std::log(nd);
    const double mean_num = (5 * md * md + md) * nd * nd - 2 * md * m0d * (2 * md - m0d + 1) * nd * ln;
    report.entries.push_back(leading_entry(
        "mean_Z", row.n, row.mean_z, (row.mean_z.get_d() * (nd + m0d - 1) - mean_num) / nd, "n"));
    const double second_num = std::pow(5 * md * md + md, 2) * std::pow(nd, 5) -
                              4 * md * md * m0d * (5 * md + 1) * (2 * md - m0d + 1) * std::pow(nd, 4) * ln;
    const double second_den = (nd + m0d - 2) * (nd + m0d - 1) * (nd + m0d - 1);
    report.entries.push_back(leading_entry("second_Z", row.n, row.second_z,
                                           (row.second_z.get_d() * second_den - second_num) / std::pow(nd, 4),
                                           "n^4"));
    const double var_lead = 4 * md * md * (md + 1) * nd + 4 * md * md * m0d * (m0d - 2 * md - 1) * ln * ln;
    report.entries.push_back(
        leading_entry("var_Z", row.n, row.var_z, (row.var_z.get_d() - var_lead) / ln, "log n"));
  }
}

}  // namespace

Rational harmonic(std::uint64_t k) {
  if (k == 0) return 0;
  mpz_class p, q;
  harmonic_split(1, k + 1, p, q);
  Rational h(p, q);
  h.canonicalize();
  return h;
}

Rational half_gamma_ratio(std::uint64_t n) {
  if (n < 2) throw DomainError("Gamma(n + 1/2) / Gamma(n - 1) requires n >= 2");
  mpz_class four_pow;
  mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(n));
  Rational r(factorial(2 * n), four_pow * factorial(n) * factorial(n - 2));
  r.canonicalize();
  return r;
}

Rational port_mean_closed(std::uint64_t n) {
  if (n < 1) throw DomainError("PORT mean requires n >= 1");
  return 2 * mpz_class(static_cast<unsigned long>(n - 1)) * harmonic(n - 1);
}

Rational port_cubic_closed(std::uint64_t n) {
  if (n < 2) throw DomainError("PORT cubic index requires n >= 2");
  const mpz_class n1 = static_cast<unsigned long>(n - 1);
  return 32 * half_gamma_ratio(n) - 6 * n1 * (harmonic(n - 1) + Rational(8, 3));
}

Rational port_quartic_closed(std::uint64_t n) {
  if (n < 2) throw DomainError("PORT quartic index requires n >= 2");
  const mpz_class n1 = static_cast<unsigned long>(n - 1);
  const mpz_class nn = static_cast<unsigned long>(n);
  return 36 * n1 * (nn + Rational(7, 18) * harmonic(n - 1) + Rational(5, 3)) - 192 * half_gamma_ratio(n);
}

Rational caterpillar_mean_closed(std::uint64_t n, std::uint32_t m_) {
  if (m_ < 2) throw DomainError("caterpillar requires m >= 2");
  const mpz_class m = m_;
  const mpz_class nn = static_cast<unsigned long>(n);
  Rational main((3 * m - 4) * nn * nn + (4 * m - 3) * (3 * m - 4) * nn + 2 * (2 * m - 3),
                (2 * m - 1) * (m - 1));
  main.canonicalize();
  return main + 2 * (2 * m - 3);
}

Rational caterpillar_cubic_closed(std::uint64_t n, std::uint32_t m_) {
  if (m_ < 2) throw DomainError("caterpillar requires m >= 2");
  const mpz_class m = m_;
  const mpz_class nn = static_cast<unsigned long>(n);
  Rational main(3 * (2 * m - 3) * nn * nn * nn + (27 * m * m - 60 * m + 27) * nn * nn +
                    (40 * m * m * m - 111 * m * m + 86 * m - 18) * nn,
                (2 * m - 1) * m * (m - 1));
  main.canonicalize();
  return main + 2 * (4 * m - 7);
}

Rational caterpillar_mean_offset(std::uint32_t m_) {
  if (m_ < 2) throw DomainError("caterpillar requires m >= 2");
  const mpz_class m = m_;
  Rational r(2 * (2 * m - 3), (2 * m - 1) * (m - 1));
  r.canonicalize();
  return r;
}

double port_skewness_limit_closed() {
  const double g = kEulerGamma;
  const double pi2 = kPi * kPi;
  const double num = -72 * g * g + 164 * g - 41.0 / 3 + 4 * pi2 * g - 8 * g * g * g;
  return num / std::pow(16 - 2 * pi2 / 3, 1.5);
}

AuditReport closed_form_audit(const ModelSpec& spec, std::uint64_t n_lo, std::uint64_t n_hi) {
  AuditReport report;
  report.model = spec;
  if (n_hi < n_lo) throw DomainError("audit range is empty");
  switch (spec.kind()) {
    case ModelKind::Port: audit_port(report, n_lo, n_hi); break;
    case ModelKind::Caterpillar: audit_caterpillar(report, spec.m(), n_lo, n_hi); break;
    case ModelKind::ExtendedRrt: audit_ext_rrt(report, spec.m0(), spec.m(), n_lo, n_hi); break;
  }
  return report;
}

}  // namespace zagreb
