#include "zagreb/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "zagreb/errors.hpp"

namespace zagreb {

namespace {

using Float = mpf_class;

// ~2^-128 per rounded operation; the recurrences below add nonnegative terms,
// so the relative error of a state variable grows by at most the number of
// rounded operations per step times the unit roundoff.
const double kUnitRoundoff = std::ldexp(1.0, -static_cast<int>(kFloatRegimeBits));

template <class T>
T constant(long value);

template <>
Rational constant<Rational>(long value) {
  return Rational(value);
}

template <>
Float constant<Float>(long value) {
  return Float(value, kFloatRegimeBits);
}

template <class T>
T frac(std::int64_t num, std::uint64_t den);

template <>
Rational frac<Rational>(std::int64_t num, std::uint64_t den) {
  Rational q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<unsigned long>(den))};
  q.canonicalize();
  return q;
}

template <>
Float frac<Float>(std::int64_t num, std::uint64_t den) {
  Float f(static_cast<long>(num), kFloatRegimeBits);
  f /= static_cast<unsigned long>(den);
  return f;
}

Rational to_rational(const Float& f) { return Rational(f); }
Rational to_rational(const Rational& q) { return q; }

class RowSelector {
 public:
  RowSelector(const TableOptions& options, std::uint64_t initial, std::uint64_t n_max)
      : all_(options.rows.empty()), wanted_(options.rows.begin(), options.rows.end()) {
    for (const auto n : wanted_) {
      if (n < initial || n > n_max) {
        throw DomainError("requested row n=" + std::to_string(n) + " outside [" +
                          std::to_string(initial) + ", " + std::to_string(n_max) + "]");
      }
    }
  }

  bool wants(std::uint64_t n) const { return all_ || wanted_.contains(n); }

 private:
  bool all_;
  std::set<std::uint64_t> wanted_;
};

void check_n_max(const ModelSpec& spec, std::uint64_t n_max) {
  if (n_max < spec.initial_time()) {
    throw DomainError("n_max=" + std::to_string(n_max) + " is below the initial time " +
                      std::to_string(spec.initial_time()) + " of " + spec.name());
  }
}

// ---------------------------------------------------------------------------
// Extended RRT

/// One-step coefficients at time n, with N = n + m0 - 2 existing nodes and
/// degree total T = m0(m0 - 1) + 2m(n - 2). For the uniformly chosen
/// m-subset S and s = sum_{j in S} D_j:
///   E[s | F]   = (m/N) T
///   E[s^2 | F] = (m/N) Z + m(m-1)/(N(N-1)) (T^2 - Z)
struct ExtRrtCoefficients {
  Rational drift;           // E[Z_n | F] - Z_{n-1}
  Rational c1;              // E[Z_n^2 | F] = Z^2 + c1 Z + c2
  Rational c2;
  Rational var_slope;       // Var(Z_n | F) = var_slope Z + var_intercept
  Rational var_intercept;
};

ExtRrtCoefficients ext_rrt_coefficients(std::uint64_t n, std::uint32_t m0_, std::uint32_t m_) {
  const mpz_class m = m_;
  const mpz_class m0 = m0_;
  const mpz_class population = mpz_class(static_cast<unsigned long>(n)) + m0 - 2;
  const mpz_class total = m0 * (m0 - 1) + 2 * m * mpz_class(static_cast<unsigned long>(n - 2));
  const mpz_class attach = m * m + m;  // m^2 + m

  Rational pair_rate = 0;  // m(m-1) / (N(N-1))
  if (m_ > 1) pair_rate = Rational(m * (m - 1), population * (population - 1));
  pair_rate.canonicalize();
  Rational single_rate(m, population);  // m / N
  single_rate.canonicalize();
  const Rational mean_s = single_rate * total;

  ExtRrtCoefficients c;
  c.drift = 2 * mean_s + attach;
  c.c1 = 4 * single_rate - 4 * pair_rate + 4 * mean_s + 2 * attach;
  c.c2 = 4 * pair_rate * total * total + attach * attach + 4 * attach * mean_s;
  c.var_slope = 4 * (single_rate - pair_rate);
  c.var_intercept = 4 * (pair_rate * total * total - mean_s * mean_s);
  return c;
}

/// Exact iteration over a shared denominator. With L the lcm of every
/// coefficient denominator seen so far, E[Z]*L, E[Z^2]*L^2 and Var*L^2 are
/// integers; the state stores them scaled by D = L^2 so each step costs a
/// handful of big-by-small multiplications and exact divisions, and the
/// gcd reductions happen only when a row is read out.
class ExtRrtExact {
 public:
  ExtRrtExact(std::uint32_t m0, std::uint32_t m) : m0_(m0), m_(m) {
    const mpz_class z1 = mpz_class(m0) * (m0 - 1) * (m0 - 1);
    mean_ = z1;
    second_ = z1 * z1;
    variance_ = 0;
  }

  std::uint64_t n() const { return n_; }

  void advance() {
    const std::uint64_t n = n_ + 1;
    const ExtRrtCoefficients c = ext_rrt_coefficients(n, m0_, m_);
    for (const Rational* q : {&c.drift, &c.c1, &c.c2, &c.var_slope, &c.var_intercept}) {
      absorb(q->get_den());
    }
    add_scaled(second_, c.c1, mean_);
    add_scaled(second_, c.c2, scale_);
    add_scaled(variance_, c.var_slope, mean_);
    add_scaled(variance_, c.var_intercept, scale_);
    add_scaled(mean_, c.drift, scale_);
    n_ = n;
  }

  Rational mean() const { return unscale(mean_); }
  Rational second() const { return unscale(second_); }
  Rational variance_by_increments() const { return unscale(variance_); }

 private:
  void absorb(const mpz_class& den) {
    if (den == 1) return;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), base_.get_mpz_t(), den.get_mpz_t());
    if (g == den) return;
    const mpz_class factor = den / g;
    const mpz_class factor_sq = factor * factor;
    base_ *= factor;
    scale_ *= factor_sq;
    mean_ *= factor_sq;
    second_ *= factor_sq;
    variance_ *= factor_sq;
  }

  // acc += coef * base; coef's denominator divides base by construction.
  static void add_scaled(mpz_class& acc, const Rational& coef, const mpz_class& base) {
    if (coef == 0) return;
    mpz_class quotient;
    mpz_divexact(quotient.get_mpz_t(), base.get_mpz_t(), coef.get_den_mpz_t());
    mpz_addmul(acc.get_mpz_t(), quotient.get_mpz_t(), coef.get_num_mpz_t());
  }

  Rational unscale(const mpz_class& value) const {
    Rational q(value, scale_);
    q.canonicalize();
    return q;
  }

  std::uint32_t m0_;
  std::uint32_t m_;
  std::uint64_t n_ = 1;
  mpz_class base_ = 1;   // L
  mpz_class scale_ = 1;  // L^2
  mpz_class mean_;
  mpz_class second_;
  mpz_class variance_;
};

class ExtRrtFloat {
 public:
  explicit ExtRrtFloat(const ExtRrtExact& exact, std::uint32_t m0, std::uint32_t m)
      : m0_(m0), m_(m), n_(exact.n()),
        mean_(exact.mean(), kFloatRegimeBits),
        second_(exact.second(), kFloatRegimeBits) {}

  void advance() {
    const std::uint64_t n = n_ + 1;
    const ExtRrtCoefficients c = ext_rrt_coefficients(n, m0_, m_);
    const Float c1(c.c1, kFloatRegimeBits);
    const Float c2(c.c2, kFloatRegimeBits);
    const Float drift(c.drift, kFloatRegimeBits);
    second_ += c1 * mean_ + c2;
    mean_ += drift;
    error_ += 8 * kUnitRoundoff;
    n_ = n;
  }

  std::uint64_t n() const { return n_; }
  const Float& mean() const { return mean_; }
  const Float& second() const { return second_; }
  double error() const { return error_; }

 private:
  std::uint32_t m0_;
  std::uint32_t m_;
  std::uint64_t n_;
  Float mean_;
  Float second_;
  double error_ = 0.0;
};

MomentRow ext_rrt_row(const ExtRrtExact& exact) {
  MomentRow row;
  row.n = exact.n();
  row.mean_z = exact.mean();
  row.second_z = exact.second();
  row.var_z = row.second_z - row.mean_z * row.mean_z;
  return row;
}

MomentRow ext_rrt_row(const ExtRrtFloat& approx) {
  MomentRow row;
  row.n = approx.n();
  row.regime = Regime::Float128;
  row.mean_z = to_rational(approx.mean());
  row.second_z = to_rational(approx.second());
  const Float var = approx.second() - approx.mean() * approx.mean();
  row.var_z = to_rational(var);
  // Subtraction amplifies the relative error by (E[Z^2] + E[Z]^2) / Var.
  const double amplification =
      var > 0 ? Float(2 * approx.second() / var).get_d() : std::numeric_limits<double>::infinity();
  row.relative_error_bound = approx.error() * std::max(1.0, amplification);
  return row;
}

ExtRrtExact iterate_ext_rrt(std::uint64_t n, std::uint32_t m0, std::uint32_t m) {
  const ModelSpec spec = ModelSpec::extended_rrt(m0, m);
  check_n_max(spec, n);
  ExtRrtExact exact(m0, m);
  while (exact.n() < n) exact.advance();
  return exact;
}

// ---------------------------------------------------------------------------
// PORT

template <class T>
struct PortState {
  T z = constant<T>(2);
  T y = constant<T>(2);
  T x = constant<T>(2);
  T z2 = constant<T>(4);
  T zy = constant<T>(4);
  T z3 = constant<T>(8);
};

/// Averages the one-step relations over a parent drawn with probability
/// D / (2(n - 2)); E over that draw of D^k is (sum D^{k+1}) / (2(n - 2)).
template <class T>
void port_advance(PortState<T>& s, std::uint64_t n) {
  const std::uint64_t d = n - 2;
  const std::int64_t ni = static_cast<std::int64_t>(n);
  PortState<T> next;
  next.z = s.z * frac<T>(ni - 1, d) + 2;
  next.y = s.y + frac<T>(3, 2 * d) * (s.y + s.z) + 2;
  next.x = s.x * frac<T>(ni, d) + frac<T>(3, d) * s.y + frac<T>(2, d) * s.z + 2;
  next.z2 = s.z2 * frac<T>(ni, d) + frac<T>(2, d) * s.y + frac<T>(4, d) * s.z + 4 * s.z + 4;
  next.zy = s.zy * frac<T>(2 * ni + 1, 2 * d) + frac<T>(3, 2 * d) * s.z2 + frac<T>(3, d) * s.x +
            frac<T>(2 * (ni + 1), d) * s.y + frac<T>(2 * ni + 1, d) * s.z + 4;
  next.z3 = s.z3 * frac<T>(ni + 1, d) + frac<T>(6 * ni, d) * s.z2 + frac<T>(6, d) * s.zy +
            frac<T>(12 * (ni - 1), d) * s.z + frac<T>(4, d) * s.x + frac<T>(12, d) * s.y + 8;
  s = std::move(next);
}

template <class T>
MomentRow port_row(const PortState<T>& s, std::uint64_t n) {
  MomentRow row;
  row.n = n;
  row.mean_z = to_rational(s.z);
  row.second_z = to_rational(s.z2);
  row.var_z = row.second_z - row.mean_z * row.mean_z;
  row.third_z = to_rational(s.z3);
  row.mean_y = to_rational(s.y);
  row.mean_x = to_rational(s.x);
  row.mixed_zy = to_rational(s.zy);
  if (row.var_z > 0) row.skewness_z = standardized_third_moment(row.third_central(), row.var_z);
  return row;
}

// ---------------------------------------------------------------------------
// Caterpillar

template <class T>
struct CaterpillarState {
  T z;
  T y;
  T z2;
};

/// Parent j on the spine is drawn with probability D_j / (n + 2m - 3), so
/// E[D^k] over the draw is (sum_spine D^{k+1}) / (n + 2m - 3), and the spine
/// power sums are the all-node ones minus the n - 1 leaves.
template <class T>
void caterpillar_advance(CaterpillarState<T>& s, std::uint64_t n, std::uint32_t m) {
  const std::uint64_t spine_total = n + 2 * std::uint64_t{m} - 3;
  const auto leaves = static_cast<unsigned long>(n - 1);
  CaterpillarState<T> next{constant<T>(0), constant<T>(0), constant<T>(0)};
  const T spine_z = s.z - leaves;
  const T spine_y = s.y - leaves;
  next.z = s.z + frac<T>(2, spine_total) * spine_z + 2;
  next.y = s.y + frac<T>(3, spine_total) * (spine_y + spine_z) + 2;
  next.z2 = s.z2 + frac<T>(4, spine_total) * (s.z2 - leaves * s.z) + frac<T>(4, spine_total) * spine_y +
            frac<T>(8, spine_total) * spine_z + 4 * s.z + 4;
  s = std::move(next);
}

template <class T>
MomentRow caterpillar_row(const CaterpillarState<T>& s, std::uint64_t n) {
  MomentRow row;
  row.n = n;
  row.mean_z = to_rational(s.z);
  row.second_z = to_rational(s.z2);
  row.var_z = row.second_z - row.mean_z * row.mean_z;
  row.mean_y = to_rational(s.y);
  return row;
}

template <class T>
CaterpillarState<T> caterpillar_initial(std::uint32_t m) {
  const long z0 = 4 * static_cast<long>(m) - 6;
  return {constant<T>(z0), constant<T>(8 * static_cast<long>(m) - 14), constant<T>(z0 * z0)};
}

template <class T>
CaterpillarState<T> to_float(const CaterpillarState<Rational>& s) {
  return {Float(s.z, kFloatRegimeBits), Float(s.y, kFloatRegimeBits), Float(s.z2, kFloatRegimeBits)};
}

PortState<Float> to_float(const PortState<Rational>& s) {
  PortState<Float> f;
  f.z = s.z;
  f.y = s.y;
  f.x = s.x;
  f.z2 = s.z2;
  f.zy = s.zy;
  f.z3 = s.z3;
  return f;
}

/// Error bound for rows of the float regime: state error plus the
/// amplification of the variance subtraction.
void mark_float(MomentRow& row, double state_error) {
  row.regime = Regime::Float128;
  const double var = row.var_z.get_d();
  const double amplification = var > 0 ? 2 * row.second_z.get_d() / var : 1.0;
  row.relative_error_bound = state_error * std::max(1.0, amplification);
}

}  // namespace

const char* to_string(Regime regime) {
  return regime == Regime::Exact ? "exact" : "float128";
}

Rational MomentRow::third_central() const {
  if (!third_z) throw DomainError("row has no third moment");
  return *third_z - 3 * mean_z * second_z + 2 * mean_z * mean_z * mean_z;
}

const MomentRow& MomentTable::at(std::uint64_t n) const {
  const auto it = std::find_if(rows.begin(), rows.end(), [n](const MomentRow& r) { return r.n == n; });
  if (it == rows.end()) throw DomainError("moment table holds no row for n=" + std::to_string(n));
  return *it;
}

CltParams clt_params(std::uint32_t m, std::uint64_t n) {
  const double md = m;
  CltParams p;
  p.centering = (5 * md * md + md) * static_cast<double>(n);
  p.scale = 2 * md * std::sqrt(md + 1) * std::sqrt(static_cast<double>(n));
  p.limit_variance = 4 * md * md * md + 4 * md * md;
  return p;
}

mpf_class standardized_third_moment(const Rational& third_central, const Rational& variance) {
  if (variance <= 0) throw UndefinedSkewnessError("skewness undefined: variance is zero");
  const mpf_class var(variance, kEvaluationBits);
  const mpf_class mu3(third_central, kEvaluationBits);
  mpf_class root(0, kEvaluationBits);
  root = sqrt(var);
  mpf_class out(0, kEvaluationBits);
  out = mu3 / (var * root);
  return out;
}

Rational ext_rrt_mean(std::uint64_t n, std::uint32_t m0, std::uint32_t m) {
  return iterate_ext_rrt(n, m0, m).mean();
}

Rational ext_rrt_second_moment(std::uint64_t n, std::uint32_t m0, std::uint32_t m) {
  return iterate_ext_rrt(n, m0, m).second();
}

Rational ext_rrt_variance(std::uint64_t n, std::uint32_t m0, std::uint32_t m) {
  const ExtRrtExact exact = iterate_ext_rrt(n, m0, m);
  const Rational mean = exact.mean();
  return exact.second() - mean * mean;
}

Rational ext_rrt_variance_by_increments(std::uint64_t n, std::uint32_t m0, std::uint32_t m) {
  return iterate_ext_rrt(n, m0, m).variance_by_increments();
}

MomentTable ext_rrt_moment_table(std::uint32_t m0, std::uint32_t m, std::uint64_t n_max,
                                 const TableOptions& options) {
  MomentTable table;
  table.model = ModelSpec::extended_rrt(m0, m);
  check_n_max(table.model, n_max);
  const RowSelector select(options, table.model.initial_time(), n_max);

  ExtRrtExact exact(m0, m);
  if (select.wants(1)) table.rows.push_back(ext_rrt_row(exact));
  while (exact.n() < n_max && exact.n() < options.float_threshold) {
    exact.advance();
    if (select.wants(exact.n())) table.rows.push_back(ext_rrt_row(exact));
  }
  if (exact.n() < n_max) {
    ExtRrtFloat approx(exact, m0, m);
    while (approx.n() < n_max) {
      approx.advance();
      if (select.wants(approx.n())) table.rows.push_back(ext_rrt_row(approx));
    }
  }
  return table;
}

MomentTable port_moment_table(std::uint64_t n_max, const TableOptions& options) {
  MomentTable table;
  table.model = ModelSpec::port();
  check_n_max(table.model, n_max);
  const RowSelector select(options, 2, n_max);

  PortState<Rational> exact;
  std::uint64_t n = 2;
  if (select.wants(n)) table.rows.push_back(port_row(exact, n));
  while (n < n_max && n < options.float_threshold) {
    port_advance(exact, ++n);
    if (select.wants(n)) table.rows.push_back(port_row(exact, n));
  }
  if (n < n_max) {
    PortState<Float> approx = to_float(exact);
    double error = 0.0;
    while (n < n_max) {
      port_advance(approx, ++n);
      error += 40 * kUnitRoundoff;
      if (select.wants(n)) {
        MomentRow row = port_row(approx, n);
        mark_float(row, error);
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

mpf_class port_skewness(std::uint64_t n) {
  if (n < 2) throw DomainError("PORT skewness requires n >= 2");
  const MomentTable table = port_moment_table(n, TableOptions{{n}});
  const MomentRow& row = table.at(n);
  if (!row.skewness_z) {
    throw UndefinedSkewnessError("skewness of Z_" + std::to_string(n) +
                                 " undefined: the index is deterministic");
  }
  return *row.skewness_z;
}

MomentTable caterpillar_moment_table(std::uint32_t m, std::uint64_t n_max,
                                     const TableOptions& options) {
  MomentTable table;
  table.model = ModelSpec::caterpillar(m);
  const RowSelector select(options, 0, n_max);

  CaterpillarState<Rational> exact = caterpillar_initial<Rational>(m);
  std::uint64_t n = 0;
  if (select.wants(n)) table.rows.push_back(caterpillar_row(exact, n));
  while (n < n_max && n < options.float_threshold) {
    caterpillar_advance(exact, ++n, m);
    if (select.wants(n)) table.rows.push_back(caterpillar_row(exact, n));
  }
  if (n < n_max) {
    CaterpillarState<Float> approx = to_float<Float>(exact);
    double error = 0.0;
    while (n < n_max) {
      caterpillar_advance(approx, ++n, m);
      error += 24 * kUnitRoundoff;
      if (select.wants(n)) {
        MomentRow row = caterpillar_row(approx, n);
        mark_float(row, error);
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

MomentTable moment_table(const ModelSpec& spec, std::uint64_t n_max, const TableOptions& options) {
  switch (spec.kind()) {
    case ModelKind::ExtendedRrt: return ext_rrt_moment_table(spec.m0(), spec.m(), n_max, options);
    case ModelKind::Port: return port_moment_table(n_max, options);
    case ModelKind::Caterpillar: return caterpillar_moment_table(spec.m(), n_max, options);
  }
  throw DomainError("unknown model");
}

}  // namespace zagreb
