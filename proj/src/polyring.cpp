#include "semimoment/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "semimoment/errors.hpp"

namespace semimoment {

namespace {

double ipow(double x, unsigned e) {
  double r = 1.0;
  while (e != 0) {
    if (e & 1U) r *= x;
    x *= x;
    e >>= 1U;
  }
  return r;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Monomials of exactly degree deg, descending lexicographic exponent order.
void append_degree(std::size_t d, unsigned deg, std::vector<unsigned>& scratch, std::size_t var,
                   std::vector<Monomial>& out) {
  if (var + 1 == d) {
    scratch[var] = deg;
    out.emplace_back(scratch);
    return;
  }
  for (unsigned e = deg + 1; e-- > 0;) {
    scratch[var] = e;
    append_degree(d, deg - e, scratch, var + 1, out);
  }
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<unsigned> exponents) : exps_(std::move(exponents)) {
  if (exps_.empty()) throw ArgumentError("monomial needs at least one variable");
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0U);
}

Monomial Monomial::one(std::size_t dim) { return Monomial(std::vector<unsigned>(dim, 0)); }

Monomial Monomial::variable(std::size_t dim, std::size_t index) {
  if (index >= dim) throw ArgumentError("variable index out of range");
  std::vector<unsigned> e(dim, 0);
  e[index] = 1;
  return Monomial(std::move(e));
}

unsigned Monomial::weighted_degree(std::span<const unsigned> weights) const {
  if (weights.empty()) return degree_;
  if (weights.size() != exps_.size()) throw ArgumentError("weight vector length mismatch");
  unsigned w = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) w += weights[i] * exps_[i];
  return w;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (dim() != other.dim()) throw ArgumentError("monomial dimension mismatch");
  std::vector<unsigned> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return Monomial(std::move(e));
}

double Monomial::eval(std::span<const double> x) const {
  double r = 1.0;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0) r *= ipow(x[i], exps_[i]);
  return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  // Larger leading exponent sorts first within a degree.
  for (std::size_t i = 0; i < std::min(exps_.size(), other.exps_.size()); ++i)
    if (exps_[i] != other.exps_[i]) return other.exps_[i] <=> exps_[i];
  return exps_.size() <=> other.exps_.size();
}

std::string Monomial::to_string() const {
  if (degree_ == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] == 0) continue;
    if (!first) os << '*';
    first = false;
    os << 'x' << (i + 1);
    if (exps_[i] > 1) os << '^' << exps_[i];
  }
  return os.str();
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw ArgumentError("polynomial dimension must be >= 1");
}

Polynomial::Polynomial(std::size_t dim, Terms terms) : Polynomial(dim) {
  for (auto& [m, c] : terms) {
    if (m.dim() != dim) throw ArgumentError("term dimension does not match polynomial dimension");
    if (c != 0.0) terms_.emplace(m, c);
  }
}

Polynomial Polynomial::constant(std::size_t dim, double c) {
  return Polynomial(dim, Terms{{Monomial::one(dim), c}});
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t index) {
  return Polynomial(dim, Terms{{Monomial::variable(dim, index), 1.0}});
}

Polynomial Polynomial::monomial(const Monomial& m, double c) { return Polynomial(m.dim(), Terms{{m, c}}); }

unsigned Polynomial::degree() const { return terms_.empty() ? 0U : terms_.rbegin()->first.degree(); }

unsigned Polynomial::weighted_degree(std::span<const unsigned> weights) const {
  unsigned w = 0;
  for (const auto& [m, c] : terms_) w = std::max(w, m.weighted_degree(weights));
  return w;
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::max_abs_coefficient() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

double Polynomial::eval(std::span<const double> x) const {
  if (x.size() != dim_) throw ArgumentError("evaluation point dimension mismatch");
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += c * m.eval(x);
  return s;
}

double Polynomial::eval_abs(std::span<const double> x) const {
  if (x.size() != dim_) throw ArgumentError("evaluation point dimension mismatch");
  double s = 0.0;
  for (const auto& [m, c] : terms_) s += std::abs(c * m.eval(x));
  return s;
}

void Polynomial::require_same_dim(const Polynomial& q, const char* op) const {
  if (dim_ != q.dim_) throw ArgumentError(std::string("dimension mismatch in polynomial ") + op);
}

Polynomial Polynomial::operator-() const { return scaled(-1.0); }

Polynomial Polynomial::operator+(const Polynomial& q) const {
  require_same_dim(q, "addition");
  Polynomial r(*this);
  for (const auto& [m, c] : q.terms_) {
    auto [it, inserted] = r.terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) r.terms_.erase(it);
    }
  }
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& q) const { return *this + (-q); }

Polynomial Polynomial::operator*(const Polynomial& q) const {
  require_same_dim(q, "multiplication");
  Terms acc;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : q.terms_) acc[a * b] += ca * cb;
  return Polynomial(dim_, std::move(acc));
}

Polynomial Polynomial::scaled(double c) const {
  Terms t;
  for (const auto& [m, v] : terms_) t.emplace(m, v * c);
  return Polynomial(dim_, std::move(t));
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(dim_, 1.0);
  Polynomial base(*this);
  while (k != 0) {
    if (k & 1U) r = r * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    double a = std::abs(c);
    if (m.degree() == 0) os << a;
    else if (a == 1.0) os << m.to_string();
    else os << a << '*' << m.to_string();
  }
  return os.str();
}

// ------------------------------------------------------------ free functions

Polynomial compose(const Polynomial& p, std::span<const Polynomial> subs) {
  if (subs.size() != p.dim()) throw ArgumentError("compose: need one substitution per variable");
  if (subs.empty()) throw ArgumentError("compose: empty substitution list");
  const std::size_t target = subs.front().dim();
  for (const auto& s : subs)
    if (s.dim() != target) throw ArgumentError("compose: substitutions must share one dimension");

  // powers[i][e] = subs[i]^e, built lazily up to the largest exponent used.
  std::vector<std::vector<Polynomial>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) powers[i].push_back(Polynomial::constant(target, 1.0));
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * subs[i]);
    return powers[i][e];
  };

  Polynomial result(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < m.dim(); ++i)
      if (m[i] != 0) term = term * power(i, m[i]);
    result = result + term;
  }
  return result;
}

std::size_t basis_size(std::size_t d, unsigned n) {
  if (d == 0) throw ArgumentError("basis_size: d must be >= 1");
  return binomial(n + d, d);
}

std::vector<Monomial> mono_basis(std::size_t d, unsigned n) {
  if (d == 0) throw ArgumentError("mono_basis: d must be >= 1");
  std::vector<Monomial> out;
  out.reserve(basis_size(d, n));
  std::vector<unsigned> scratch(d, 0);
  for (unsigned deg = 0; deg <= n; ++deg) append_degree(d, deg, scratch, 0, out);
  return out;
}

std::size_t grlex_rank(const Monomial& m) {
  const std::size_t d = m.dim();
  const unsigned deg = m.degree();
  std::size_t rank = deg == 0 ? 0 : binomial(deg - 1 + d, d);
  unsigned remaining = deg;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    const std::size_t rest = d - i - 1;
    // Monomials with a larger exponent on variable i come first.
    for (unsigned a = m[i] + 1; a <= remaining; ++a) rank += binomial(remaining - a + rest - 1, rest - 1);
    remaining -= m[i];
  }
  return rank;
}

std::vector<Monomial> weighted_basis(std::size_t d, unsigned budget, std::span<const unsigned> weights) {
  if (weights.empty()) return mono_basis(d, budget);
  if (weights.size() != d) throw ArgumentError("weighted_basis: weight vector length mismatch");
  const unsigned wmin = *std::min_element(weights.begin(), weights.end());
  if (wmin == 0) throw ArgumentError("weighted_basis: weights must be positive");
  std::vector<Monomial> out;
  for (auto& m : mono_basis(d, budget / wmin))
    if (m.weighted_degree(weights) <= budget) out.push_back(std::move(m));
  return out;
}

}  // namespace semimoment
