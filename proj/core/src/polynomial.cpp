#include "genloc/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "genloc/errors.hpp"

namespace genloc {

HomogeneousPolynomial::HomogeneousPolynomial(int dim, std::vector<Term> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim < 1) throw ParameterError("polynomial dimension must be >= 1");
  if (terms_.empty()) throw ParameterError("polynomial needs at least one term");
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    if (static_cast<int>(term.alpha.size()) != dim)
      throw DimensionError("multi-index length differs from dimension");
    int deg = 0;
    for (int a : term.alpha) {
      if (a < 0) throw ParameterError("multi-index entries must be nonnegative");
      deg += a;
    }
    if (t == 0) degree_ = deg;
    if (deg != degree_) throw ParameterError("polynomial is not homogeneous");
  }
  if (degree_ < 1) throw ParameterError("polynomial degree must be >= 1");
}

HomogeneousPolynomial HomogeneousPolynomial::squared_norm(int dim) {
  std::vector<Term> terms;
  for (int i = 0; i < dim; ++i) {
    Term t;
    t.alpha.assign(static_cast<std::size_t>(dim), 0);
    t.alpha[static_cast<std::size_t>(i)] = 2;
    t.coeff = 1.0;
    terms.push_back(t);
  }
  return HomogeneousPolynomial(dim, std::move(terms));
}

HomogeneousPolynomial HomogeneousPolynomial::parse(const std::string& text, int dim) {
  std::vector<Term> terms;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) {
    throw InputError("cannot parse polynomial '" + text + "': " + why);
  };
  auto read_int = [&] {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail("expected an integer");
    return std::stoi(text.substr(start, i - start));
  };
  skip();
  while (i < text.size()) {
    double sign = 1.0;
    while (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      if (text[i] == '-') sign = -sign;
      ++i;
      skip();
    }
    Term term;
    term.alpha.assign(static_cast<std::size_t>(dim), 0);
    term.coeff = sign;
    bool have_factor = false;
    if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      std::size_t used = 0;
      term.coeff *= std::stod(text.substr(i), &used);
      i += used;
      have_factor = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    while (i < text.size() && text[i] == 'x') {
      ++i;
      const int var = read_int();
      if (var < 1 || var > dim) fail("variable x" + std::to_string(var) + " out of range");
      int power = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        power = read_int();
      }
      term.alpha[static_cast<std::size_t>(var - 1)] += power;
      have_factor = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (!have_factor) fail("empty term");
    terms.push_back(term);
    skip();
    if (i < text.size() && text[i] != '+' && text[i] != '-') fail("unexpected character");
  }
  return HomogeneousPolynomial(dim, std::move(terms));
}

double HomogeneousPolynomial::operator()(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_) throw DimensionError("polynomial argument dimension");
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (int a = 0; a < dim_; ++a) v *= std::pow(xi[static_cast<std::size_t>(a)], t.alpha[static_cast<std::size_t>(a)]);
    s += v;
  }
  return s;
}

double HomogeneousPolynomial::at_lattice(std::span<const std::int64_t> n) const {
  std::vector<double> xi(n.begin(), n.end());
  return (*this)(xi);
}

std::string HomogeneousPolynomial::to_string() const {
  std::ostringstream os;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    if (t > 0) os << " + ";
    os << terms_[t].coeff;
    for (int a = 0; a < dim_; ++a) {
      const int p = terms_[t].alpha[static_cast<std::size_t>(a)];
      if (p > 0) os << "*x" << (a + 1) << "^" << p;
    }
  }
  return os.str();
}

std::vector<std::vector<double>> sphere_points(int dim, std::size_t count) {
  if (dim < 1) throw ParameterError("sphere dimension must be >= 1");
  std::vector<std::vector<double>> pts;
  if (dim == 1) return {{1.0}, {-1.0}};
  pts.reserve(count);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double a = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
      pts.push_back({std::cos(a), std::sin(a)});
    }
    return pts;
  }
  if (dim == 3) {
    // Fibonacci lattice.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / static_cast<double>(count);
      const double rho = std::sqrt(1.0 - z * z);
      const double a = golden * static_cast<double>(k);
      pts.push_back({rho * std::cos(a), rho * std::sin(a), z});
    }
    return pts;
  }
  // Halton points pushed through the Box-Muller map and normalized.
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim > 16) throw ParameterError("sphere_points supports N <= 16");
  auto halton = [](std::size_t idx, int base) {
    double f = 1.0;
    double r = 0.0;
    while (idx > 0) {
      f /= base;
      r += f * static_cast<double>(idx % static_cast<std::size_t>(base));
      idx /= static_cast<std::size_t>(base);
    }
    return r;
  };
  for (std::size_t k = 1; pts.size() < count; ++k) {
    std::vector<double> g(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; a += 2) {
      const double u1 = halton(k, primes[a]);
      const double u2 = halton(k, primes[(a + 1) % 16]);
      const double rad = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
      g[static_cast<std::size_t>(a)] = rad * std::cos(2.0 * std::numbers::pi * u2);
      if (a + 1 < dim) g[static_cast<std::size_t>(a) + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
    }
    double norm = 0.0;
    for (double v : g) norm += v * v;
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    for (double& v : g) v /= norm;
    pts.push_back(std::move(g));
  }
  return pts;
}

double screen_minimum(const HomogeneousPolynomial& a, std::size_t count) {
  double best = INFINITY;
  for (const auto& p : sphere_points(a.dimension(), count)) best = std::min(best, a(p));
  return best;
}

void ellipticity_screen(const HomogeneousPolynomial& a, std::size_t count) {
  for (const auto& p : sphere_points(a.dimension(), count)) {
    const double v = a(p);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "polynomial " << a.to_string() << " is not positive at sphere point (";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
      os << "): value " << v;
      throw NotEllipticError(os.str());
    }
  }
}

}  // namespace genloc
