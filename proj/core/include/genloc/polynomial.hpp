#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace genloc {

/// A(xi) = sum_alpha a_alpha xi^alpha with every |alpha| equal to the degree.
class HomogeneousPolynomial {
 public:
  struct Term {
    std::vector<int> alpha;
    double coeff = 0.0;
  };

  HomogeneousPolynomial(int dim, std::vector<Term> terms);

  /// |xi|^2 in `dim` variables.
  static HomogeneousPolynomial squared_norm(int dim);
  /// Parses "1*x1^4 + 1*x2^4" / "x1^2 - x2^2" style input (variables x1..xN).
  static HomogeneousPolynomial parse(const std::string& text, int dim);

  int dimension() const { return dim_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }

  double operator()(std::span<const double> xi) const;
  double at_lattice(std::span<const std::int64_t> n) const;

  std::string to_string() const;

 private:
  int dim_;
  int degree_ = 0;
  std::vector<Term> terms_;
};

/// Deterministic quasi-uniform points on the unit sphere S^{N-1}.
std::vector<std::vector<double>> sphere_points(int dim, std::size_t count);

/// Necessary-only ellipticity check: A > 0 at `count` quasi-uniform sphere
/// points. Throws NotEllipticError naming the first failing point.
void ellipticity_screen(const HomogeneousPolynomial& a, std::size_t count = 10000);

/// Smallest value of A over the screen points (useful for radial bounds).
double screen_minimum(const HomogeneousPolynomial& a, std::size_t count = 10000);

}  // namespace genloc
