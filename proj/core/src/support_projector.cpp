#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "genloc/errors.hpp"
#include "genloc/integral.hpp"
#include "genloc/series.hpp"

namespace genloc::series {

namespace {

constexpr std::size_t kMaxBlock = 4000;

// All basis frequency vectors of one parity block: a_i in [0, n] for cos,
// [1, n] for sin.
std::vector<std::vector<Coord>> block_freqs(const std::vector<int>& parity, Coord n) {
  std::vector<std::vector<Coord>> out{{}};
  for (int p : parity) {
    std::vector<std::vector<Coord>> next;
    for (const auto& prefix : out)
      for (Coord a = p ? 1 : 0; a <= n; ++a) {
        auto v = prefix;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

SupportProjector::SupportProjector(int dim, Coord n_max, double radius, double tolerance)
    : dim_(dim), n_max_(n_max), radius_(radius) {
  if (dim < 1 || dim > 8) throw ParameterError("support projector supports 1 <= N <= 8");
  if (n_max < 0) throw ParameterError("band limit must be >= 0");
  if (!(radius > 0.0) || radius > std::numbers::pi) throw ParameterError("ball radius must be in (0, pi]");
  if (!(tolerance > 0.0)) throw ParameterError("tolerance must be positive");

  // Ball integral of e^{icx} for every integer |c|^2 that can occur.
  const Coord max_c2 = static_cast<Coord>(dim) * (2 * n_max) * (2 * n_max);
  std::vector<double> ball(static_cast<std::size_t>(max_c2) + 1);
  const double vol_scale = std::pow(2.0 * std::numbers::pi, dim);
  for (Coord c2 = 0; c2 <= max_c2; ++c2)
    ball[static_cast<std::size_t>(c2)] =
        vol_scale * integral::ball_kernel(std::sqrt(static_cast<double>(c2)), radius, dim);

  const std::size_t signs = std::size_t{1} << dim;
  for (std::size_t mask = 0; mask < signs; ++mask) {
    Block blk;
    for (int a = 0; a < dim; ++a) blk.parity.push_back(static_cast<int>((mask >> a) & 1u));
    if (n_max == 0 && mask != 0) continue;
    blk.freqs = block_freqs(blk.parity, n_max);
    const std::size_t size = blk.freqs.size();
    if (size == 0) continue;
    if (size > kMaxBlock) throw ResourceError("support projector block exceeds 4000 basis functions");
    basis_size_ += size;
    blk.scale.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      double nrm = 1.0;
      for (int a = 0; a < dim; ++a)
        nrm *= (blk.parity[static_cast<std::size_t>(a)] == 0 && blk.freqs[i][static_cast<std::size_t>(a)] == 0)
                   ? 2.0 * std::numbers::pi
                   : std::numbers::pi;
      blk.scale[i] = 1.0 / std::sqrt(nrm);
    }

    Eigen::MatrixXd g(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    const double half_pow = std::pow(0.5, dim);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = 0.0;
        for (std::size_t s = 0; s < signs; ++s) {
          double w = 1.0;
          Coord c2 = 0;
          for (int a = 0; a < dim; ++a) {
            const bool minus = (s >> a) & 1u;
            const Coord c = minus ? blk.freqs[i][static_cast<std::size_t>(a)] + blk.freqs[j][static_cast<std::size_t>(a)]
                                  : blk.freqs[i][static_cast<std::size_t>(a)] - blk.freqs[j][static_cast<std::size_t>(a)];
            c2 += c * c;
            if (minus && blk.parity[static_cast<std::size_t>(a)] == 1) w = -w;
          }
          sum += w * ball[static_cast<std::size_t>(c2)];
        }
        const double v = half_pow * sum * blk.scale[i] * blk.scale[j];
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    if (eig.info() != Eigen::Success) throw Error("eigensolver failed in the support projector");
    const auto& mu = eig.eigenvalues();
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
      if (mu(k) > tolerance) break;  // ascending order
      worst_ = std::max(worst_, mu(k));
      std::vector<double> v(size);
      for (std::size_t i = 0; i < size; ++i) v[i] = eig.eigenvectors()(static_cast<Eigen::Index>(i), k);
      blk.vectors.push_back(std::move(v));
    }
    blocks_.push_back(std::move(blk));
  }
}

std::size_t SupportProjector::null_dimension() const {
  std::size_t total = 0;
  for (const auto& b : blocks_) total += b.vectors.size();
  return total;
}

SpectralField SupportProjector::draw(std::mt19937_64& rng) const {
  SpectralField f(dim_, n_max_);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto coeffs = f.coeffs();
  const auto side = static_cast<std::size_t>(2 * n_max_ + 1);
  for (const auto& blk : blocks_) {
    std::vector<double> c(blk.freqs.size(), 0.0);
    for (const auto& v : blk.vectors) {
      const double g = gauss(rng);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += g * v[i];
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double amp = c[i] * blk.scale[i];
      if (amp == 0.0) continue;
      // Expand prod_a u_a(a_i x_a) into exponentials, 2^N sign choices.
      const std::size_t signs = std::size_t{1} << dim_;
      for (std::size_t s = 0; s < signs; ++s) {
        cplx w = amp;
        std::size_t idx = 0;
        bool skip = false;
        for (int a = 0; a < dim_; ++a) {
          const Coord fa = blk.freqs[i][static_cast<std::size_t>(a)];
          const bool minus = (s >> a) & 1u;
          if (fa == 0) {
            if (minus) {
              skip = true;
              break;
            }
          } else if (blk.parity[static_cast<std::size_t>(a)] == 0) {
            w *= 0.5;
          } else {
            w *= minus ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
          }
          const Coord n = minus ? -fa : fa;
          idx = idx * side + static_cast<std::size_t>(n + n_max_);
        }
        if (!skip) coeffs[idx] += w;
      }
    }
  }
  f.mark_real(1e-12);
  return f;
}

}  // namespace genloc::series
