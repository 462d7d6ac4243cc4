/// @file norms.cpp
/// @brief Ky Fan k-norm, its dual, and the proximal pair.

#include "kyfan/norms.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

#include "kyfan/spectral.hpp"
#include "kyfan/tolerances.hpp"

namespace kyfan {

namespace {

void check_k(int k, int m) {
  if (k < 1 || k > m) {
    throw KyfanError("PARAMETER_ERROR",
                     "k must satisfy 1 <= k <= min(rows, cols)");
  }
}

Vector singular_values(const Matrix& a) {
  if (!a.allFinite()) {
    throw KyfanError("INPUT_ERROR", "matrix has non-finite entries");
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

}  // namespace

double vector_knorm(const Vector& x, int k) {
  check_k(k, static_cast<int>(x.size()));
  std::vector<double> mag(x.data(), x.data() + x.size());
  for (double& v : mag) v = std::abs(v);
  std::sort(mag.begin(), mag.end(), std::greater<double>());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += mag[i];
  return sum;
}

double kyfan_norm(const Matrix& a, int k) {
  const Vector s = singular_values(a);
  check_k(k, static_cast<int>(s.size()));
  return s.head(k).sum();
}

double dual_kyfan_norm(const Matrix& a, int k) {
  const Vector s = singular_values(a);
  check_k(k, static_cast<int>(s.size()));
  const double spectral = s(0);
  const double nuclear = s.sum();
  return std::max(spectral, nuclear / static_cast<double>(k));
}

Vector project_dual_ball(const Vector& x, int k) {
  const int m = static_cast<int>(x.size());
  check_k(k, m);
  if (!x.allFinite()) {
    throw KyfanError("INPUT_ERROR", "vector has non-finite entries");
  }
  const Vector y = x.cwiseAbs();

  // Projection of y >= 0 onto {s : 0 <= s <= 1, sum(s) <= k} is
  // s_i = clip(y_i - lambda, 0, 1) with the smallest lambda >= 0 such that
  // sum(s) <= k.  phi(lambda) = sum_i clip(y_i - lambda, 0, 1) is piecewise
  // linear and non-increasing with breakpoints at y_i and y_i - 1.
  auto phi = [&y, m](double lam) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      s += std::clamp(y(i) - lam, 0.0, 1.0);
    }
    return s;
  };

  double lambda = 0.0;
  const double kd = static_cast<double>(k);
  if (phi(0.0) > kd + tol::multiplier_tie) {
    std::vector<double> bp;
    bp.reserve(2 * m + 1);
    bp.push_back(0.0);
    for (int i = 0; i < m; ++i) {
      if (y(i) > 0.0) bp.push_back(y(i));
      if (y(i) - 1.0 > 0.0) bp.push_back(y(i) - 1.0);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) {
                           return std::abs(a - b) <= tol::multiplier_tie;
                         }),
             bp.end());
    // Find the segment [bp[j], bp[j+1]] on which phi crosses k, then solve
    // the linear equation phi(lambda) = k on that segment.
    std::size_t j = 0;
    while (j + 1 < bp.size() && phi(bp[j + 1]) > kd) ++j;
    const double lo = bp[j];
    const double hi = (j + 1 < bp.size()) ? bp[j + 1] : bp[j] + 1.0;
    const double flo = phi(lo);
    const double fhi = phi(hi);
    if (fhi >= kd - tol::multiplier_tie &&
        std::abs(flo - fhi) <= tol::multiplier_tie) {
      lambda = lo;  // plateau at level k; any point gives the same projection
    } else {
      lambda = lo + (flo - kd) * (hi - lo) / (flo - fhi);
    }
    lambda = std::max(lambda, 0.0);
  }

  Vector s(m);
  for (int i = 0; i < m; ++i) {
    const double mag = std::clamp(y(i) - lambda, 0.0, 1.0);
    s(i) = x(i) >= 0.0 ? mag : -mag;
  }
  return s;
}

Vector vector_knorm_prox(const Vector& x, int k) {
  return x - project_dual_ball(x, k);
}

ProxPair matrix_prox_pair(const Matrix& x, int k, double group_tol) {
  const OrderedSvd svd = ordered_svd(x, group_tol);
  check_k(k, svd.m());
  ProxPair out;
  out.u_bar = project_dual_ball(svd.sigma, k);
  out.sigma_bar = svd.sigma - out.u_bar;

  auto reassemble = [&svd](const Vector& d) {
    Matrix dm = Matrix::Zero(svd.m(), svd.n());
    dm.diagonal().head(svd.m()) = d;
    Matrix r = svd.u * dm * svd.v.transpose();
    if (svd.transposed) r.transposeInPlace();
    return r;
  };
  out.prox_theta = reassemble(out.sigma_bar);
  out.prox_theta_star = reassemble(out.u_bar);
  return out;
}

}  // namespace kyfan
