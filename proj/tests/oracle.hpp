#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the solver; affine problems are solved with a direct Eigen LU solve.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// F(x,y) = A x - B y + c on X = R^m, G(y,x) = C y - D x + e on Y = R^n, with
/// all blocks nonnegative so the pair is mixed monotone.
struct AffinePair {
  Eigen::MatrixXd A, B, C, D;
  Eigen::VectorXd c, e;
  double k = 0.0;  // max(|A|_1, |C|_1)
  double l = 0.0;  // max(|B|_1, |D|_1)

  int m() const { return static_cast<int>(A.rows()); }
  int n() const { return static_cast<int>(C.rows()); }

  Eigen::MatrixXd coupled() const {
    Eigen::MatrixXd M(m() + n(), m() + n());
    M << A, -B, -D, C;
    return M;
  }

  double spectral_radius() const {
    Eigen::EigenSolver<Eigen::MatrixXd> es(coupled(), false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }

  /// Direct solve of x = A x - B y + c, y = C y - D x + e.
  Eigen::VectorXd fixed_point() const {
    const int d = m() + n();
    Eigen::VectorXd rhs(d);
    rhs << c, e;
    return (Eigen::MatrixXd::Identity(d, d) - coupled()).partialPivLu().solve(rhs);
  }

  /// A seed (x*-a p, y*+a q) with x0 <= F(x0,y0) and G(y0,x0) <= y0, where
  /// (I - [[A,B],[D,C]]) [p;q] = 1.
  Eigen::VectorXd seed(double a) const {
    const int d = m() + n();
    Eigen::MatrixXd P(d, d);
    P << A, B, D, C;
    const Eigen::VectorXd pq =
        (Eigen::MatrixXd::Identity(d, d) - P).partialPivLu().solve(Eigen::VectorXd::Ones(d));
    Eigen::VectorXd s = fixed_point();
    s.head(m()) -= a * pq.head(m());
    s.tail(n()) += a * pq.tail(n());
    return s;
  }

  static std::string row_text(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q, double shift,
                              int i, const char* pv, const char* qv) {
    std::string s = num(shift);
    for (int j = 0; j < P.cols(); ++j) s += " + " + num(P(i, j)) + "*" + pv + std::to_string(j + 1);
    for (int j = 0; j < Q.cols(); ++j) s += " - " + num(Q(i, j)) + "*" + qv + std::to_string(j + 1);
    return s;
  }

  std::string f_text() const {
    std::string s;
    for (int i = 0; i < m(); ++i) s += (i ? "; " : "") + row_text(A, B, c(i), i, "a", "b");
    return s;
  }
  std::string g_text() const {
    std::string s;
    for (int i = 0; i < n(); ++i) s += (i ? "; " : "") + row_text(C, D, e(i), i, "a", "b");
    return s;
  }
};

inline double norm1(const Eigen::MatrixXd& M) { return M.cwiseAbs().colwise().sum().maxCoeff(); }

/// Random contractive pair with k + l = total.
inline AffinePair random_affine(std::mt19937_64& rng, double total) {
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-2.0, 2.0);
  AffinePair p;
  const int m = dim(rng);
  const int n = dim(rng);
  auto fill = [&](int r, int c) {
    Eigen::MatrixXd M(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) M(i, j) = unit(rng);
    return M;
  };
  p.A = fill(m, m);
  p.B = fill(m, n);
  p.C = fill(n, n);
  p.D = fill(n, m);
  const double split = 0.2 + 0.6 * unit(rng);
  const double kk = total * split;
  const double ll = total - kk;
  const double sa = kk / std::max(norm1(p.A), norm1(p.C));
  const double sb = ll / std::max(norm1(p.B), norm1(p.D));
  p.A *= sa;
  p.C *= sa;
  p.B *= sb;
  p.D *= sb;
  p.k = std::max(norm1(p.A), norm1(p.C));
  p.l = std::max(norm1(p.B), norm1(p.D));
  p.c = Eigen::VectorXd(m);
  p.e = Eigen::VectorXd(n);
  for (int i = 0; i < m; ++i) p.c(i) = shift(rng);
  for (int i = 0; i < n; ++i) p.e(i) = shift(rng);
  return p;
}

/// Problem-file JSON for an affine pair on cubes wide enough to hold the
/// seed and the fixed point.
inline std::string problem_json(const AffinePair& p, double slack = 0.0) {
  const Eigen::VectorXd s = p.seed(1.0);
  const double R = std::ceil(std::max(s.cwiseAbs().maxCoeff(), p.fixed_point().cwiseAbs().maxCoeff())) + 1.0;
  auto vec = [](const Eigen::VectorXd& v, int from, int len) {
    std::string out = "[";
    for (int i = 0; i < len; ++i) out += (i ? ", " : "") + num(v(from + i));
    return out + "]";
  };
  auto box = [&](int d) {
    std::string lo = "[", hi = "[";
    for (int i = 0; i < d; ++i) {
      lo += (i ? ", " : "") + num(-R);
      hi += (i ? ", " : "") + num(R);
    }
    return "\"dim\": " + std::to_string(d) + ", \"lower\": " + lo + "], \"upper\": " + hi + "]";
  };
  return "{\"spaces\": {\"X\": {" + box(p.m()) + "}, \"Y\": {" + box(p.n()) + "}},\n" +
         " \"maps\": {\"F\": \"" + p.f_text() + "\", \"G\": \"" + p.g_text() + "\"},\n" +
         " \"family\": {\"kind\": \"LIN_ASYM\", \"k\": " + num(p.k + slack) + ", \"l\": " +
         num(p.l + slack) + "},\n" + " \"seed\": {\"x0\": " + vec(s, 0, p.m()) + ", \"y0\": " +
         vec(s, p.m(), p.n()) + "}}";
}

/// Plain-double coupled iteration for 1-D maps given as callables.
template <typename Fx, typename Gy>
std::vector<std::pair<double, double>> iterate_1d(Fx F, Gy G, double x, double y, int n) {
  std::vector<std::pair<double, double>> out{{x, y}};
  for (int i = 0; i < n; ++i) {
    const double nx = F(x, y);
    const double ny = G(y, x);
    x = nx;
    y = ny;
    out.emplace_back(x, y);
  }
  return out;
}

}  // namespace oracle
