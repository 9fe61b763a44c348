#include "bml/extremal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "bml/errors.hpp"

namespace bml {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void enumerate_exps(int nvars, int degree, std::vector<int>& cur, int var, int used,
                    std::vector<std::vector<int>>& out) {
  if (var == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e + used <= degree; ++e) {
    cur[var] = e;
    enumerate_exps(nvars, degree, cur, var + 1, used + e, out);
  }
  cur[var] = 0;
}

// 1/||z^alpha|| on the unit ball B_k: ||z^alpha||^2 = pi^k alpha!/(k+|alpha|)!.
double ball_scale(const std::vector<int>& alpha, int k) {
  int total = 0;
  double afact = 1;
  for (int a : alpha) {
    total += a;
    afact *= factorial(a);
  }
  return std::sqrt(factorial(k + total) / (std::pow(kPi, k) * afact));
}

// Orthonormal projector complement: c -> c - U (U^H c) for the span of the
// constraint rows; RankError when rows go dependent.
struct ConstraintProjector {
  CMatrix u;  // size x m orthonormal columns
  explicit ConstraintProjector(const CMatrix& rows) {
    const int m = static_cast<int>(rows.rows());
    const int n = static_cast<int>(rows.cols());
    u = CMatrix(n, m);
    int built = 0;
    for (int i = 0; i < m; ++i) {
      CVector v = rows.row(i).conjugate();  // representer of the functional
      double base = v.norm();
      for (int rep = 0; rep < 2; ++rep)
        for (int j = 0; j < built; ++j) v -= u.col(j).dot(v) * u.col(j);
      if (v.norm() < 1e-10 * std::max(1.0, base))
        throw RankError("extremal: constraint rows dependent at this basis degree");
      u.col(built++) = v / v.norm();
    }
  }
  CVector project(const CVector& c) const { return c - u * (u.adjoint() * c); }
  CMatrix project(const CMatrix& a) const {
    CMatrix pa = a - u * (u.adjoint() * a);
    return pa - (pa * u) * u.adjoint();
  }
};

// Constraint rows for S_z with f'(z) = 0: the value row plus grad_count
// gradient rows (grad_count = nu for full first-jet vanishing).
CMatrix constraint_rows(const OrthonormalBasis& basis, const CVector& z, int grad_count) {
  CMatrix rows(1 + grad_count, basis.size());
  rows.row(0) = basis.values(z).transpose();
  CMatrix grads = basis.gradients(z);
  for (int j = 0; j < grad_count; ++j) rows.row(1 + j) = grads.col(j).transpose();
  return rows;
}

struct QuadForm {
  CMatrix a;  // Hermitian PSD in coefficient space
};

// A = sum_{l,m} W_{lm} conj(H_m) H_l^T for value = sum W_{lm} v_l conj(v_m),
// v_l = H_l^T c.
QuadForm vector_form(const CMatrix& h_cols /* size x nu */, const CMatrix& w) {
  const int nu = static_cast<int>(w.rows());
  QuadForm q;
  q.a = CMatrix::Zero(h_cols.rows(), h_cols.rows());
  for (int l = 0; l < nu; ++l)
    for (int m = 0; m < nu; ++m)
      q.a += w(l, m) * (h_cols.col(m).conjugate() * h_cols.col(l).transpose());
  return q;
}

ExtremalEstimate top_of_form(const OrthonormalBasis& basis, const CVector& z,
                             const QuadForm& form, ExtremalQuantity tag) {
  ConstraintProjector proj(constraint_rows(basis, z, basis.nu()));
  CMatrix pap = proj.project(form.a);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(pap);
  if (es.info() != Eigen::Success) throw ConvergenceError("extremal: eigensolver failed");
  int top;
  es.eigenvalues().maxCoeff(&top);
  ExtremalEstimate out;
  out.quantity = tag;
  out.value = std::max(0.0, es.eigenvalues()[top]);
  out.basis_degree = basis.degree();
  out.constraint_rank = basis.nu() + 1;
  out.maximizer = es.eigenvectors().col(top);
  return out;
}

// xi f''(z) columns in coefficient space: H(:,l) = sum_p xi_p Hess(:, p*nu+l).
CMatrix xi_hessian_cols(const OrthonormalBasis& basis, const CVector& z, const CVector& xi) {
  const int nu = basis.nu();
  CMatrix hess = basis.hessians(z);
  CMatrix h = CMatrix::Zero(basis.size(), nu);
  for (int l = 0; l < nu; ++l)
    for (int p = 0; p < nu; ++p) h.col(l) += xi[p] * hess.col(p * nu + l);
  return h;
}

}  // namespace

OrthonormalBasis OrthonormalBasis::closed_form(const ModelDomain& domain, int degree) {
  if (degree < 1) throw ValidationError("basis: degree must be >= 1");
  OrthonormalBasis b;
  b.nu_ = domain.ambient_dim();
  b.degree_ = degree;
  std::vector<int> cur(b.nu_, 0);
  enumerate_exps(b.nu_, degree, cur, 0, 0, b.exps_);
  b.scale_.reserve(b.exps_.size());
  for (const auto& e : b.exps_) {
    switch (domain.kind()) {
      case DomainKind::UnitDisc:
        b.scale_.push_back(std::sqrt((e[0] + 1.0) / kPi));
        break;
      case DomainKind::UnitBall:
        b.scale_.push_back(ball_scale(e, b.nu_));
        break;
      case DomainKind::ProductDiscBall: {
        std::vector<int> alpha(e.begin() + 1, e.end());
        b.scale_.push_back(std::sqrt((e[0] + 1.0) / kPi) *
                           ball_scale(alpha, domain.fiber_dim()));
        break;
      }
      case DomainKind::HartogsFlat:
        throw KindError("basis: closed-form bases exist for disc/ball/product only");
    }
  }
  return b;
}

CVector OrthonormalBasis::values(const CVector& z) const {
  CVector out(size());
  for (int i = 0; i < size(); ++i) {
    Complex v = scale_[i];
    for (int j = 0; j < nu_; ++j)
      for (int e = 0; e < exps_[i][j]; ++e) v *= z[j];
    out[i] = v;
  }
  return out;
}

CMatrix OrthonormalBasis::gradients(const CVector& z) const {
  CMatrix out = CMatrix::Zero(size(), nu_);
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < nu_; ++j) {
      int aj = exps_[i][j];
      if (aj == 0) continue;
      Complex v = scale_[i] * static_cast<double>(aj);
      for (int l = 0; l < nu_; ++l) {
        int e = exps_[i][l] - (l == j ? 1 : 0);
        for (int p = 0; p < e; ++p) v *= z[l];
      }
      out(i, j) = v;
    }
  return out;
}

CMatrix OrthonormalBasis::hessians(const CVector& z) const {
  CMatrix out = CMatrix::Zero(size(), nu_ * nu_);
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < nu_; ++j)
      for (int l = j; l < nu_; ++l) {
        int aj = exps_[i][j];
        int al = exps_[i][l];
        double mult = (j == l) ? aj * (aj - 1.0) : static_cast<double>(aj) * al;
        if (mult == 0.0) continue;
        Complex v = scale_[i] * mult;
        for (int p = 0; p < nu_; ++p) {
          int e = exps_[i][p] - (p == j ? 1 : 0) - (p == l ? 1 : 0);
          for (int q = 0; q < e; ++q) v *= z[p];
        }
        out(i, j * nu_ + l) = v;
        out(i, l * nu_ + j) = v;
      }
  return out;
}

ExtremalEstimate estimate_lambda_k(const OrthonormalBasis& basis, const CVector& z, int k) {
  if (k < 1 || k > basis.nu()) throw DomainError("lambda_k: k out of range");
  ConstraintProjector proj(constraint_rows(basis, z, k - 1));
  CVector w = basis.gradients(z).col(k - 1);
  CVector rep = proj.project(w.conjugate());
  ExtremalEstimate out;
  out.quantity = ExtremalQuantity::LambdaK;
  out.value = rep.squaredNorm();
  out.basis_degree = basis.degree();
  out.constraint_rank = k;
  out.maximizer = rep.norm() > 0 ? CVector(rep / rep.norm()) : rep;
  return out;
}

ExtremalEstimate estimate_lambda(const OrthonormalBasis& basis, const CVector& z) {
  ExtremalEstimate out;
  out.quantity = ExtremalQuantity::Lambda;
  out.value = 1.0;
  for (int k = 1; k <= basis.nu(); ++k) out.value *= estimate_lambda_k(basis, z, k).value;
  out.basis_degree = basis.degree();
  out.constraint_rank = basis.nu();
  return out;
}

ExtremalEstimate estimate_I(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z, const CVector& xi) {
  CMatrix w = rep.Ginv.conjugate();  // conj(G)^{-1}
  return top_of_form(basis, z, vector_form(xi_hessian_cols(basis, z, xi), w),
                     ExtremalQuantity::I);
}

ExtremalEstimate estimate_M(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z, const CVector& xi) {
  // conj(ad G) = det G * conj(G^{-1}); adjugate via det * inverse.
  CMatrix w = rep.detG * rep.Ginv.conjugate();
  QuadForm form = vector_form(xi_hessian_cols(basis, z, xi), w);
  form.a *= std::pow(rep.kappa, basis.nu() - 1);
  ExtremalEstimate out = top_of_form(basis, z, form, ExtremalQuantity::M);
  return out;
}

namespace {

// value = tr(f'' W conj(f'') V) as a quadratic form over coefficients.
QuadForm trace_form(const OrthonormalBasis& basis, const CVector& z, const CMatrix& w,
                    const CMatrix& v) {
  const int nu = basis.nu();
  CMatrix hess = basis.hessians(z);
  QuadForm q;
  q.a = CMatrix::Zero(basis.size(), basis.size());
  for (int i = 0; i < nu; ++i)
    for (int p = 0; p < nu; ++p)
      for (int qq = 0; qq < nu; ++qq)
        for (int j = 0; j < nu; ++j) {
          Complex coeff = w(p, qq) * v(j, i);
          if (coeff == Complex(0, 0)) continue;
          q.a += coeff * (hess.col(qq * nu + j).conjugate() * hess.col(i * nu + p).transpose());
        }
  return q;
}

}  // namespace

ExtremalEstimate estimate_L(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z) {
  return top_of_form(basis, z, trace_form(basis, z, rep.Ginv.conjugate(), rep.Ginv),
                     ExtremalQuantity::L);
}

ExtremalEstimate estimate_N(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z) {
  CMatrix adbar = rep.detG * rep.Ginv.conjugate();
  CMatrix ad = rep.detG * rep.Ginv;
  QuadForm form = trace_form(basis, z, adbar, ad);
  form.a *= std::pow(rep.kappa, 2 * basis.nu() - 2);
  return top_of_form(basis, z, form, ExtremalQuantity::N);
}

}  // namespace bml
