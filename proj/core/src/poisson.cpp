#include "lps/poisson.hpp"

#include <string>

#include "lps/error.hpp"

namespace lps {

// -- observables --------------------------------------------------------------

Observable linear_observable(Matrix a) {
  require_square(a, "linear_observable");
  Observable f;
  f.dim = static_cast<int>(a.rows());
  f.eval = [a](const Matrix& rho) { return trace_pairing(a, rho); };
  f.grad = [a](const Matrix&) { return a; };
  f.linear_gradient = std::move(a);
  return f;
}

Observable constant_observable(int dim, Complex value) {
  Observable f;
  f.dim = dim;
  f.eval = [value](const Matrix&) { return value; };
  f.grad = [dim](const Matrix&) { return Matrix::Zero(dim, dim).eval(); };
  f.linear_gradient = Matrix::Zero(dim, dim);
  return f;
}

Observable quadratic_observable(Matrix a, Matrix b) {
  require_same_dim(a, b, "quadratic_observable");
  Observable f;
  f.dim = static_cast<int>(a.rows());
  f.eval = [a, b](const Matrix& rho) {
    Matrix m = a * rho * b * rho;
    return m.trace();
  };
  f.grad = [a, b](const Matrix& rho) {
    Matrix g = b * rho * a + a * rho * b;
    return g;
  };
  return f;
}

Observable casimir(int k, int dim) {
  if (k < 1) throw ContractError("casimir: k must be >= 1");
  if (dim < 1) throw DimensionError("casimir: dim must be >= 1");
  Observable f;
  f.dim = dim;
  f.eval = [k](const Matrix& rho) {
    Matrix p = rho;
    for (int i = 1; i < k; ++i) p = p * rho;
    return p.trace() / static_cast<double>(k);
  };
  f.grad = [k](const Matrix& rho) {
    Matrix p = Matrix::Identity(rho.rows(), rho.cols());
    for (int i = 1; i < k; ++i) p = p * rho;
    return p;
  };
  if (k == 1) f.linear_gradient = Matrix::Identity(dim, dim);
  return f;
}

Observable product(const Observable& f, const Observable& g) {
  if (f.dim != g.dim) throw DimensionError("product: observables act on different dims");
  Observable fg;
  fg.dim = f.dim;
  fg.eval = [f, g](const Matrix& rho) { return f(rho) * g(rho); };
  fg.grad = [f, g](const Matrix& rho) {
    Matrix out = f(rho) * g.gradient(rho) + g(rho) * f.gradient(rho);
    return out;
  };
  return fg;
}

Matrix finite_difference_gradient(const std::function<Complex(const Matrix&)>& fn,
                                  const Matrix& rho, double step, Pairing pairing) {
  require_square(rho, "finite_difference_gradient");
  if (!(step > 0.0)) throw ContractError("finite_difference_gradient: step must be positive");
  const auto n = rho.rows();
  const Complex i_unit(0.0, 1.0);
  Matrix g(n, n);
  Matrix probe = rho;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex base = rho(r, c);
      probe(r, c) = base + step;
      const Complex fxp = fn(probe);
      probe(r, c) = base - step;
      const Complex fxm = fn(probe);
      probe(r, c) = base + i_unit * step;
      const Complex fyp = fn(probe);
      probe(r, c) = base - i_unit * step;
      const Complex fym = fn(probe);
      probe(r, c) = base;
      const Complex dx = (fxp - fxm) / (2.0 * step);
      const Complex dy = (fyp - fym) / (2.0 * step);
      // tr(G d) = sum G_cr d_rc, so the derivative along E_rc lands at (c, r).
      if (pairing == Pairing::Complex) {
        g(c, r) = 0.5 * (dx - i_unit * dy);
      } else {
        g(c, r) = Complex(dx.real(), -dy.real());
      }
    }
  }
  return g;
}

Observable with_finite_difference(Observable f, double step, Pairing pairing) {
  auto eval = f.eval;
  f.grad = [eval, step, pairing](const Matrix& rho) {
    return finite_difference_gradient(eval, rho, step, pairing);
  };
  f.grad_mode = GradMode::FiniteDifference;
  f.fd_step = step;
  return f;
}

// -- bracket specs -------------------------------------------------------------

BracketSpec BracketSpec::product(BracketSpec left, BracketSpec right, int left_dim) {
  if (left_dim < 1) throw ContractError("BracketSpec::product: left_dim must be >= 1");
  BracketSpec s(Kind::Product);
  s.left_ = std::make_shared<const BracketSpec>(std::move(left));
  s.right_ = std::make_shared<const BracketSpec>(std::move(right));
  s.left_dim_ = left_dim;
  return s;
}

const BracketSpec& BracketSpec::left() const {
  if (kind_ != Kind::Product) throw ContractError("BracketSpec::left: not a product");
  return *left_;
}

const BracketSpec& BracketSpec::right() const {
  if (kind_ != Kind::Product) throw ContractError("BracketSpec::right: not a product");
  return *right_;
}

namespace {

struct Blocks {
  Eigen::Index n1, n2;
};

Blocks split_of(const BracketSpec& spec, const Matrix& m, std::string_view op) {
  const Eigen::Index n1 = spec.left_dim();
  if (m.rows() <= n1) {
    throw DimensionError(std::string(op) + ": product state smaller than left block");
  }
  return {n1, m.rows() - n1};
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

bool is_admissible_state(const BracketSpec& spec, const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() < 1 || !rho.allFinite()) return false;
  switch (spec.kind()) {
    case BracketSpec::Kind::Full:
      return true;
    case BracketSpec::Kind::LowerCoinduced:
      return validate(ClassTag::LowerTriangular, rho, tol);
    case BracketSpec::Kind::HermitianReal:
      return validate(ClassTag::SkewHermitian, rho, tol);
    case BracketSpec::Kind::Product: {
      const Eigen::Index n1 = spec.left_dim();
      if (rho.rows() <= n1) return false;
      const Eigen::Index n2 = rho.rows() - n1;
      if (rho.topRightCorner(n1, n2).cwiseAbs().maxCoeff() > tol) return false;
      if (rho.bottomLeftCorner(n2, n1).cwiseAbs().maxCoeff() > tol) return false;
      return is_admissible_state(spec.left(), rho.topLeftCorner(n1, n1), tol) &&
             is_admissible_state(spec.right(), rho.bottomRightCorner(n2, n2), tol);
    }
  }
  return false;
}

void require_state(const BracketSpec& spec, const Matrix& rho, double tol) {
  if (!is_admissible_state(spec, rho, tol)) {
    throw ContractError("state does not carry the class tag required by the bracket");
  }
}

Matrix admissible_gradient(const BracketSpec& spec, const Matrix& x) {
  switch (spec.kind()) {
    case BracketSpec::Kind::Full:
      return x;
    case BracketSpec::Kind::LowerCoinduced:
      return project_upper_plus(x);
    case BracketSpec::Kind::HermitianReal:
      return skew_hermitian_part(x);
    case BracketSpec::Kind::Product: {
      const auto [n1, n2] = split_of(spec, x, "admissible_gradient");
      return block_diag(admissible_gradient(spec.left(), x.topLeftCorner(n1, n1)),
                        admissible_gradient(spec.right(), x.bottomRightCorner(n2, n2)));
    }
  }
  return x;
}

Matrix gradient_bracket(const BracketSpec& spec, const Matrix& x, const Matrix& y) {
  require_same_dim(x, y, "gradient_bracket");
  if (spec.kind() == BracketSpec::Kind::Product) {
    const auto [n1, n2] = split_of(spec, x, "gradient_bracket");
    return block_diag(
        gradient_bracket(spec.left(), x.topLeftCorner(n1, n1), y.topLeftCorner(n1, n1)),
        gradient_bracket(spec.right(), x.bottomRightCorner(n2, n2),
                         y.bottomRightCorner(n2, n2)));
  }
  return commutator(admissible_gradient(spec, x), admissible_gradient(spec, y));
}

Complex pair(const BracketSpec& spec, const Matrix& x, const Matrix& rho) {
  switch (spec.kind()) {
    case BracketSpec::Kind::Full:
    case BracketSpec::Kind::LowerCoinduced:
      return trace_pairing(x, rho);
    case BracketSpec::Kind::HermitianReal:
      return trace_pairing(x, rho).real();
    case BracketSpec::Kind::Product: {
      require_same_dim(x, rho, "pair");
      const auto [n1, n2] = split_of(spec, x, "pair");
      return pair(spec.left(), x.topLeftCorner(n1, n1), rho.topLeftCorner(n1, n1)) +
             pair(spec.right(), x.bottomRightCorner(n2, n2), rho.bottomRightCorner(n2, n2));
    }
  }
  return 0.0;
}

Pairing pairing_at(const BracketSpec& spec, int row, int col) {
  switch (spec.kind()) {
    case BracketSpec::Kind::HermitianReal:
      return Pairing::Real;
    case BracketSpec::Kind::Product: {
      const int n1 = spec.left_dim();
      if (row < n1 && col < n1) return pairing_at(spec.left(), row, col);
      if (row >= n1 && col >= n1) return pairing_at(spec.right(), row - n1, col - n1);
      return Pairing::Complex;
    }
    default:
      return Pairing::Complex;
  }
}

Matrix finite_difference_gradient(const BracketSpec& spec,
                                  const std::function<Complex(const Matrix&)>& fn,
                                  const Matrix& rho, double step) {
  if (spec.kind() == BracketSpec::Kind::HermitianReal) {
    return finite_difference_gradient(fn, rho, step, Pairing::Real);
  }
  if (spec.kind() != BracketSpec::Kind::Product) {
    return finite_difference_gradient(fn, rho, step, Pairing::Complex);
  }
  Matrix gc = finite_difference_gradient(fn, rho, step, Pairing::Complex);
  Matrix gr = finite_difference_gradient(fn, rho, step, Pairing::Real);
  // Entry (c, r) of the gradient holds the derivative along E_rc.
  for (Eigen::Index c = 0; c < gc.rows(); ++c)
    for (Eigen::Index r = 0; r < gc.cols(); ++r)
      if (pairing_at(spec, static_cast<int>(r), static_cast<int>(c)) == Pairing::Real)
        gc(c, r) = gr(c, r);
  return gc;
}

// -- brackets and fields -------------------------------------------------------

Complex lp_bracket(const BracketSpec& spec, const Observable& f, const Observable& g,
                   const Matrix& rho) {
  require_square(rho, "lp_bracket");
  if (f.dim != rho.rows() || g.dim != rho.rows()) {
    throw DimensionError("lp_bracket: observable and state dims differ");
  }
  require_state(spec, rho);
  return pair(spec, gradient_bracket(spec, f.gradient(rho), g.gradient(rho)), rho);
}

Matrix ham_field(const BracketSpec& spec, const Observable& h, const Matrix& rho) {
  require_square(rho, "ham_field");
  if (h.dim != rho.rows()) throw DimensionError("ham_field: observable and state dims differ");
  require_state(spec, rho);
  const Matrix dh = h.gradient(rho);
  switch (spec.kind()) {
    case BracketSpec::Kind::Full:
      return commutator(dh, rho);
    case BracketSpec::Kind::LowerCoinduced:
      return project_lower(commutator(rho, project_upper_plus(dh)));
    case BracketSpec::Kind::HermitianReal:
      return commutator(skew_hermitian_part(dh), rho);
    case BracketSpec::Kind::Product: {
      const auto [n1, n2] = split_of(spec, rho, "ham_field");
      Observable h1 = h;
      Observable h2 = h;
      // Partial fields only need the matching block of the full gradient.
      h1.dim = static_cast<int>(n1);
      h1.grad = [dh, n1 = n1](const Matrix&) { return Matrix(dh.topLeftCorner(n1, n1)); };
      h2.dim = static_cast<int>(n2);
      h2.grad = [dh, n2 = n2](const Matrix&) { return Matrix(dh.bottomRightCorner(n2, n2)); };
      return block_diag(ham_field(spec.left(), h1, rho.topLeftCorner(n1, n1)),
                        ham_field(spec.right(), h2, rho.bottomRightCorner(n2, n2)));
    }
  }
  return Matrix();
}

int ham_field_sign(const BracketSpec& spec) {
  switch (spec.kind()) {
    case BracketSpec::Kind::Full:
    case BracketSpec::Kind::HermitianReal:
      return 1;
    case BracketSpec::Kind::LowerCoinduced:
      return -1;
    case BracketSpec::Kind::Product: {
      const int l = ham_field_sign(spec.left());
      if (l != ham_field_sign(spec.right())) {
        throw ContractError("ham_field_sign: product factors use opposite conventions");
      }
      return l;
    }
  }
  return 1;
}

Observable bracket_observable(const BracketSpec& spec, const Observable& f,
                              const Observable& g, double fd_step) {
  if (f.dim != g.dim) throw DimensionError("bracket_observable: dims differ");
  Observable fg;
  fg.dim = f.dim;
  fg.eval = [spec, f, g](const Matrix& rho) {
    return pair(spec, gradient_bracket(spec, f.gradient(rho), g.gradient(rho)), rho);
  };
  if (f.is_linear() && g.is_linear()) {
    Matrix c = gradient_bracket(spec, *f.linear_gradient, *g.linear_gradient);
    fg.grad = [c](const Matrix&) { return c; };
    fg.linear_gradient = std::move(c);
  } else {
    auto eval = fg.eval;
    fg.grad = [spec, eval, fd_step](const Matrix& rho) {
      return finite_difference_gradient(spec, eval, rho, fd_step);
    };
    fg.grad_mode = GradMode::FiniteDifference;
    fg.fd_step = fd_step;
  }
  return fg;
}

double jacobi_defect(const BracketSpec& spec, const Observable& f, const Observable& g,
                     const Observable& h, const Matrix& rho, double fd_step) {
  const Observable fg = bracket_observable(spec, f, g, fd_step);
  const Observable gh = bracket_observable(spec, g, h, fd_step);
  const Observable hf = bracket_observable(spec, h, f, fd_step);
  return std::abs(lp_bracket(spec, fg, h, rho) + lp_bracket(spec, gh, f, rho) +
                  lp_bracket(spec, hf, g, rho));
}

double leibniz_defect(const BracketSpec& spec, const Observable& f, const Observable& g,
                      const Observable& h, const Matrix& rho) {
  const Observable fg = product(f, g);
  return std::abs(lp_bracket(spec, fg, h, rho) - f(rho) * lp_bracket(spec, g, h, rho) -
                  g(rho) * lp_bracket(spec, f, h, rho));
}

// -- maps ------------------------------------------------------------------------

MatrixMap identity_map(int n) {
  return {n, n, [](const Matrix& m) { return m; }, [](const Matrix& x) { return x; }};
}

MatrixMap lower_projection_map(int n) {
  // tr(X pi1_-(d)) = tr(piinf_+(X) d) for every X, d.
  return {n, n, [](const Matrix& m) { return project_lower(m); },
          [](const Matrix& x) { return project_upper_plus(x); }};
}

MatrixMap lower_inclusion_map(int n) {
  // Covectors on L1_- are represented in Linf_+.
  return {n, n, [](const Matrix& m) { return m; },
          [](const Matrix& x) { return project_upper_plus(x); }};
}

MatrixMap product_inclusion_left(int left_dim, int right_dim) {
  return {left_dim, left_dim + right_dim,
          [left_dim, right_dim](const Matrix& m) {
            Matrix out = Matrix::Zero(left_dim + right_dim, left_dim + right_dim);
            out.topLeftCorner(left_dim, left_dim) = m;
            return out;
          },
          [left_dim](const Matrix& x) { return Matrix(x.topLeftCorner(left_dim, left_dim)); }};
}

MatrixMap product_inclusion_right(int left_dim, int right_dim) {
  return {right_dim, left_dim + right_dim,
          [left_dim, right_dim](const Matrix& m) {
            Matrix out = Matrix::Zero(left_dim + right_dim, left_dim + right_dim);
            out.bottomRightCorner(right_dim, right_dim) = m;
            return out;
          },
          [right_dim](const Matrix& x) {
            return Matrix(x.bottomRightCorner(right_dim, right_dim));
          }};
}

Observable pullback(const Observable& f, const MatrixMap& phi) {
  if (f.dim != phi.dst_dim) throw DimensionError("pullback: observable lives on another space");
  Observable out;
  out.dim = phi.src_dim;
  out.eval = [f, phi](const Matrix& rho) { return f(phi.apply(rho)); };
  out.grad = [f, phi](const Matrix& rho) { return phi.pullback(f.gradient(phi.apply(rho))); };
  out.grad_mode = f.grad_mode;
  out.fd_step = f.fd_step;
  if (f.is_linear()) out.linear_gradient = phi.pullback(*f.linear_gradient);
  return out;
}

double poisson_map_defect(const MatrixMap& phi, const BracketSpec& src, const BracketSpec& dst,
                          const Observable& f, const Observable& g, const Matrix& rho) {
  if (rho.rows() != phi.src_dim) throw DimensionError("poisson_map_defect: state not in source");
  const Matrix image = phi.apply(rho);
  if (image.rows() != phi.dst_dim) throw DimensionError("poisson_map_defect: map output dim");
  const Complex upstairs = lp_bracket(src, pullback(f, phi), pullback(g, phi), rho);
  const Complex downstairs = lp_bracket(dst, f, g, image);
  return std::abs(upstairs - downstairs);
}

double reduction_condition_defect(const MatrixMap& projector, const BracketSpec& target,
                                  const Observable& f, const Observable& g,
                                  const Matrix& rho) {
  if (target.kind() != BracketSpec::Kind::Full &&
      target.kind() != BracketSpec::Kind::HermitianReal) {
    throw ContractError("reduction_condition_defect: target must be Full or HermitianReal");
  }
  const int n = projector.src_dim;
  if (projector.dst_dim != n || rho.rows() != n) {
    throw DimensionError("reduction_condition_defect: projector must be an endomorphism");
  }
  // R is in general only real-linear (skew part), so test E and iE.
  double scale = 1.0;
  double worst = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        const Matrix e = unit * elementary(n, r, c);
        const Matrix once = projector.apply(e);
        worst = std::max(worst, (projector.apply(once) - once).cwiseAbs().maxCoeff());
        scale = std::max(scale, once.cwiseAbs().maxCoeff());
      }
    }
  }
  if (worst > kExactTol * scale) {
    throw ContractError("reduction_condition_defect: R is not idempotent");
  }

  const Matrix reduced = projector.apply(rho);
  const Matrix df = projector.pullback(f.gradient(reduced));
  const Matrix dg = projector.pullback(g.gradient(reduced));

  Complex upstairs = trace_pairing(commutator(df, dg), rho);
  if (target.kind() == BracketSpec::Kind::HermitianReal) upstairs = upstairs.real();

  require_state(target, reduced);
  const Complex downstairs = pair(target, gradient_bracket(target, df, dg), reduced);
  return std::abs(upstairs - downstairs);
}

}  // namespace lps
