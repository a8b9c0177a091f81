#ifndef LEONARD_REALIZE_HPP
#define LEONARD_REALIZE_HPP

// Matrix realization of a parameter array in split form, and the trace
// formulas that recover the split sequences from it.
//
// A is lower bidiagonal (theta_i on the diagonal, 1 below it), A* upper
// bidiagonal (theta*_i on the diagonal, varphi_i above it). Nothing about
// this form is assumed: certify() checks idempotent laws, the tridiagonal
// shape of E_i A* E_j and E*_i A E*_j, and the recovered split sequences.

#include <string>
#include <utility>
#include <vector>

#include "leonard/error.hpp"
#include "leonard/parray.hpp"

namespace leonard {

/// Dense square matrix over one field, rows and columns indexed 0..n-1.
class Matrix {
 public:
  Matrix(Field f, int n)
      : f_(f), n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), f.zero()) {}

  static Matrix identity(Field f, int n) {
    Matrix m(f, n);
    for (int i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  int size() const { return n_; }
  const Field& field() const { return f_; }

  Scalar& operator()(int i, int j) { return a_[idx(i, j)]; }
  const Scalar& operator()(int i, int j) const { return a_[idx(i, j)]; }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    same(x, y);
    Matrix r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += y.a_[k];
    return r;
  }

  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    same(x, y);
    Matrix r = x;
    for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= y.a_[k];
    return r;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    same(x, y);
    Matrix r(x.f_, x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int k = 0; k < x.n_; ++k) {
        const Scalar& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < x.n_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend Matrix operator*(const Scalar& c, const Matrix& x) {
    Matrix r = x;
    for (Scalar& e : r.a_) e = c * e;
    return r;
  }

  /// x - c I
  Matrix shifted(const Scalar& c) const {
    Matrix r = *this;
    for (int i = 0; i < n_; ++i) r(i, i) -= c;
    return r;
  }

  Scalar trace() const {
    Scalar t = f_.zero();
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const Scalar& e : a_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// Rows on separate lines, entries separated by single spaces.
  std::string to_string() const {
    std::string out;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) out += (j ? " " : "") + (*this)(i, j).to_string();
      out += "\n";
    }
    return out;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.f_ == y.f_ && x.n_ == y.n_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  static void same(const Matrix& x, const Matrix& y) {
    if (x.f_ != y.f_) throw FieldMismatch("matrix fields differ");
    if (x.n_ != y.n_) throw StructuralError("matrix sizes differ");
  }

  Field f_;
  int n_;
  std::vector<Scalar> a_;
};

/// E_i = prod_{j != i} (M - eigs_j I) / (eigs_i - eigs_j). Throws
/// NotMultiplicityFree unless M E_i = eigs_i E_i for every i.
inline std::vector<Matrix> primitive_idempotents(const Matrix& m, const std::vector<Scalar>& eigs) {
  const int n = static_cast<int>(eigs.size());
  if (n != m.size()) throw StructuralError("need one eigenvalue per row");
  std::vector<Matrix> shifted;
  for (const Scalar& t : eigs) shifted.push_back(m.shifted(t));
  std::vector<Matrix> out;
  for (int i = 0; i < n; ++i) {
    Matrix e = Matrix::identity(m.field(), n);
    Scalar den = m.field().one();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Scalar diff = eigs[static_cast<std::size_t>(i)] - eigs[static_cast<std::size_t>(j)];
      if (diff.is_zero()) throw StructuralError("eigenvalues are not distinct");
      e = e * shifted[static_cast<std::size_t>(j)];
      den *= diff;
    }
    e = den.inverse() * e;
    if (!(m * e - eigs[static_cast<std::size_t>(i)] * e).is_zero())
      throw NotMultiplicityFree("M E_" + std::to_string(i) + " != theta_" + std::to_string(i) + " E_" +
                                std::to_string(i));
    out.push_back(std::move(e));
  }
  return out;
}

struct Realization {
  Matrix A;
  Matrix Astar;
  std::vector<Matrix> E;
  std::vector<Matrix> Estar;
  ParameterArray source;
};

inline Realization split_realize(const ParameterArray& pa) {
  const int d = pa.d();
  const Field& f = pa.field();
  Matrix a(f, d + 1);
  Matrix as(f, d + 1);
  for (int i = 0; i <= d; ++i) {
    a(i, i) = pa.theta(i);
    as(i, i) = pa.theta_star(i);
    if (i > 0) {
      a(i, i - 1) = f.one();
      as(i - 1, i) = pa.varphi(i);
    }
  }
  auto e = primitive_idempotents(a, pa.thetas());
  auto es = primitive_idempotents(as, pa.theta_stars());
  return {std::move(a), std::move(as), std::move(e), std::move(es), pa};
}

/// (varphi, phi) from the trace formulas applied to the realization.
inline std::pair<std::vector<Scalar>, std::vector<Scalar>> recover_split_sequences(const Realization& r) {
  const ParameterArray& pa = r.source;
  const int d = pa.d();
  const Matrix& e0 = r.Estar[0];
  auto run = [&](bool reversed) {
    std::vector<Scalar> out;
    Matrix prod = e0;
    Scalar prev = prod.trace();
    for (int i = 1; i <= d; ++i) {
      prod = prod * r.A.shifted(pa.theta(reversed ? d - (i - 1) : i - 1));
      Scalar cur = prod.trace();
      if (prev.is_zero()) throw ZeroDenominator("trace denominator vanishes at i=" + std::to_string(i));
      out.push_back((pa.theta_star(0) - pa.theta_star(i)) * cur / prev);
      prev = cur;
    }
    return out;
  };
  return {run(false), run(true)};
}

/// E_i A* E_j and E*_i A E*_j vanish for |i-j| > 1 and not for |i-j| = 1.
inline bool tridiagonal_check(const Realization& r) {
  const int n = r.A.size();
  auto sandwich_ok = [&](const std::vector<Matrix>& e, const Matrix& m) {
    for (int j = 0; j < n; ++j) {
      Matrix mej = m * e[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i) {
        int gap = i > j ? i - j : j - i;
        if (gap == 0) continue;
        bool zero = (e[static_cast<std::size_t>(i)] * mej).is_zero();
        if (gap == 1 && zero) return false;
        if (gap > 1 && !zero) return false;
      }
    }
    return true;
  };
  return sandwich_ok(r.E, r.Astar) && sandwich_ok(r.Estar, r.A);
}

/// E_i E_j = delta_ij E_i, sum E_i = I, M = sum eigs_i E_i.
inline bool idempotent_laws(const Matrix& m, const std::vector<Scalar>& eigs, const std::vector<Matrix>& e) {
  const int n = m.size();
  Matrix sum(m.field(), n);
  Matrix spectral(m.field(), n);
  for (int i = 0; i < n; ++i) {
    const Matrix& ei = e[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      Matrix p = ei * e[static_cast<std::size_t>(j)];
      if (i == j ? p != ei : !p.is_zero()) return false;
    }
    sum = sum + ei;
    spectral = spectral + eigs[static_cast<std::size_t>(i)] * ei;
  }
  return sum == Matrix::identity(m.field(), n) && spectral == m;
}

/// a_i = tr(E*_i A), a*_i = tr(E_i A*).
inline std::pair<std::vector<Scalar>, std::vector<Scalar>> a_parameters(const Realization& r) {
  std::vector<Scalar> a;
  std::vector<Scalar> as;
  for (std::size_t i = 0; i < r.E.size(); ++i) {
    a.push_back((r.Estar[i] * r.A).trace());
    as.push_back((r.E[i] * r.Astar).trace());
  }
  return {a, as};
}

struct Certificate {
  bool idempotents = false;
  bool tridiagonal = false;
  bool split_sequences = false;
  bool ok() const { return idempotents && tridiagonal && split_sequences; }
};

/// Runs every check on the split realization of `pa`. Invalid arrays may
/// make the construction throw (NotMultiplicityFree, ZeroDenominator).
inline Certificate certify(const ParameterArray& pa) {
  Realization r = split_realize(pa);
  Certificate c;
  c.idempotents = idempotent_laws(r.A, pa.thetas(), r.E) && idempotent_laws(r.Astar, pa.theta_stars(), r.Estar);
  c.tridiagonal = tridiagonal_check(r);
  try {
    auto [vp, ph] = recover_split_sequences(r);
    c.split_sequences = vp == pa.varphis() && ph == pa.phis();
  } catch (const ZeroDenominator&) {
    c.split_sequences = false;
  }
  return c;
}

}  // namespace leonard

#endif  // LEONARD_REALIZE_HPP
