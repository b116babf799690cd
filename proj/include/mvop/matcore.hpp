#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvop {

using cplx = std::complex<double>;

// Dense r x r complex matrix, row-major, r small (<= 8 in practice).
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int r) : r_(r), a_(static_cast<size_t>(r) * r) {
        if (r < 1) throw std::invalid_argument("CMatrix: dim must be >= 1");
    }

    static CMatrix identity(int r) {
        CMatrix m(r);
        for (int i = 0; i < r; ++i) m(i, i) = 1.0;
        return m;
    }
    static CMatrix zero(int r) { return CMatrix(r); }

    int dim() const { return r_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * r_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * r_ + j]; }

    CMatrix& operator+=(const CMatrix& o) {
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMatrix& operator-=(const CMatrix& o) {
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    CMatrix adjoint() const {
        CMatrix m(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }
    CMatrix transpose() const {
        CMatrix m(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) m(i, j) = (*this)(j, i);
        return m;
    }
    CMatrix real_part() const {
        CMatrix m(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) m(i, j) = (*this)(i, j).real();
        return m;
    }
    CMatrix imag_part() const {
        CMatrix m(r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) m(i, j) = (*this)(i, j).imag();
        return m;
    }

    double fro() const {
        double s = 0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }
    double max_abs() const {
        double s = 0;
        for (const auto& v : a_) s = std::max(s, std::abs(v));
        return s;
    }

private:
    int r_ = 0;
    std::vector<cplx> a_;
};

inline CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
inline CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
inline CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
inline CMatrix operator*(double s, CMatrix a) { return a *= cplx(s); }
inline CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const int r = a.dim();
    CMatrix c(r);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < r; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline CMatrix diag_matrix(const std::vector<cplx>& d) {
    CMatrix m(static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}
inline CMatrix diag_matrix(const std::vector<double>& d) {
    CMatrix m(static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

struct HermEig {
    std::vector<double> lam;  // ascending
    CMatrix Q;                // unitary, column j <-> lam[j]
};

// Jacobi rotation eigensolver for Hermitian matrices; eigenvalues ascending.
HermEig herm_eig(const CMatrix& A);

// Positive semidefinite square root; clips eigenvalues above -1e-12*||A|| to 0.
CMatrix sqrt_psd(const CMatrix& A);

// Inverse via partial-pivot Gaussian elimination.
CMatrix inv(const CMatrix& A);

// Determinant via pivoted LU.
cplx det(const CMatrix& A);

}  // namespace mvop
