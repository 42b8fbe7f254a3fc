#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwork/elattice.hpp"

namespace dwork {

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotUnipotent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coefficients of the m-th cyclotomic polynomial, constant term first.
const std::vector<BigInt>& cyclotomic_poly(int m);

// Element of Q(zeta_m) = Q[X]/(Phi_m), stored as phi(m) rational coefficients.
class CycNum {
public:
    explicit CycNum(int level);   // zero
    CycNum(int level, std::vector<Rational> coeffs);
    CycNum(int level, long value);

    static CycNum root_of_unity(int m, long long k);

    int level() const { return level_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    bool is_rational() const;
    // True iff every coefficient is an integer.
    bool is_integral() const;

    CycNum operator+(const CycNum& o) const;
    CycNum operator-(const CycNum& o) const;
    CycNum operator*(const CycNum& o) const;
    CycNum operator-() const;
    CycNum operator/(const CycNum& o) const { return *this * o.inverse(); }
    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

    // Throws DivisionByZero on zero.
    CycNum inverse() const;
    CycNum pow(long long k) const;
    // Same element viewed at a level that is a multiple of level().
    CycNum lift(int new_level) const;
    // Image under zeta -> zeta^s for a unit s.
    CycNum galois(int s) const;

    bool operator==(const CycNum& o) const { return level_ == o.level_ && coeffs_ == o.coeffs_; }

    std::string to_string() const;

private:
    int level_;
    std::vector<Rational> coeffs_;
};

CycNum root_of_unity(int m, long long k);

// Coefficients A_0..A_n (A_n = 1) of prod_j (X - zeta_d^{e_j}).
std::vector<CycNum> poly_from_roots(int d, std::span<const int> exponents);

class CycMatrix {
public:
    CycMatrix(int rows, int cols, int level);
    static CycMatrix identity(int n, int level);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int level() const { return level_; }

    CycNum& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const CycNum& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    CycMatrix operator+(const CycMatrix& o) const;
    CycMatrix operator-(const CycMatrix& o) const;
    CycMatrix operator*(const CycMatrix& o) const;
    bool operator==(const CycMatrix& o) const;

    CycMatrix pow(long long k) const;
    // Throws DivisionByZero when singular.
    CycMatrix inverse() const;
    CycNum det() const;
    int rank() const;
    bool is_zero() const;
    CycNum trace() const;
    // det(X I - M), constant term first.
    std::vector<CycNum> char_poly() const;

private:
    int rows_, cols_, level_;
    std::vector<CycNum> a_;
};

// Jordan block sizes of a unipotent matrix from r_k = rank((M - I)^k),
// descending. Throws NotUnipotent if (M - I)^n != 0.
std::vector<int> unipotent_block_sizes(const CycMatrix& m);

}  // namespace dwork
