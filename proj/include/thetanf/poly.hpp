#pragma once

#include <string>
#include <vector>

#include "thetanf/numeric.hpp"

namespace thetanf {

/// Univariate polynomial over Z, coefficients stored constant term first.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Polynomial zero() { return {}; }
    static Polynomial constant(Int c);
    static Polynomial x_power(std::size_t k);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    const Int& leading() const { return coeffs_.back(); }

    /// Coefficient of x^i (0 past the degree).
    const Int& coeff(std::size_t i) const;
    const std::vector<Int>& coeffs() const { return coeffs_; }

    bool operator==(const Polynomial&) const = default;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Int& s) const;
    Polynomial operator-() const;

    Polynomial derivative() const;

    /// f(x + c), exact integer Taylor shift.
    Polynomial shift(const Int& c) const;

    Int evaluate(const Int& x) const;
    Rat evaluate(const Rat& x) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void normalize();
    std::vector<Int> coeffs_;
};

/// Resultant of two nonzero integer polynomials (Sylvester determinant).
Int resultant(const Polynomial& f, const Polynomial& g);

/// True iff gcd(f, f') is constant over Q.
bool is_squarefree_over_q(const Polynomial& f);

}  // namespace thetanf
