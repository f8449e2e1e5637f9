#include "thetanf/poly.hpp"

#include <algorithm>
#include <sstream>

#include "thetanf/errors.hpp"
#include "thetanf/linalg.hpp"

namespace thetanf {

namespace {
const Int kZero(0);
}

Polynomial Polynomial::constant(Int c) {
    return Polynomial(std::vector<Int>{std::move(c)});
}

Polynomial Polynomial::x_power(std::size_t k) {
    std::vector<Int> c(k + 1);
    c[k] = 1;
    return Polynomial(std::move(c));
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& Polynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : kZero;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Int> c(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) + rhs.coeff(i);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<Int> c(std::max(coeffs_.size(), rhs.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(i) - rhs.coeff(i);
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (is_zero() || rhs.is_zero()) return {};
    std::vector<Int> c(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Int& s) const {
    std::vector<Int> c(coeffs_);
    for (auto& e : c) e *= s;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-() const {
    std::vector<Int> c(coeffs_);
    for (auto& e : c) e = -e;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Int> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = Int(static_cast<long>(i)) * coeffs_[i];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::shift(const Int& c) const {
    // Horner: f(x + c) = (...((a_n (x+c) + a_{n-1})(x+c) + ...)
    Polynomial acc;
    Polynomial lin(std::vector<Int>{c, Int(1)});
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * lin + Polynomial::constant(coeffs_[i]);
    return acc;
}

Int Polynomial::evaluate(const Int& x) const {
    Int acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Rat Polynomial::evaluate(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    acc.canonicalize();
    return acc;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Int& a = coeffs_[i];
        if (a == 0) continue;
        Int mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (i == 0 || mag != 1) os << mag.get_str();
        if (i > 0) {
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Int resultant(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    const std::size_t m = static_cast<std::size_t>(f.degree());
    const std::size_t n = static_cast<std::size_t>(g.degree());
    if (m == 0 && n == 0) return 1;
    // Sylvester matrix: n rows of f's coefficients, m rows of g's.
    IntMatrix s(m + n, m + n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j <= m; ++j) s(r, r + j) = f.coeff(m - j);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j) s(n + r, r + j) = g.coeff(n - j);
    return linalg::det_bareiss(s);
}

bool is_squarefree_over_q(const Polynomial& f) {
    if (f.degree() < 1) return !f.is_zero();
    // gcd(f, f') is constant iff Res(f, f') != 0
    return resultant(f, f.derivative()) != 0;
}

}  // namespace thetanf
