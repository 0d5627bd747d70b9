#pragma once

#include <cstddef>
#include <vector>

#include "synchrolab/numeric.hpp"

namespace synchrolab {

// Dense polynomial with arbitrary-precision integer coefficients,
// c[j] is the coefficient of x^j.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial constant(BigInt v) { return IntPolynomial({std::move(v)}); }
    // x + shift
    static IntPolynomial linear(BigInt shift) { return IntPolynomial({std::move(shift), 1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coefficients() const { return c_; }
    BigInt coefficient(size_t j) const { return j < c_.size() ? c_[j] : BigInt(0); }

    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (size_t j = c_.size(); j-- > 0;) acc = acc * x + c_[j];
        return acc;
    }

    IntPolynomial& operator+=(const IntPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
        normalize();
        return *this;
    }
    IntPolynomial& operator-=(const IntPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
        normalize();
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }

    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return IntPolynomial(std::move(out));
    }

    IntPolynomial pow(unsigned e) const {
        IntPolynomial r = constant(1);
        IntPolynomial base = *this;
        while (e) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

} // namespace synchrolab
