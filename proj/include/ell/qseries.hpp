#pragma once

#include "ell/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace ell {

// Sparse power series in q truncated after q^order.
class QSeries {
public:
    explicit QSeries(unsigned order = 0) : order_(order) {}
    static QSeries constant(const Rational& c, unsigned order);
    static QSeries monomial(const Rational& c, unsigned degree, unsigned order);
    static QSeries from_coefficients(const std::vector<Rational>& coeffs);

    unsigned order() const { return order_; }
    Rational coeff(unsigned d) const;
    void set(unsigned d, const Rational& c);
    const std::map<unsigned, Rational>& terms() const { return terms_; }
    std::vector<Rational> dense() const;

    QSeries truncated(unsigned order) const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const Rational& s, const QSeries& a);

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    unsigned order_;
    std::map<unsigned, Rational> terms_;
};

}  // namespace ell
