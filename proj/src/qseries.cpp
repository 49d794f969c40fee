#include "ell/qseries.hpp"

#include <algorithm>

namespace ell {

QSeries QSeries::constant(const Rational& c, unsigned order) {
    return monomial(c, 0, order);
}

QSeries QSeries::monomial(const Rational& c, unsigned degree, unsigned order) {
    QSeries s(order);
    s.set(degree, c);
    return s;
}

QSeries QSeries::from_coefficients(const std::vector<Rational>& coeffs) {
    QSeries s(coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1));
    for (unsigned d = 0; d < coeffs.size(); ++d) s.set(d, coeffs[d]);
    return s;
}

Rational QSeries::coeff(unsigned d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? Rational(0) : it->second;
}

void QSeries::set(unsigned d, const Rational& c) {
    if (d > order_) return;
    if (c.is_zero())
        terms_.erase(d);
    else
        terms_[d] = c;
}

std::vector<Rational> QSeries::dense() const {
    std::vector<Rational> out(order_ + 1);
    for (const auto& [d, c] : terms_) out[d] = c;
    return out;
}

QSeries QSeries::truncated(unsigned order) const {
    QSeries s(std::min(order, order_));
    for (const auto& [d, c] : terms_) s.set(d, c);
    return s;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    unsigned ord = std::min(order_, o.order_);
    QSeries out(ord);
    for (const auto& [d, c] : terms_) out.set(d, c);
    for (const auto& [d, c] : o.terms_)
        if (d <= ord) out.set(d, out.coeff(d) + c);
    return *this = std::move(out);
}

QSeries& QSeries::operator-=(const QSeries& o) {
    return *this += Rational(-1) * o;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.order_, b.order_));
    for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) {
            if (da + db > out.order_) break;
            out.set(da + db, out.coeff(da + db) + ca * cb);
        }
    return out;
}

QSeries operator*(const Rational& s, const QSeries& a) {
    QSeries out(a.order_);
    for (const auto& [d, c] : a.terms_) out.set(d, s * c);
    return out;
}

std::string QSeries::str() const {
    std::string out;
    for (const auto& [d, c] : terms_) {
        std::string term = c.str();
        if (d > 0) term += d == 1 ? "*q" : "*q^" + std::to_string(d);
        out += out.empty() ? term : " + " + term;
    }
    if (out.empty()) out = "0";
    return out + " + O(q^" + std::to_string(order_ + 1) + ")";
}

}  // namespace ell
