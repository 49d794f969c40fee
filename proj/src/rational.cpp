#include "ell/rational.hpp"

namespace ell {

Rational::Rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Rational out(1), base(*this);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    mpz_class n, d(1);
    try {
        if (slash == std::string::npos) {
            n = mpz_class(s, 10);
        } else {
            std::string a = s.substr(0, slash), b = s.substr(slash + 1);
            trim(a);
            trim(b);
            n = mpz_class(a, 10);
            d = mpz_class(b, 10);
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: " + s);
    }
    if (d == 0) throw DivisionByZero();
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

std::size_t Rational::hash() const {
    std::size_t h = std::hash<std::string>{}(v_.get_num().get_str(16));
    h ^= std::hash<std::string>{}(v_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

mpz_class floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) {
    return r - Rational(mpq_class(floor(r)));
}

}  // namespace ell
