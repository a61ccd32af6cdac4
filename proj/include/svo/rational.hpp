#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace svo {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision rational, always kept in canonical lowest terms with a
/// positive denominator. All geometry in this library runs on these; there is
/// no floating point anywhere in a decision path.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }

    // Accepts "p", "p/q", leading '-', and any equivalent fraction; the
    // stored value is canonical regardless of the input form.
    static Rational parse(const std::string& text) {
        if (text.empty()) throw ParseError("empty rational literal");
        const auto slash = text.find('/');
        try {
            mpq_class q;
            if (slash == std::string::npos) {
                q = mpq_class(mpz_class(text), 1);
            } else {
                const std::string num = text.substr(0, slash);
                const std::string den = text.substr(slash + 1);
                if (num.empty() || den.empty()) throw ParseError("malformed rational: " + text);
                q = mpq_class(mpz_class(num), mpz_class(den));
                if (q.get_den() == 0) throw std::domain_error("zero denominator");
            }
            q.canonicalize();
            Rational r;
            r.v_ = q;
            return r;
        } catch (const std::invalid_argument&) {
            throw ParseError("malformed rational: " + text);
        } catch (const std::domain_error&) {
            throw ParseError("zero denominator: " + text);
        }
    }

    // Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }

    Rational abs() const {
        Rational r(*this);
        r.v_ = ::abs(r.v_);
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) { return from(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return from(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return from(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return from(a.v_ / b.v_);
    }
    Rational operator-() const { return from(-v_); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static Rational from(mpq_class q) {
        Rational r;
        r.v_ = std::move(q);  // mpq arithmetic preserves canonical form
        return r;
    }
    mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace svo
