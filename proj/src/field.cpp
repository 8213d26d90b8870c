#include "wrindep/field.hpp"

#include <boost/multiprecision/integer.hpp>

namespace wrindep {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
    if (p >= (std::uint64_t(1) << 62)) {
        throw Error("prime field modulus too large (must fit in 62 bits): " + std::to_string(p));
    }
    if (!is_prime_u64(p)) {
        throw Error("prime field modulus is not prime: " + std::to_string(p));
    }
    return FieldSpec(Kind::PrimeField, p);
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.rfind("Fp:", 0) == 0) {
        const std::string digits = text.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw Error("malformed field spec: " + text);
        }
        try {
            return prime_field(std::stoull(digits));
        } catch (const std::out_of_range&) {
            throw Error("prime field modulus out of range: " + text);
        }
    }
    throw Error("unknown field spec (expected \"Q\" or \"Fp:<prime>\"): " + text);
}

std::uint64_t FieldSpec::modulus() const {
    if (kind_ != Kind::PrimeField) throw Error("modulus() called on the rational field");
    return modulus_;
}

std::string FieldSpec::str() const {
    return is_rationals() ? "Q" : "Fp:" + std::to_string(modulus_);
}

namespace {

std::uint64_t mod_reduce(const BigInt& n, std::uint64_t p) {
    BigInt r = n % p;
    if (r < 0) r += p;
    return r.convert_to<std::uint64_t>();
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b; // p < 2^62, no overflow
    return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on signed 64-bit; p < 2^62
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

} // namespace

FieldElement FieldElement::zero(const FieldSpec& spec) {
    return FieldElement(spec, BigRational(0), 0);
}

FieldElement FieldElement::one(const FieldSpec& spec) {
    return FieldElement(spec, BigRational(1), 1);
}

FieldElement FieldElement::from_integer(const BigInt& n, const FieldSpec& spec) {
    if (spec.is_rationals()) return FieldElement(spec, BigRational(n), 0);
    return FieldElement(spec, BigRational(0), mod_reduce(n, spec.modulus()));
}

FieldElement FieldElement::from_integer(std::int64_t n, const FieldSpec& spec) {
    return from_integer(BigInt(n), spec);
}

FieldElement FieldElement::from_ratio(const BigInt& num, const BigInt& den, const FieldSpec& spec) {
    if (den == 0) throw DivisionByZeroError("zero denominator");
    if (spec.is_rationals()) {
        return FieldElement(spec, BigRational(num, den), 0);
    }
    const std::uint64_t p = spec.modulus();
    const std::uint64_t d = mod_reduce(den, p);
    if (d == 0) throw DivisionByZeroError("denominator vanishes mod " + std::to_string(p));
    return FieldElement(spec, BigRational(0), mod_mul(mod_reduce(num, p), mod_inv(d, p), p));
}

FieldElement FieldElement::parse(const std::string& text, const FieldSpec& spec) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return from_integer(BigInt(text), spec);
        return from_ratio(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)), spec);
    } catch (const std::runtime_error& e) {
        throw Error("malformed field element \"" + text + "\": " + e.what());
    }
}

bool FieldElement::is_zero() const {
    return spec_.is_rationals() ? q_.is_zero() : r_ == 0;
}

bool FieldElement::is_one() const {
    return spec_.is_rationals() ? q_ == 1 : r_ == 1;
}

void FieldElement::check_same_spec(const FieldElement& rhs) const {
    if (spec_ != rhs.spec_) {
        throw SpecMismatchError("mismatched field specs: " + spec_.str() + " vs " + rhs.spec_.str());
    }
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    check_same_spec(rhs);
    if (spec_.is_rationals()) {
        q_ += rhs.q_;
    } else {
        r_ = mod_add(r_, rhs.r_, spec_.modulus());
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    check_same_spec(rhs);
    if (spec_.is_rationals()) {
        q_ -= rhs.q_;
    } else {
        r_ = mod_sub(r_, rhs.r_, spec_.modulus());
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    check_same_spec(rhs);
    if (spec_.is_rationals()) {
        q_ *= rhs.q_;
    } else {
        r_ = mod_mul(r_, rhs.r_, spec_.modulus());
    }
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
    return *this *= rhs.inverse();
}

FieldElement FieldElement::operator-() const {
    if (spec_.is_rationals()) return FieldElement(spec_, -q_, 0);
    return FieldElement(spec_, BigRational(0), r_ == 0 ? 0 : spec_.modulus() - r_);
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw DivisionByZeroError("zero is not invertible");
    if (spec_.is_rationals()) return FieldElement(spec_, 1 / q_, 0);
    return FieldElement(spec_, BigRational(0), mod_inv(r_, spec_.modulus()));
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same_spec(b);
    return a.spec_.is_rationals() ? a.q_ == b.q_ : a.r_ == b.r_;
}

const BigRational& FieldElement::rational() const {
    if (!spec_.is_rationals()) throw Error("rational() called on a prime-field element");
    return q_;
}

std::uint64_t FieldElement::residue() const {
    if (!spec_.is_prime_field()) throw Error("residue() called on a rational element");
    return r_;
}

std::string FieldElement::str() const {
    if (spec_.is_prime_field()) return std::to_string(r_);
    const BigInt num = boost::multiprecision::numerator(q_);
    const BigInt den = boost::multiprecision::denominator(q_);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

FieldElement falling_factorial(std::int64_t d, std::int64_t k, const FieldSpec& spec) {
    if (k < 0) throw Error("falling factorial needs k >= 0");
    BigInt acc = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        acc *= BigInt(d - i);
    }
    return FieldElement::from_integer(acc, spec);
}

} // namespace wrindep
