#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wrindep {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands live in different coefficient fields.
class SpecMismatchError : public Error {
public:
    using Error::Error;
};

/// Inversion or division by the zero element.
class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

/// A truncated series ran out of known coefficients.
class PrecisionError : public Error {
public:
    using Error::Error;
};

bool is_prime_u64(std::uint64_t n);

/// The coefficient field K: either the rationals or a prime field GF(p).
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

    /// Rejects non-prime moduli (trial division up to sqrt(p)).
    static FieldSpec prime_field(std::uint64_t p);

    /// Accepts "Q" or "Fp:<prime>".
    static FieldSpec parse(const std::string& text);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    bool is_prime_field() const { return kind_ == Kind::PrimeField; }

    /// 0 for Q, p for GF(p).
    std::uint64_t characteristic() const { return modulus_; }

    std::uint64_t modulus() const;

    std::string str() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
    }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

private:
    FieldSpec(Kind k, std::uint64_t p) : kind_(k), modulus_(p) {}

    Kind kind_;
    std::uint64_t modulus_; // 0 when kind_ == Rationals
};

/// An exact scalar in Q or GF(p).
///
/// Rationals are kept in lowest terms with positive denominator; prime-field
/// values are canonical residues in [0, p).
class FieldElement {
public:
    /// Zero over Q. Containers need this; prefer the spec-aware factories.
    FieldElement() : spec_(FieldSpec::rationals()), q_(0), r_(0) {}

    static FieldElement zero(const FieldSpec& spec);
    static FieldElement one(const FieldSpec& spec);
    static FieldElement from_integer(const BigInt& n, const FieldSpec& spec);
    static FieldElement from_integer(std::int64_t n, const FieldSpec& spec);
    /// num/den reduced into the field; in GF(p) this is num * den^-1 mod p.
    static FieldElement from_ratio(const BigInt& num, const BigInt& den, const FieldSpec& spec);
    /// Accepts "n" or "n/d" with optional sign.
    static FieldElement parse(const std::string& text, const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }
    bool is_zero() const;
    bool is_one() const;

    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    FieldElement& operator/=(const FieldElement& rhs);
    FieldElement operator-() const;
    FieldElement inverse() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    /// Canonical fraction for Q (Rationals only).
    const BigRational& rational() const;
    /// Canonical residue in [0, p) (PrimeField only).
    std::uint64_t residue() const;

    /// "5/6", "-3", "4" -- the canonical CLI/JSON form.
    std::string str() const;

private:
    FieldElement(const FieldSpec& spec, BigRational q, std::uint64_t r)
        : spec_(spec), q_(std::move(q)), r_(r) {}

    void check_same_spec(const FieldElement& rhs) const;

    FieldSpec spec_;
    BigRational q_;    // Rationals payload
    std::uint64_t r_;  // PrimeField payload
};

/// The falling factorial d(d-1)...(d-k+1) embedded in the field; (d)_0 = 1.
/// Negative d is allowed (Laurent exponents).
FieldElement falling_factorial(std::int64_t d, std::int64_t k, const FieldSpec& spec);

} // namespace wrindep
