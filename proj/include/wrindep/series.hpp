#pragma once

#include "wrindep/field.hpp"

#include <optional>
#include <vector>

namespace wrindep {

/// A nonzero univariate term c*x^e.
struct Monomial {
    FieldElement coeff;
    std::int64_t exponent = 0;

    std::string str() const;
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.exponent == b.exponent && a.coeff == b.coeff;
    }
};

/// A truncated univariate power/Laurent series over K.
///
/// The stored window is dense over [valuation_offset, precision): every
/// exponent below the window is known to be zero, every stored coefficient is
/// known exactly, and exponents at or above `precision` are unknown. A series
/// with no precision bound is exact (a polynomial or Laurent polynomial); its
/// coefficients vanish outside the stored window.
class Series {
public:
    using Prec = std::optional<std::int64_t>;

    static Series zero(const FieldSpec& spec) { return Series(spec, 0, {}, std::nullopt); }
    static Series zero_truncated(const FieldSpec& spec, std::int64_t precision);
    static Series monomial(const FieldElement& coeff, std::int64_t exponent,
                           Prec precision = std::nullopt);
    /// Dense coefficients, coeffs[i] belonging to x^(offset+i).
    static Series from_coeffs(const FieldSpec& spec, std::int64_t offset,
                              std::vector<FieldElement> coeffs, Prec precision = std::nullopt);

    const FieldSpec& spec() const { return spec_; }
    bool is_exact() const { return !precision_.has_value(); }
    Prec precision() const { return precision_; }
    /// Lowest exponent that could carry a nonzero coefficient.
    std::int64_t valuation_offset() const;

    /// Known coefficient at x^e; throws PrecisionError past the window.
    FieldElement coeff(std::int64_t e) const;
    /// Exactly zero (only meaningful for exact series).
    bool is_zero() const { return is_exact() && coeffs_.empty(); }
    /// No nonzero coefficient within the known window.
    bool is_zero_up_to_precision() const { return coeffs_.empty(); }
    std::optional<std::int64_t> order() const;
    Monomial leading_monomial() const;
    /// Largest exponent with a stored nonzero coefficient (exact series only).
    std::int64_t degree() const;
    /// One past the largest stored exponent; coefficients in
    /// [support_end, precision) are known zero.
    std::int64_t support_end() const {
        return offset_ + static_cast<std::int64_t>(coeffs_.size());
    }

    Series truncated(std::int64_t new_precision) const;
    Series derivative() const;
    Series scaled(const FieldElement& c) const;
    /// Multiplication by x^k.
    Series shifted(std::int64_t k) const;
    Series operator-() const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    /// Same window, same values, same precision.
    bool identical_to(const Series& other) const;

    std::string str() const;

private:
    Series(const FieldSpec& spec, std::int64_t offset, std::vector<FieldElement> coeffs, Prec prec)
        : spec_(spec), offset_(offset), coeffs_(std::move(coeffs)), precision_(prec) {}

    void normalize();

    FieldSpec spec_;
    std::int64_t offset_;                // exponent of coeffs_[0]
    std::vector<FieldElement> coeffs_;   // dense, no leading zeros
    Prec precision_;                     // nullopt = exact
};

/// True when all coefficients agree on the intersection of the known windows.
bool equal_on_common_window(const Series& a, const Series& b);

/// Sum of w_i * f_i with pessimistic precision.
Series series_linear_combine(const std::vector<Series>& family,
                             const std::vector<FieldElement>& weights);

/// f(x+c) for an exact (Laurent) polynomial f. Negative exponents with c != 0
/// are expanded as power series around 0, which requires `out_precision`;
/// c = 0 with negative exponents is rejected (the origin stays a pole).
Series series_translate(const Series& f, const FieldElement& c,
                        std::optional<std::int64_t> out_precision = std::nullopt);

/// Multiplicative inverse of a unit power series (nonzero constant term),
/// computed to `precision` terms.
Series series_inverse(const Series& f, std::int64_t precision);

/// Exact quotient of Laurent polynomials; throws Error when the division
/// leaves a remainder.
Series series_div_exact(const Series& f, const Series& g);
std::optional<Series> series_try_div_exact(const Series& f, const Series& g);

} // namespace wrindep
