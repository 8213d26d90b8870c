#pragma once

#include "wrindep/reduction.hpp"
#include "wrindep/wronskian.hpp"

#include <optional>
#include <vector>

namespace wrindep {

enum class Verdict { Independent, Dependent, DependentUpToPrecision, Inconclusive };
enum class InconclusiveReason { PrecisionExhausted, CharPCaveat };
enum class RationalStrategy { LaurentExpansion, Translation };

std::string to_string(Verdict v);
std::string to_string(InconclusiveReason r);
std::string to_string(RationalStrategy s);

/// How the nonzero Wronskian leading term of an independence witness was
/// obtained: from the closed form on leading monomials (the default), or from
/// expanding the full Wronskian (positive characteristic fallback).
enum class WitnessOrigin { ClosedForm, WronskianExpansion };

struct IndependenceWitness {
    std::vector<std::vector<FieldElement>> transform;
    /// Distinct orders of the reduced family (univariate families).
    std::vector<std::int64_t> orders;
    /// Distinct lex-minimal exponents (multivariate families).
    std::vector<MultiIndex> leading_exponents;
    /// The operator tuple whose generalized Wronskian is nonzero (multivariate).
    std::optional<GenWronskianSpec> genwronskian_spec;
    /// Nonzero leading term of the (generalized) Wronskian; univariate
    /// exponents are stored as one-entry multi-indices (possibly negative).
    MMonomial wronskian_leading_monomial;
    WitnessOrigin origin = WitnessOrigin::ClosedForm;
    std::optional<RationalStrategy> strategy;
    std::optional<FieldElement> translation_point;
};

struct DependenceWitness {
    /// Nonzero weights, normalized so the first nonzero entry is 1.
    std::vector<FieldElement> weights;
    /// True when the combination vanishes identically, not merely up to the
    /// working precision.
    bool exact = true;
};

struct Certificate {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<IndependenceWitness> independence;
    std::optional<DependenceWitness> dependence;
    std::optional<InconclusiveReason> reason;
};

/// Brute-force rank of the coefficient matrix (rows = exponents of the known
/// windows, columns = family members) with a kernel vector when deficient.
struct OracleReport {
    std::size_t rank = 0;
    std::optional<std::vector<FieldElement>> kernel;
};

Certificate certify_univariate(const std::vector<Series>& family);

/// A quotient of exact polynomials; negative input exponents are cleared into
/// the denominator on construction.
class RationalFunction {
public:
    RationalFunction(Series numerator, Series denominator);

    const Series& num() const { return num_; }
    const Series& den() const { return den_; }
    const FieldSpec& spec() const { return num_.spec(); }
    bool is_zero() const { return num_.is_zero(); }

    /// The value as an exact Laurent polynomial when the division comes out
    /// even (monomial denominators included), otherwise nullopt.
    std::optional<Series> exact_value() const;
    /// Laurent expansion around the origin, valid to `precision`.
    Series laurent_expansion(std::int64_t precision) const;
    /// f(x+c); the denominator must not vanish at c.
    RationalFunction translated(const FieldElement& c) const;
    /// Denominator evaluated at c.
    FieldElement den_at(const FieldElement& c) const;

    RationalFunction scaled(const FieldElement& c) const;
    RationalFunction inverse() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

    std::string str() const;

private:
    Series num_; // exact polynomial (valuation >= 0)
    Series den_; // exact nonzero polynomial (valuation >= 0)
};

/// Working precision for truncated/rational work: enough room for the
/// closed-form witness exponent sum(d_i) - C(n,2) plus the input scale.
std::int64_t default_precision_budget(std::size_t n, std::int64_t max_scale);

Certificate certify_rational(const std::vector<RationalFunction>& family,
                             RationalStrategy strategy,
                             std::optional<std::int64_t> precision = std::nullopt);

/// Theorem-of-generalized-Wronskians route; characteristic zero only.
Certificate certify_multivariate(const std::vector<MSeries>& family);

OracleReport rank_oracle(const std::vector<Series>& family);
OracleReport rank_oracle(const std::vector<MSeries>& family);

bool verify_certificate(const std::vector<Series>& family, const Certificate& cert);
bool verify_certificate(const std::vector<MSeries>& family, const Certificate& cert);
bool verify_certificate(const std::vector<RationalFunction>& family, const Certificate& cert);

} // namespace wrindep
