#pragma once

#include "wrindep/field.hpp"

#include <map>
#include <optional>
#include <vector>

namespace wrindep {

/// Exponent multi-index (alpha_1, ..., alpha_m). std::map's default
/// comparison on vectors is exactly the lexicographic order with the first
/// variable taking priority, which is the monomial order used throughout.
using MultiIndex = std::vector<std::int64_t>;

std::int64_t total_degree(const MultiIndex& a);
bool lex_less(const MultiIndex& a, const MultiIndex& b);

/// A nonzero multivariate term c * x1^a1 ... xm^am.
struct MMonomial {
    FieldElement coeff;
    MultiIndex exponent;

    std::string str() const;
    friend bool operator==(const MMonomial& a, const MMonomial& b) {
        return a.exponent == b.exponent && a.coeff == b.coeff;
    }
};

/// A sparse multivariate series over K truncated by total degree.
///
/// Stored terms all have total degree below the precision bound; terms of
/// total degree >= precision are unknown. A series without a precision bound
/// is an exact polynomial.
class MSeries {
public:
    using Prec = std::optional<std::int64_t>;
    using TermMap = std::map<MultiIndex, FieldElement>;

    static MSeries zero(const FieldSpec& spec, int num_vars, Prec precision = std::nullopt);
    static MSeries monomial(const FieldElement& coeff, MultiIndex exponent,
                            Prec precision = std::nullopt);
    static MSeries from_terms(const FieldSpec& spec, int num_vars,
                              std::vector<std::pair<MultiIndex, FieldElement>> terms,
                              Prec precision = std::nullopt);

    const FieldSpec& spec() const { return spec_; }
    int num_vars() const { return num_vars_; }
    bool is_exact() const { return !precision_.has_value(); }
    Prec precision() const { return precision_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return is_exact() && terms_.empty(); }
    bool is_zero_up_to_precision() const { return terms_.empty(); }
    /// Lex-minimal term; throws when nothing is known to be nonzero.
    MMonomial leading_monomial() const;
    /// Smallest total degree carrying a nonzero term; precision for an empty
    /// truncated series (the valuation lower bound), nullopt for exact zero.
    std::optional<std::int64_t> min_total_degree() const;

    FieldElement coeff(const MultiIndex& e) const;

    MSeries truncated(std::int64_t new_precision) const;
    MSeries partial(int var) const;
    /// Iterated partial derivative (d/dx1)^j1 ... (d/dxm)^jm.
    MSeries derivative(const MultiIndex& j) const;
    MSeries scaled(const FieldElement& c) const;
    MSeries operator-() const;

    friend MSeries operator+(const MSeries& a, const MSeries& b);
    friend MSeries operator-(const MSeries& a, const MSeries& b);
    friend MSeries operator*(const MSeries& a, const MSeries& b);

    bool identical_to(const MSeries& other) const;

    /// Variable names default to x1..xm; pass a stem to rename (e.g. "u").
    std::string str(const std::string& var_stem = "x") const;

private:
    MSeries(const FieldSpec& spec, int num_vars, TermMap terms, Prec prec)
        : spec_(spec), num_vars_(num_vars), terms_(std::move(terms)), precision_(prec) {}

    void normalize();

    FieldSpec spec_;
    int num_vars_;
    TermMap terms_;
    Prec precision_;
};

bool equal_on_common_precision(const MSeries& a, const MSeries& b);

MSeries mseries_linear_combine(const std::vector<MSeries>& family,
                               const std::vector<FieldElement>& weights);

} // namespace wrindep
