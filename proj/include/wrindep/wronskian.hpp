#pragma once

#include "wrindep/mseries.hpp"
#include "wrindep/series.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace wrindep {

/// How to expand a determinant over series entries.
enum class DetMethod {
    Auto,     ///< cofactor for n <= 4, fraction-free elimination above
    Cofactor,
    Bareiss,
};

/// Rows of (i-1)-th derivatives; entry (i, j) = family[j]^(i).
std::vector<std::vector<Series>> wronskian_matrix(const std::vector<Series>& family);

/// Determinant of the Wronskian matrix, with pessimistic precision tracking.
Series wronskian(const std::vector<Series>& family, DetMethod method = DetMethod::Auto);

/// V(d_1,...,d_n) * x^(sum d_i - C(n,2)) * prod a_i for monomials a_i x^d_i;
/// nullopt when the exponents collide (or the Vandermonde factor vanishes in
/// positive characteristic). Negative exponents are fine.
std::optional<Monomial> monomial_wronskian_closed_form(const std::vector<Monomial>& monomials);

/// prod_{i<j} (d_j - d_i) embedded in the field.
FieldElement vandermonde(const std::vector<std::int64_t>& exponents, const FieldSpec& spec);

/// Determinant of the matrix with rows (d_j)_k, k = 0..n-1. Equal to the
/// Vandermonde determinant of the same exponents: each row is a monic degree-k
/// polynomial in d, so column operations reduce one matrix to the other.
FieldElement falling_factorial_matrix_det(const std::vector<std::int64_t>& exponents,
                                          const FieldSpec& spec);

/// A partial-derivative operator (d/dx1)^j1 ... (d/dxm)^jm.
struct DiffOp {
    MultiIndex order;

    std::int64_t total() const { return total_degree(order); }
    bool is_identity() const { return total() == 0; }
    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.order == b.order; }
};

/// A row tuple (Delta_0, ..., Delta_{n-1}) with |j_s| <= s for row s.
struct GenWronskianSpec {
    std::vector<DiffOp> ops;

    static GenWronskianSpec from_rows(std::vector<MultiIndex> rows);

    std::size_t size() const { return ops.size(); }
    int num_vars() const;
    /// "[[0,0],[1,0],[0,1]]"
    std::string str() const;
    friend bool operator==(const GenWronskianSpec& a, const GenWronskianSpec& b) {
        return a.ops == b.ops;
    }
};

/// Number of admissible tuples: prod_{s=0}^{n-1} C(s+m, m).
BigInt gen_wronskian_spec_count(int n, int m);

/// Visits every admissible tuple in a fixed order: candidates within each row
/// are listed in decreasing lexicographic order, rows advance like an odometer
/// with the last row moving fastest. Return false from the visitor to stop.
void for_each_gen_wronskian_spec(int n, int m,
                                 const std::function<bool(const GenWronskianSpec&)>& visit);

std::vector<GenWronskianSpec> enumerate_gen_wronskian_specs(int n, int m);

/// Determinant of the matrix with entry (s, j) = Delta_s(family[j]).
MSeries generalized_wronskian(const std::vector<MSeries>& family, const GenWronskianSpec& spec,
                              DetMethod method = DetMethod::Auto);

/// Determinant of the matrix with entry (s, i) = (alpha_i)_{j_s}, the
/// multi-index falling factorial delta_s(alpha_i).
FieldElement monomial_gen_wronskian_matrix(const std::vector<MultiIndex>& exponents,
                                           const GenWronskianSpec& spec, const FieldSpec& field);

/// Generalized Wronskian of monomials c_i x^alpha_i in closed form: the
/// falling-factorial determinant times prod c_i, at exponent
/// sum alpha_i - sum_s j_s. nullopt when the determinant vanishes.
std::optional<MMonomial> monomial_gen_wronskian_closed_form(const std::vector<MMonomial>& monomials,
                                                            const GenWronskianSpec& spec);

/// The Vandermonde determinant of the linear forms <u, alpha_i> as an exact
/// polynomial in u_1..u_m; zero iff two multi-indices coincide. Demands
/// characteristic zero.
MSeries phi_vandermonde_of_linear_forms(const std::vector<MultiIndex>& exponents,
                                        const FieldSpec& spec);

/// Exact determinant over the coefficient field (Gaussian elimination).
FieldElement det_field(std::vector<std::vector<FieldElement>> m, const FieldSpec& spec);

} // namespace wrindep
