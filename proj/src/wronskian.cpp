#include "wrindep/wronskian.hpp"

#include <algorithm>
#include <limits>

namespace wrindep {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

bool is_exact_zero(const Series& s) { return s.is_zero(); }
bool is_exact_zero(const MSeries& s) { return s.is_zero(); }

template <class T>
T det_cofactor(const std::vector<std::vector<T>>& m, const T& zero) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    T acc = zero;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_exact_zero(m[0][j])) continue; // exactly zero, contributes nothing
        std::vector<std::vector<T>> sub;
        sub.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<T> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(m[i][k]);
            }
            sub.push_back(std::move(row));
        }
        T term = m[0][j] * det_cofactor(sub, zero);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// One-step Bareiss elimination over an integral domain. The quotient in the
// update rule divides exactly, so `div` must implement exact division.
template <class T, class DivFn>
T det_bareiss(std::vector<std::vector<T>> m, const T& one, const T& zero, DivFn div) {
    const std::size_t n = m.size();
    int sign = 1;
    T prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (is_exact_zero(m[k][k])) {
            std::size_t r = k + 1;
            while (r < n && is_exact_zero(m[r][k])) ++r;
            if (r == n) return zero;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            }
            m[i][k] = zero;
        }
        prev = m[k][k];
    }
    T det = std::move(m[n - 1][n - 1]);
    return sign < 0 ? zero - det : det;
}

// Exact division of multivariate polynomials by cancelling lex-minimal terms.
MSeries mseries_div_exact(const MSeries& f, const MSeries& g) {
    if (g.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    const FieldSpec& spec = f.spec();
    MSeries rem = f;
    std::vector<std::pair<MultiIndex, FieldElement>> quot_terms;
    const MMonomial glm = g.leading_monomial();
    while (!rem.is_zero()) {
        const MMonomial rlm = rem.leading_monomial();
        MultiIndex e(rlm.exponent.size());
        for (std::size_t t = 0; t < e.size(); ++t) {
            if (rlm.exponent[t] < glm.exponent[t]) throw Error("inexact polynomial division");
            e[t] = rlm.exponent[t] - glm.exponent[t];
        }
        FieldElement c = rlm.coeff / glm.coeff;
        quot_terms.emplace_back(e, c);
        rem = rem - MSeries::monomial(c, std::move(e)) * g;
    }
    return MSeries::from_terms(spec, f.num_vars(), std::move(quot_terms));
}

void check_uniform_spec(const std::vector<Series>& family) {
    if (family.empty()) throw Error("empty family");
    for (const auto& f : family) {
        if (f.spec() != family.front().spec()) {
            throw SpecMismatchError("family members live over different fields");
        }
    }
}

void check_uniform_spec(const std::vector<MSeries>& family) {
    if (family.empty()) throw Error("empty family");
    for (const auto& f : family) {
        if (f.spec() != family.front().spec()) {
            throw SpecMismatchError("family members live over different fields");
        }
        if (f.num_vars() != family.front().num_vars()) {
            throw Error("family members have different variable counts");
        }
    }
}

struct PrecBound {
    bool exact = true;
    std::int64_t precision = kInf;       // valid-result bound
    std::int64_t valuation_floor = 0;    // no result coefficient can sit below this
    bool exact_zero_column = false;
};

// Sound pessimistic bound for a determinant with truncated entries: a
// permutation product is known up to min_k (prec_k + sum_{l != k} val_l), so
// the determinant is valid to min over columns j of
// [column j's worst entry precision + sum of the other columns' valuation
// lower bounds].
template <class Grid, class PrecFn, class ValFn>
PrecBound det_precision_bound(const Grid& grid, PrecFn entry_prec, ValFn entry_val) {
    const std::size_t n = grid.size();
    PrecBound out;
    std::vector<std::int64_t> col_prec(n, kInf), col_val(n, kInf);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            col_prec[j] = std::min(col_prec[j], entry_prec(grid[i][j]));
            col_val[j] = std::min(col_val[j], entry_val(grid[i][j]));
        }
        if (col_val[j] >= kInf) out.exact_zero_column = true; // all entries exactly 0
    }
    if (out.exact_zero_column) return out;
    std::int64_t floor = 0;
    for (std::size_t j = 0; j < n; ++j) floor += col_val[j];
    out.valuation_floor = floor;
    for (std::size_t j = 0; j < n; ++j) {
        if (col_prec[j] >= kInf) continue; // exact column constrains nothing
        out.exact = false;
        out.precision = std::min(out.precision, col_prec[j] + floor - col_val[j]);
    }
    return out;
}

std::int64_t series_prec_of(const Series& s) { return s.precision() ? *s.precision() : kInf; }
std::int64_t series_val_of(const Series& s) { return s.is_zero() ? kInf : s.valuation_offset(); }
std::int64_t mseries_prec_of(const MSeries& s) { return s.precision() ? *s.precision() : kInf; }
std::int64_t mseries_val_of(const MSeries& s) {
    auto v = s.min_total_degree();
    return v ? *v : kInf;
}

BigInt integer_binomial_u(std::int64_t n, std::int64_t k) {
    BigInt num = 1, den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= BigInt(n - i);
        den *= BigInt(i + 1);
    }
    return num / den;
}

} // namespace

std::vector<std::vector<Series>> wronskian_matrix(const std::vector<Series>& family) {
    check_uniform_spec(family);
    const std::size_t n = family.size();
    std::vector<std::vector<Series>> rows;
    rows.reserve(n);
    rows.push_back(family);
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<Series> row;
        row.reserve(n);
        for (const auto& f : rows.back()) row.push_back(f.derivative());
        rows.push_back(std::move(row));
    }
    return rows;
}

Series wronskian(const std::vector<Series>& family, DetMethod method) {
    const auto grid = wronskian_matrix(family);
    const FieldSpec spec = family.front().spec();
    const std::size_t n = family.size();
    const PrecBound bound = det_precision_bound(grid, series_prec_of, series_val_of);
    if (bound.exact_zero_column) return Series::zero(spec);
    if (!bound.exact && bound.precision <= bound.valuation_floor) {
        throw PrecisionError("precision exhausted before any Wronskian coefficient is determined");
    }
    const bool cofactor = method == DetMethod::Cofactor || (method == DetMethod::Auto && n <= 4);
    if (cofactor) {
        return det_cofactor(grid, Series::zero(spec));
    }
    // Fraction-free elimination needs exact division, which truncated series do
    // not support; run Bareiss on the exact polynomial liftings of the stored
    // windows and re-truncate to the pessimistic bound afterwards.
    std::vector<std::vector<Series>> lifted(n, std::vector<Series>(n, Series::zero(spec)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Series& e = grid[i][j];
            std::vector<FieldElement> w;
            for (std::int64_t k = e.valuation_offset(); k < e.support_end(); ++k) {
                w.push_back(e.coeff(k));
            }
            lifted[i][j] = Series::from_coeffs(spec, e.valuation_offset(), std::move(w));
        }
    }
    Series det = det_bareiss(std::move(lifted), Series::monomial(FieldElement::one(spec), 0),
                             Series::zero(spec), series_div_exact);
    return bound.exact ? det : det.truncated(bound.precision);
}

std::optional<Monomial> monomial_wronskian_closed_form(const std::vector<Monomial>& monomials) {
    if (monomials.empty()) throw Error("empty family");
    const FieldSpec spec = monomials.front().coeff.spec();
    std::vector<std::int64_t> exps;
    FieldElement prod = FieldElement::one(spec);
    for (const auto& m : monomials) {
        if (m.coeff.spec() != spec) throw SpecMismatchError("mixed fields in monomial family");
        if (m.coeff.is_zero()) throw Error("monomial with zero coefficient");
        exps.push_back(m.exponent);
        prod *= m.coeff;
    }
    const FieldElement v = vandermonde(exps, spec);
    if (v.is_zero()) return std::nullopt;
    const auto n = static_cast<std::int64_t>(monomials.size());
    std::int64_t expo = -n * (n - 1) / 2;
    for (auto d : exps) expo += d;
    return Monomial{v * prod, expo};
}

FieldElement vandermonde(const std::vector<std::int64_t>& exponents, const FieldSpec& spec) {
    FieldElement acc = FieldElement::one(spec);
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        for (std::size_t j = i + 1; j < exponents.size(); ++j) {
            acc *= FieldElement::from_integer(exponents[j] - exponents[i], spec);
        }
    }
    return acc;
}

FieldElement falling_factorial_matrix_det(const std::vector<std::int64_t>& exponents,
                                          const FieldSpec& spec) {
    const std::size_t n = exponents.size();
    if (n == 0) throw Error("empty exponent tuple");
    std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            m[k][j] = falling_factorial(exponents[j], static_cast<std::int64_t>(k), spec);
        }
    }
    return det_field(std::move(m), spec);
}

FieldElement det_field(std::vector<std::vector<FieldElement>> m, const FieldSpec& spec) {
    const std::size_t n = m.size();
    if (n == 0) throw Error("empty matrix");
    FieldElement det = FieldElement::one(spec);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return FieldElement::zero(spec);
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            det = -det;
        }
        det *= m[k][k];
        const FieldElement inv = m[k][k].inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            const FieldElement factor = m[i][k] * inv;
            for (std::size_t j = k; j < n; ++j) {
                m[i][j] -= factor * m[k][j];
            }
        }
    }
    return det;
}

GenWronskianSpec GenWronskianSpec::from_rows(std::vector<MultiIndex> rows) {
    if (rows.empty()) throw Error("a generalized Wronskian needs at least one row");
    const std::size_t m = rows.front().size();
    GenWronskianSpec spec;
    for (std::size_t s = 0; s < rows.size(); ++s) {
        if (rows[s].size() != m) throw Error("rows with different variable counts");
        for (auto v : rows[s]) {
            if (v < 0) throw Error("negative derivative order");
        }
        if (total_degree(rows[s]) > static_cast<std::int64_t>(s)) {
            throw Error("row " + std::to_string(s) + " exceeds its total-order bound");
        }
        spec.ops.push_back(DiffOp{std::move(rows[s])});
    }
    return spec;
}

int GenWronskianSpec::num_vars() const {
    return ops.empty() ? 0 : static_cast<int>(ops.front().order.size());
}

std::string GenWronskianSpec::str() const {
    std::string out = "[";
    for (std::size_t s = 0; s < ops.size(); ++s) {
        if (s) out += ",";
        out += "[";
        for (std::size_t t = 0; t < ops[s].order.size(); ++t) {
            if (t) out += ",";
            out += std::to_string(ops[s].order[t]);
        }
        out += "]";
    }
    return out + "]";
}

BigInt gen_wronskian_spec_count(int n, int m) {
    if (n < 1 || m < 1) throw Error("need n >= 1 and m >= 1");
    BigInt acc = 1;
    for (int s = 0; s < n; ++s) {
        acc *= integer_binomial_u(s + m, m);
    }
    return acc;
}

namespace {

// all multi-indices over m variables with total degree <= s, descending lex
std::vector<MultiIndex> row_candidates(int s, int m) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(m), 0);
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t left) {
        if (pos == m) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1, left - v);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, s);
    std::sort(out.begin(), out.end(), std::greater<MultiIndex>());
    return out;
}

} // namespace

void for_each_gen_wronskian_spec(int n, int m,
                                 const std::function<bool(const GenWronskianSpec&)>& visit) {
    if (n < 1 || m < 1) throw Error("need n >= 1 and m >= 1");
    std::vector<std::vector<MultiIndex>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) rows.push_back(row_candidates(s, m));
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        GenWronskianSpec spec;
        spec.ops.reserve(static_cast<std::size_t>(n));
        for (int s = 0; s < n; ++s) {
            spec.ops.push_back(DiffOp{rows[static_cast<std::size_t>(s)][idx[static_cast<std::size_t>(s)]]});
        }
        if (!visit(spec)) return;
        int s = n - 1;
        while (s >= 0) {
            auto& i = idx[static_cast<std::size_t>(s)];
            if (++i < rows[static_cast<std::size_t>(s)].size()) break;
            i = 0;
            --s;
        }
        if (s < 0) return;
    }
}

std::vector<GenWronskianSpec> enumerate_gen_wronskian_specs(int n, int m) {
    std::vector<GenWronskianSpec> out;
    for_each_gen_wronskian_spec(n, m, [&](const GenWronskianSpec& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

MSeries generalized_wronskian(const std::vector<MSeries>& family, const GenWronskianSpec& spec,
                              DetMethod method) {
    check_uniform_spec(family);
    const std::size_t n = family.size();
    if (spec.size() != n) throw Error("operator tuple size differs from family size");
    if (spec.num_vars() != family.front().num_vars()) {
        throw Error("operator tuple and family have different variable counts");
    }
    const FieldSpec field = family.front().spec();
    const int m = family.front().num_vars();
    for (const auto& f : family) {
        if (f.precision() && *f.precision() <= static_cast<std::int64_t>(n) - 1) {
            throw PrecisionError("total-degree precision must exceed n-1");
        }
    }
    std::vector<std::vector<MSeries>> grid(n, std::vector<MSeries>(n, MSeries::zero(field, m)));
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t j = 0; j < n; ++j) {
            grid[s][j] = family[j].derivative(spec.ops[s].order);
        }
    }
    const PrecBound bound = det_precision_bound(grid, mseries_prec_of, mseries_val_of);
    if (bound.exact_zero_column) return MSeries::zero(field, m);
    if (!bound.exact && bound.precision <= bound.valuation_floor) {
        throw PrecisionError("precision exhausted before any coefficient is determined");
    }
    const bool cofactor = method == DetMethod::Cofactor || (method == DetMethod::Auto && n <= 4);
    if (cofactor) {
        return det_cofactor(grid, MSeries::zero(field, m));
    }
    std::vector<std::vector<MSeries>> lifted(n, std::vector<MSeries>(n, MSeries::zero(field, m)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::pair<MultiIndex, FieldElement>> terms;
            for (const auto& [e, c] : grid[i][j].terms()) terms.emplace_back(e, c);
            lifted[i][j] = MSeries::from_terms(field, m, std::move(terms));
        }
    }
    MSeries det = det_bareiss(std::move(lifted),
                              MSeries::monomial(FieldElement::one(field), MultiIndex(m, 0)),
                              MSeries::zero(field, m), mseries_div_exact);
    return bound.exact ? det : det.truncated(bound.precision);
}

FieldElement monomial_gen_wronskian_matrix(const std::vector<MultiIndex>& exponents,
                                           const GenWronskianSpec& spec, const FieldSpec& field) {
    const std::size_t n = exponents.size();
    if (n == 0) throw Error("empty exponent family");
    if (spec.size() != n) throw Error("operator tuple size differs from family size");
    std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n));
    for (std::size_t s = 0; s < n; ++s) {
        const MultiIndex& j = spec.ops[s].order;
        for (std::size_t i = 0; i < n; ++i) {
            if (exponents[i].size() != j.size()) throw Error("multi-index arity mismatch");
            FieldElement v = FieldElement::one(field);
            for (std::size_t t = 0; t < j.size(); ++t) {
                v *= falling_factorial(exponents[i][t], j[t], field);
            }
            m[s][i] = std::move(v);
        }
    }
    return det_field(std::move(m), field);
}

std::optional<MMonomial> monomial_gen_wronskian_closed_form(
    const std::vector<MMonomial>& monomials, const GenWronskianSpec& spec) {
    if (monomials.empty()) throw Error("empty family");
    const FieldSpec field = monomials.front().coeff.spec();
    std::vector<MultiIndex> exps;
    FieldElement prod = FieldElement::one(field);
    for (const auto& m : monomials) {
        if (m.coeff.is_zero()) throw Error("monomial with zero coefficient");
        exps.push_back(m.exponent);
        prod *= m.coeff;
    }
    const FieldElement det = monomial_gen_wronskian_matrix(exps, spec, field);
    if (det.is_zero()) return std::nullopt;
    MultiIndex e(exps.front().size(), 0);
    for (const auto& a : exps) {
        for (std::size_t t = 0; t < e.size(); ++t) e[t] += a[t];
    }
    for (const auto& op : spec.ops) {
        for (std::size_t t = 0; t < e.size(); ++t) e[t] -= op.order[t];
    }
    for (auto v : e) {
        if (v < 0) throw Error("internal: negative exponent with nonzero determinant");
    }
    return MMonomial{det * prod, std::move(e)};
}

MSeries phi_vandermonde_of_linear_forms(const std::vector<MultiIndex>& exponents,
                                        const FieldSpec& spec) {
    if (!spec.is_rationals()) {
        throw Error("the Vandermonde-of-linear-forms diagnostic requires characteristic zero");
    }
    if (exponents.empty()) throw Error("empty exponent family");
    const int m = static_cast<int>(exponents.front().size());
    auto linear_form = [&](const MultiIndex& alpha) {
        std::vector<std::pair<MultiIndex, FieldElement>> terms;
        for (int t = 0; t < m; ++t) {
            MultiIndex u(static_cast<std::size_t>(m), 0);
            u[static_cast<std::size_t>(t)] = 1;
            terms.emplace_back(std::move(u),
                               FieldElement::from_integer(alpha[static_cast<std::size_t>(t)], spec));
        }
        return MSeries::from_terms(spec, m, std::move(terms));
    };
    MSeries acc = MSeries::monomial(FieldElement::one(spec), MultiIndex(static_cast<std::size_t>(m), 0));
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i].size() != static_cast<std::size_t>(m)) {
            throw Error("multi-index arity mismatch");
        }
        for (std::size_t j = i + 1; j < exponents.size(); ++j) {
            acc = acc * (linear_form(exponents[j]) - linear_form(exponents[i]));
        }
    }
    return acc;
}

} // namespace wrindep
