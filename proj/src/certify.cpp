#include "wrindep/certify.hpp"

#include <algorithm>
#include <set>

namespace wrindep {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Independent: return "Independent";
    case Verdict::Dependent: return "Dependent";
    case Verdict::DependentUpToPrecision: return "DependentUpToPrecision";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string to_string(InconclusiveReason r) {
    switch (r) {
    case InconclusiveReason::PrecisionExhausted: return "PrecisionExhausted";
    case InconclusiveReason::CharPCaveat: return "CharPCaveat";
    }
    return "?";
}

std::string to_string(RationalStrategy s) {
    return s == RationalStrategy::LaurentExpansion ? "laurent" : "translate";
}

namespace {

std::vector<FieldElement> normalized_weights(std::vector<FieldElement> c) {
    auto lead = std::find_if(c.begin(), c.end(),
                             [](const FieldElement& v) { return !v.is_zero(); });
    if (lead == c.end()) throw Error("internal: zero dependence vector");
    const FieldElement inv = lead->inverse();
    for (auto& v : c) v *= inv;
    return c;
}

bool all_exact(const std::vector<Series>& family) {
    return std::all_of(family.begin(), family.end(),
                       [](const Series& f) { return f.is_exact(); });
}

bool all_exact(const std::vector<MSeries>& family) {
    return std::all_of(family.begin(), family.end(),
                       [](const MSeries& f) { return f.is_exact(); });
}

template <class Result>
Certificate dependence_certificate(const Result& red, bool exact_inputs) {
    Certificate cert;
    cert.verdict = exact_inputs ? Verdict::Dependent : Verdict::DependentUpToPrecision;
    cert.dependence = DependenceWitness{normalized_weights(*red.dependence), exact_inputs};
    return cert;
}

Certificate inconclusive(InconclusiveReason reason) {
    Certificate cert;
    cert.verdict = Verdict::Inconclusive;
    cert.reason = reason;
    return cert;
}

} // namespace

Certificate certify_univariate(const std::vector<Series>& family) {
    const ReductionResult red = reduce_to_distinct_orders(family);
    const bool exact_inputs = all_exact(family);
    if (red.status == ReductionStatus::PrecisionExhausted) {
        return inconclusive(InconclusiveReason::PrecisionExhausted);
    }
    if (red.status == ReductionStatus::DependenceFound) {
        return dependence_certificate(red, exact_inputs);
    }

    IndependenceWitness w;
    w.transform = red.transform;
    std::vector<Monomial> lms;
    lms.reserve(red.g.size());
    for (const auto& g : red.g) {
        lms.push_back(g.leading_monomial());
        w.orders.push_back(*g.order());
    }
    if (auto closed = monomial_wronskian_closed_form(lms)) {
        w.wronskian_leading_monomial = MMonomial{closed->coeff, {closed->exponent}};
        w.origin = WitnessOrigin::ClosedForm;
        Certificate cert;
        cert.verdict = Verdict::Independent;
        cert.independence = std::move(w);
        return cert;
    }

    // Distinct orders with a vanishing Vandermonde factor happen only in
    // characteristic p; fall back to the full Wronskian.
    Series wr = Series::zero(family.front().spec());
    try {
        wr = wronskian(family);
    } catch (const PrecisionError&) {
        return inconclusive(InconclusiveReason::PrecisionExhausted);
    }
    if (!wr.is_zero_up_to_precision()) {
        const Monomial lm = wr.leading_monomial();
        w.wronskian_leading_monomial = MMonomial{lm.coeff, {lm.exponent}};
        w.origin = WitnessOrigin::WronskianExpansion;
        Certificate cert;
        cert.verdict = Verdict::Independent;
        cert.independence = std::move(w);
        return cert;
    }
    const OracleReport oracle = rank_oracle(family);
    if (oracle.rank == family.size()) {
        return inconclusive(InconclusiveReason::CharPCaveat);
    }
    Certificate cert;
    cert.verdict = exact_inputs ? Verdict::Dependent : Verdict::DependentUpToPrecision;
    cert.dependence = DependenceWitness{normalized_weights(*oracle.kernel), exact_inputs};
    return cert;
}

Certificate certify_multivariate(const std::vector<MSeries>& family) {
    if (family.empty()) throw Error("empty family");
    if (!family.front().spec().is_rationals()) {
        throw Error("multivariate certification requires characteristic zero");
    }
    const MReductionResult red = reduce_to_distinct_leading_exponents(family);
    const bool exact_inputs = all_exact(family);
    if (red.status == ReductionStatus::PrecisionExhausted) {
        return inconclusive(InconclusiveReason::PrecisionExhausted);
    }
    if (red.status == ReductionStatus::DependenceFound) {
        return dependence_certificate(red, exact_inputs);
    }

    IndependenceWitness w;
    w.transform = red.transform;
    std::vector<MMonomial> lms;
    lms.reserve(red.g.size());
    for (const auto& g : red.g) {
        lms.push_back(g.leading_monomial());
        w.leading_exponents.push_back(lms.back().exponent);
    }
    const int n = static_cast<int>(family.size());
    const int m = family.front().num_vars();
    std::optional<GenWronskianSpec> found;
    std::optional<MMonomial> value;
    for_each_gen_wronskian_spec(n, m, [&](const GenWronskianSpec& spec) {
        if (auto v = monomial_gen_wronskian_closed_form(lms, spec)) {
            found = spec;
            value = std::move(v);
            return false;
        }
        return true;
    });
    if (!found) {
        // distinct exponents guarantee a witness in characteristic zero
        throw Error("internal: no nonzero generalized Wronskian over distinct exponents");
    }
    w.genwronskian_spec = std::move(found);
    w.wronskian_leading_monomial = std::move(*value);
    w.origin = WitnessOrigin::ClosedForm;
    Certificate cert;
    cert.verdict = Verdict::Independent;
    cert.independence = std::move(w);
    return cert;
}

namespace {

// Reduced row echelon over the coefficient matrix; returns rank and a kernel
// vector for the first free column.
OracleReport rank_from_matrix(std::vector<std::vector<FieldElement>> m, std::size_t cols,
                              const FieldSpec& spec) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t pr = r;
        while (pr < m.size() && m[pr][c].is_zero()) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[pr], m[r]);
        const FieldElement inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            const FieldElement f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    OracleReport report;
    report.rank = pivot_col.size();
    if (report.rank == cols) return report;
    // first free column
    std::size_t free_col = 0;
    {
        std::size_t pi = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pi < pivot_col.size() && pivot_col[pi] == c) {
                ++pi;
            } else {
                free_col = c;
                break;
            }
        }
    }
    std::vector<FieldElement> kernel(cols, FieldElement::zero(spec));
    kernel[free_col] = FieldElement::one(spec);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        kernel[pivot_col[i]] = -m[i][free_col];
    }
    report.kernel = normalized_weights(std::move(kernel));
    return report;
}

} // namespace

OracleReport rank_oracle(const std::vector<Series>& family) {
    if (family.empty()) throw Error("empty family");
    const FieldSpec spec = family.front().spec();
    std::optional<std::int64_t> common;
    for (const auto& f : family) {
        if (f.spec() != spec) throw SpecMismatchError("family members live over different fields");
        if (f.precision() && (!common || *f.precision() < *common)) common = f.precision();
    }
    std::vector<Series> fam;
    fam.reserve(family.size());
    for (const auto& f : family) fam.push_back(common ? f.truncated(*common) : f);
    std::int64_t lo = 0, hi = 0;
    bool any = false;
    for (const auto& f : fam) {
        if (f.is_zero_up_to_precision()) continue;
        lo = any ? std::min(lo, f.valuation_offset()) : f.valuation_offset();
        hi = any ? std::max(hi, f.support_end()) : f.support_end();
        any = true;
    }
    std::vector<std::vector<FieldElement>> m;
    if (any) {
        for (std::int64_t e = lo; e < hi; ++e) {
            std::vector<FieldElement> row;
            row.reserve(fam.size());
            for (const auto& f : fam) row.push_back(f.coeff(e));
            m.push_back(std::move(row));
        }
    }
    return rank_from_matrix(std::move(m), family.size(), spec);
}

OracleReport rank_oracle(const std::vector<MSeries>& family) {
    if (family.empty()) throw Error("empty family");
    const FieldSpec spec = family.front().spec();
    std::optional<std::int64_t> common;
    for (const auto& f : family) {
        if (f.spec() != spec) throw SpecMismatchError("family members live over different fields");
        if (f.precision() && (!common || *f.precision() < *common)) common = f.precision();
    }
    std::vector<MSeries> fam;
    fam.reserve(family.size());
    for (const auto& f : family) fam.push_back(common ? f.truncated(*common) : f);
    std::set<MultiIndex> support;
    for (const auto& f : fam) {
        for (const auto& [e, c] : f.terms()) support.insert(e);
    }
    std::vector<std::vector<FieldElement>> m;
    for (const auto& e : support) {
        std::vector<FieldElement> row;
        row.reserve(fam.size());
        for (const auto& f : fam) row.push_back(f.coeff(e));
        m.push_back(std::move(row));
    }
    return rank_from_matrix(std::move(m), family.size(), spec);
}

// ---- rational functions -------------------------------------------------

RationalFunction::RationalFunction(Series numerator, Series denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (!num_.is_exact() || !den_.is_exact()) {
        throw Error("rational functions are quotients of exact polynomials");
    }
    if (num_.spec() != den_.spec()) throw SpecMismatchError("numerator/denominator field mismatch");
    if (den_.is_zero()) throw DivisionByZeroError("zero denominator");
    if (num_.is_zero()) {
        den_ = Series::monomial(FieldElement::one(num_.spec()), 0);
        return;
    }
    // clear negative exponents, then cancel the common power of x
    const std::int64_t shift = std::min<std::int64_t>({0, num_.valuation_offset(),
                                                       den_.valuation_offset()});
    num_ = num_.shifted(-shift);
    den_ = den_.shifted(-shift);
    const std::int64_t common = std::min(*num_.order(), *den_.order());
    if (common > 0) {
        num_ = num_.shifted(-common);
        den_ = den_.shifted(-common);
    }
}

std::optional<Series> RationalFunction::exact_value() const {
    if (num_.is_zero()) return Series::zero(spec());
    return series_try_div_exact(num_, den_);
}

Series RationalFunction::laurent_expansion(std::int64_t precision) const {
    if (num_.is_zero()) return Series::zero(spec());
    const std::int64_t a = *num_.order();
    const std::int64_t b = *den_.order();
    const std::int64_t v = a - b;
    if (precision <= v) return Series::zero_truncated(spec(), precision);
    const Series unit_num = num_.shifted(-a);
    const Series unit_den = den_.shifted(-b);
    const Series inv = series_inverse(unit_den, precision - v);
    return (unit_num * inv).shifted(v).truncated(precision);
}

FieldElement RationalFunction::den_at(const FieldElement& c) const {
    FieldElement acc = FieldElement::zero(spec());
    for (std::int64_t e = den_.degree(); e >= den_.valuation_offset(); --e) {
        acc = acc * c + den_.coeff(e);
    }
    return acc;
}

RationalFunction RationalFunction::translated(const FieldElement& c) const {
    if (den_at(c).is_zero()) throw Error("denominator vanishes at the translation point");
    return RationalFunction(series_translate(num_, c), series_translate(den_, c));
}

RationalFunction RationalFunction::scaled(const FieldElement& c) const {
    return RationalFunction(num_.scaled(c), den_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

std::string RationalFunction::str() const {
    if (den_.is_exact() && !den_.is_zero() && den_.valuation_offset() == 0 &&
        den_.support_end() == 1 && den_.coeff(0).is_one()) {
        return num_.str();
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::int64_t default_precision_budget(std::size_t n, std::int64_t max_scale) {
    const auto nn = static_cast<std::int64_t>(n);
    return nn * std::max<std::int64_t>(max_scale, 1) + nn * (nn - 1) / 2 + 1;
}

namespace {

std::int64_t rational_scale(const std::vector<RationalFunction>& family) {
    std::int64_t scale = 1;
    for (const auto& f : family) {
        if (!f.num().is_zero()) scale = std::max(scale, f.num().degree());
        scale = std::max(scale, f.den().degree());
    }
    return scale;
}

FieldElement translation_candidate(std::size_t idx, const FieldSpec& spec) {
    if (spec.is_prime_field()) {
        if (idx >= spec.modulus()) throw Error("no valid translation point in GF(p)");
        return FieldElement::from_integer(static_cast<std::int64_t>(idx), spec);
    }
    // 0, 1, -1, 2, -2, ...
    if (idx == 0) return FieldElement::zero(spec);
    const auto k = static_cast<std::int64_t>((idx + 1) / 2);
    return FieldElement::from_integer(idx % 2 == 1 ? k : -k, spec);
}

} // namespace

Certificate certify_rational(const std::vector<RationalFunction>& family,
                             RationalStrategy strategy,
                             std::optional<std::int64_t> precision) {
    if (family.empty()) throw Error("empty family");
    const FieldSpec spec = family.front().spec();
    for (const auto& f : family) {
        if (f.spec() != spec) throw SpecMismatchError("family members live over different fields");
    }
    std::int64_t budget = precision ? *precision
                                    : default_precision_budget(family.size(),
                                                               rational_scale(family));

    std::optional<FieldElement> point;
    if (strategy == RationalStrategy::Translation) {
        const std::size_t cap = spec.is_prime_field() ? spec.modulus() : 4096;
        for (std::size_t idx = 0; idx < cap && !point; ++idx) {
            FieldElement c = translation_candidate(idx, spec);
            const bool ok = std::all_of(family.begin(), family.end(), [&](const RationalFunction& f) {
                return !f.den_at(c).is_zero();
            });
            if (ok) point = std::move(c);
        }
        if (!point) throw Error("no valid translation point found within the bounded search");
    }

    // With an explicit precision the caller owns the window: one attempt and
    // an honest up-to-precision verdict. Otherwise grow the budget until the
    // found relation holds exactly.
    const int attempts = precision ? 1 : 4;
    for (int attempt = 0; attempt < attempts; ++attempt, budget *= 2) {
        std::vector<Series> expanded;
        expanded.reserve(family.size());
        for (const auto& f : family) {
            const RationalFunction g = point ? f.translated(*point) : f;
            if (auto exact = g.exact_value()) {
                expanded.push_back(std::move(*exact));
            } else {
                expanded.push_back(g.laurent_expansion(budget));
            }
        }
        Certificate cert = certify_univariate(expanded);
        if (cert.verdict == Verdict::Independent) {
            cert.independence->strategy = strategy;
            if (point) cert.independence->translation_point = point;
            return cert;
        }
        if (cert.verdict == Verdict::Dependent) return cert;
        if (cert.verdict == Verdict::DependentUpToPrecision) {
            // confirm over the rational functions themselves
            const auto& wts = cert.dependence->weights;
            RationalFunction acc = family.front().scaled(wts.front());
            for (std::size_t i = 1; i < family.size(); ++i) {
                acc = acc + family[i].scaled(wts[i]);
            }
            if (acc.is_zero()) {
                cert.verdict = Verdict::Dependent;
                cert.dependence->exact = true;
                return cert;
            }
            if (precision) return cert; // the window was pinned by the caller
            continue;                   // window too small, retry wider
        }
        return cert; // Inconclusive passes through
    }
    return inconclusive(InconclusiveReason::PrecisionExhausted);
}

// ---- verification --------------------------------------------------------

namespace {

bool weights_usable(const std::vector<FieldElement>& w, std::size_t n) {
    if (w.size() != n) return false;
    return std::any_of(w.begin(), w.end(), [](const FieldElement& v) { return !v.is_zero(); });
}

bool transform_invertible(const std::vector<std::vector<FieldElement>>& a, const FieldSpec& spec) {
    if (a.empty()) return false;
    for (const auto& row : a) {
        if (row.size() != a.size()) return false;
    }
    return !det_field(a, spec).is_zero();
}

} // namespace

bool verify_certificate(const std::vector<Series>& family, const Certificate& cert) {
    if (family.empty()) throw Error("empty family");
    const std::size_t n = family.size();
    switch (cert.verdict) {
    case Verdict::Dependent:
    case Verdict::DependentUpToPrecision: {
        if (!cert.dependence || !weights_usable(cert.dependence->weights, n)) {
            throw Error("malformed certificate: missing or unusable dependence weights");
        }
        const Series combo = series_linear_combine(family, cert.dependence->weights);
        if (cert.verdict == Verdict::Dependent) return combo.is_zero();
        return combo.is_zero_up_to_precision();
    }
    case Verdict::Independent: {
        if (!cert.independence) throw Error("malformed certificate: missing witness");
        const IndependenceWitness& w = *cert.independence;
        if (w.transform.size() != n || !transform_invertible(w.transform, family.front().spec())) {
            return false;
        }
        const std::vector<Series> g = apply_transform(family, w.transform);
        if (w.orders.size() != n) return false;
        std::vector<Monomial> lms;
        for (std::size_t k = 0; k < n; ++k) {
            const auto o = g[k].order();
            if (!o || *o != w.orders[k]) return false;
            lms.push_back(g[k].leading_monomial());
        }
        std::vector<std::int64_t> sorted = w.orders;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        const MMonomial& claimed = w.wronskian_leading_monomial;
        if (claimed.exponent.size() != 1 || claimed.coeff.is_zero()) return false;
        if (w.origin == WitnessOrigin::ClosedForm) {
            const auto closed = monomial_wronskian_closed_form(lms);
            return closed && closed->coeff == claimed.coeff &&
                   closed->exponent == claimed.exponent[0];
        }
        const Series wr = wronskian(family);
        if (wr.is_zero_up_to_precision()) return false;
        const Monomial lm = wr.leading_monomial();
        return lm.coeff == claimed.coeff && lm.exponent == claimed.exponent[0];
    }
    case Verdict::Inconclusive:
        throw Error("malformed certificate: an inconclusive verdict carries no witness");
    }
    return false;
}

bool verify_certificate(const std::vector<MSeries>& family, const Certificate& cert) {
    if (family.empty()) throw Error("empty family");
    const std::size_t n = family.size();
    switch (cert.verdict) {
    case Verdict::Dependent:
    case Verdict::DependentUpToPrecision: {
        if (!cert.dependence || !weights_usable(cert.dependence->weights, n)) {
            throw Error("malformed certificate: missing or unusable dependence weights");
        }
        const MSeries combo = mseries_linear_combine(family, cert.dependence->weights);
        if (cert.verdict == Verdict::Dependent) return combo.is_zero();
        return combo.is_zero_up_to_precision();
    }
    case Verdict::Independent: {
        if (!cert.independence) throw Error("malformed certificate: missing witness");
        const IndependenceWitness& w = *cert.independence;
        if (!w.genwronskian_spec) return false;
        if (w.transform.size() != n || !transform_invertible(w.transform, family.front().spec())) {
            return false;
        }
        const std::vector<MSeries> g = apply_transform(family, w.transform);
        if (w.leading_exponents.size() != n) return false;
        std::vector<MMonomial> lms;
        for (std::size_t k = 0; k < n; ++k) {
            if (g[k].is_zero_up_to_precision()) return false;
            lms.push_back(g[k].leading_monomial());
            if (lms.back().exponent != w.leading_exponents[k]) return false;
        }
        auto sorted = w.leading_exponents;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
        const auto closed = monomial_gen_wronskian_closed_form(lms, *w.genwronskian_spec);
        return closed && *closed == w.wronskian_leading_monomial;
    }
    case Verdict::Inconclusive:
        throw Error("malformed certificate: an inconclusive verdict carries no witness");
    }
    return false;
}

bool verify_certificate(const std::vector<RationalFunction>& family, const Certificate& cert) {
    if (family.empty()) throw Error("empty family");
    switch (cert.verdict) {
    case Verdict::Dependent:
    case Verdict::DependentUpToPrecision: {
        if (!cert.dependence || !weights_usable(cert.dependence->weights, family.size())) {
            throw Error("malformed certificate: missing or unusable dependence weights");
        }
        const auto& wts = cert.dependence->weights;
        RationalFunction acc = family.front().scaled(wts.front());
        for (std::size_t i = 1; i < family.size(); ++i) {
            acc = acc + family[i].scaled(wts[i]);
        }
        return acc.is_zero();
    }
    case Verdict::Independent: {
        if (!cert.independence) throw Error("malformed certificate: missing witness");
        const IndependenceWitness& w = *cert.independence;
        if (!w.strategy) return false;
        std::int64_t budget = default_precision_budget(family.size(), rational_scale(family));
        // make sure the witness orders fit inside the reproduced window
        for (auto o : w.orders) budget = std::max(budget, o + 2);
        std::vector<Series> expanded;
        for (const auto& f : family) {
            RationalFunction g = f;
            if (*w.strategy == RationalStrategy::Translation) {
                if (!w.translation_point) return false;
                if (f.den_at(*w.translation_point).is_zero()) return false;
                g = f.translated(*w.translation_point);
            }
            if (auto exact = g.exact_value()) {
                expanded.push_back(std::move(*exact));
            } else {
                expanded.push_back(g.laurent_expansion(budget));
            }
        }
        return verify_certificate(expanded, cert);
    }
    case Verdict::Inconclusive:
        throw Error("malformed certificate: an inconclusive verdict carries no witness");
    }
    return false;
}

} // namespace wrindep
