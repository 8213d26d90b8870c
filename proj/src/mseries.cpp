#include "wrindep/mseries.hpp"

#include <algorithm>

namespace wrindep {

std::int64_t total_degree(const MultiIndex& a) {
    std::int64_t d = 0;
    for (auto e : a) d += e;
    return d;
}

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
    return a < b;
}

namespace {

std::string mono_xpart(const MultiIndex& e, const std::string& stem) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += stem + std::to_string(i + 1);
        if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out;
}

std::string mterm_str(const FieldElement& c, const MultiIndex& e, const std::string& stem) {
    const std::string xpart = mono_xpart(e, stem);
    if (xpart.empty()) return c.str();
    if (c.is_one()) return xpart;
    if (c.spec().is_rationals() && c.rational() == -1) return "-" + xpart;
    return c.str() + "*" + xpart;
}

MSeries::Prec min_prec(MSeries::Prec a, MSeries::Prec b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

void check_exponent(const MultiIndex& e, int num_vars) {
    if (static_cast<int>(e.size()) != num_vars) {
        throw Error("multi-index arity mismatch: expected " + std::to_string(num_vars) +
                    " variables, got " + std::to_string(e.size()));
    }
    for (auto v : e) {
        if (v < 0) throw Error("negative exponent in a multivariate series");
    }
}

} // namespace

std::string MMonomial::str() const {
    return mterm_str(coeff, exponent, "x");
}

MSeries MSeries::zero(const FieldSpec& spec, int num_vars, Prec precision) {
    if (num_vars < 1) throw Error("a multivariate series needs at least one variable");
    return MSeries(spec, num_vars, {}, precision);
}

MSeries MSeries::monomial(const FieldElement& coeff, MultiIndex exponent, Prec precision) {
    TermMap t;
    const int m = static_cast<int>(exponent.size());
    check_exponent(exponent, m);
    if (!coeff.is_zero()) t.emplace(std::move(exponent), coeff);
    MSeries s(coeff.spec(), m, std::move(t), precision);
    s.normalize();
    return s;
}

MSeries MSeries::from_terms(const FieldSpec& spec, int num_vars,
                            std::vector<std::pair<MultiIndex, FieldElement>> terms,
                            Prec precision) {
    if (num_vars < 1) throw Error("a multivariate series needs at least one variable");
    TermMap t;
    for (auto& [e, c] : terms) {
        check_exponent(e, num_vars);
        if (c.spec() != spec) throw SpecMismatchError("term coefficient from a different field");
        auto it = t.find(e);
        if (it == t.end()) {
            t.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
        }
    }
    MSeries s(spec, num_vars, std::move(t), precision);
    s.normalize();
    return s;
}

void MSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        const bool dead = it->second.is_zero() ||
                          (precision_ && total_degree(it->first) >= *precision_);
        it = dead ? terms_.erase(it) : std::next(it);
    }
}

MMonomial MSeries::leading_monomial() const {
    if (terms_.empty()) throw Error("leading monomial of a series with no known nonzero term");
    return MMonomial{terms_.begin()->second, terms_.begin()->first};
}

std::optional<std::int64_t> MSeries::min_total_degree() const {
    if (!terms_.empty()) {
        std::int64_t best = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_) best = std::min(best, total_degree(e));
        return best;
    }
    if (precision_) return *precision_;
    return std::nullopt; // exact zero
}

FieldElement MSeries::coeff(const MultiIndex& e) const {
    check_exponent(e, num_vars_);
    if (precision_ && total_degree(e) >= *precision_) {
        throw PrecisionError("coefficient beyond the total-degree precision bound");
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElement::zero(spec_) : it->second;
}

MSeries MSeries::truncated(std::int64_t new_precision) const {
    MSeries s(spec_, num_vars_, terms_, min_prec(precision_, Prec(new_precision)));
    s.normalize();
    return s;
}

MSeries MSeries::partial(int var) const {
    MultiIndex j(static_cast<std::size_t>(num_vars_), 0);
    if (var < 0 || var >= num_vars_) throw Error("variable index out of range");
    j[static_cast<std::size_t>(var)] = 1;
    return derivative(j);
}

MSeries MSeries::derivative(const MultiIndex& j) const {
    check_exponent(j, num_vars_);
    const std::int64_t total = total_degree(j);
    if (precision_ && *precision_ - total <= 0 && !terms_.empty()) {
        throw PrecisionError("partial derivative would have an empty precision window");
    }
    TermMap out;
    for (const auto& [e, c] : terms_) {
        MultiIndex shifted(e.size());
        FieldElement factor = FieldElement::one(spec_);
        bool dies = false;
        for (std::size_t t = 0; t < e.size(); ++t) {
            if (e[t] < j[t]) {
                dies = true;
                break;
            }
            shifted[t] = e[t] - j[t];
            factor *= falling_factorial(e[t], j[t], spec_);
        }
        if (dies || factor.is_zero()) continue; // factor can vanish in char p
        out.emplace(std::move(shifted), c * factor);
    }
    Prec p = precision_ ? Prec(*precision_ - total) : std::nullopt;
    MSeries s(spec_, num_vars_, std::move(out), p);
    s.normalize();
    return s;
}

MSeries MSeries::scaled(const FieldElement& c) const {
    if (spec_ != c.spec()) throw SpecMismatchError("scaling coefficient from a different field");
    if (c.is_zero()) return zero(spec_, num_vars_);
    TermMap out;
    for (const auto& [e, a] : terms_) out.emplace(e, a * c);
    MSeries s(spec_, num_vars_, std::move(out), precision_);
    s.normalize();
    return s;
}

MSeries MSeries::operator-() const {
    return scaled(-FieldElement::one(spec_));
}

MSeries operator+(const MSeries& a, const MSeries& b) {
    if (a.spec_ != b.spec_) throw SpecMismatchError("adding series over different fields");
    if (a.num_vars_ != b.num_vars_) throw Error("adding series in different variable counts");
    MSeries::TermMap out = a.terms_;
    for (const auto& [e, c] : b.terms_) {
        auto it = out.find(e);
        if (it == out.end()) {
            out.emplace(e, c);
        } else {
            it->second += c;
        }
    }
    MSeries s(a.spec_, a.num_vars_, std::move(out), min_prec(a.precision_, b.precision_));
    s.normalize();
    return s;
}

MSeries operator-(const MSeries& a, const MSeries& b) {
    return a + (-b);
}

MSeries operator*(const MSeries& a, const MSeries& b) {
    if (a.spec_ != b.spec_) throw SpecMismatchError("multiplying series over different fields");
    if (a.num_vars_ != b.num_vars_) throw Error("multiplying series in different variable counts");
    if (a.is_zero() || b.is_zero()) return MSeries::zero(a.spec_, a.num_vars_);
    const auto va = a.min_total_degree();
    const auto vb = b.min_total_degree();
    MSeries::Prec p;
    if (a.precision_) p = min_prec(p, MSeries::Prec(*a.precision_ + (vb ? *vb : 0)));
    if (b.precision_) p = min_prec(p, MSeries::Prec(*b.precision_ + (va ? *va : 0)));
    MSeries::TermMap out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            MultiIndex e(ea.size());
            for (std::size_t t = 0; t < e.size(); ++t) e[t] = ea[t] + eb[t];
            if (p && total_degree(e) >= *p) continue;
            FieldElement c = ca * cb;
            auto it = out.find(e);
            if (it == out.end()) {
                out.emplace(std::move(e), std::move(c));
            } else {
                it->second += c;
            }
        }
    }
    MSeries s(a.spec_, a.num_vars_, std::move(out), p);
    s.normalize();
    return s;
}

bool MSeries::identical_to(const MSeries& other) const {
    return spec_ == other.spec_ && num_vars_ == other.num_vars_ &&
           precision_ == other.precision_ && terms_ == other.terms_;
}

bool equal_on_common_precision(const MSeries& a, const MSeries& b) {
    if (a.spec() != b.spec()) throw SpecMismatchError("comparing series over different fields");
    if (a.num_vars() != b.num_vars()) return false;
    const MSeries::Prec p = min_prec(a.precision(), b.precision());
    auto within = [&](const MultiIndex& e) { return !p || total_degree(e) < *p; };
    for (const auto& [e, c] : a.terms()) {
        if (within(e) && (b.terms().count(e) == 0 || b.terms().at(e) != c)) return false;
    }
    for (const auto& [e, c] : b.terms()) {
        if (within(e) && a.terms().count(e) == 0) return false;
    }
    return true;
}

MSeries mseries_linear_combine(const std::vector<MSeries>& family,
                               const std::vector<FieldElement>& weights) {
    if (family.empty()) throw Error("linear combination of an empty family");
    if (family.size() != weights.size()) throw Error("family/weights size mismatch");
    MSeries::Prec p;
    for (const auto& f : family) p = min_prec(p, f.precision());
    MSeries acc = family.front().scaled(weights.front());
    for (std::size_t i = 1; i < family.size(); ++i) {
        acc = acc + family[i].scaled(weights[i]);
    }
    return p ? acc.truncated(*p) : acc;
}

std::string MSeries::str(const std::string& var_stem) const {
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (out.empty()) {
            out = mterm_str(c, e, var_stem);
        } else {
            const bool neg = c.spec().is_rationals() && c.rational() < 0;
            out += neg ? " - " : " + ";
            out += mterm_str(neg ? -c : c, e, var_stem);
        }
    }
    if (out.empty()) out = "0";
    if (precision_) out += " @prec=" + std::to_string(*precision_);
    return out;
}

} // namespace wrindep
