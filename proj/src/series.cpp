#include "wrindep/series.hpp"

#include <algorithm>

namespace wrindep {

namespace {

std::string xpow_str(std::int64_t e) {
    return e == 1 ? "x" : "x^" + std::to_string(e);
}

std::string term_str(const FieldElement& c, std::int64_t e) {
    if (e == 0) return c.str();
    if (c.is_one()) return xpow_str(e);
    if (c.spec().is_rationals() && c.rational() == -1) return "-" + xpow_str(e);
    return c.str() + "*" + xpow_str(e);
}

BigInt integer_binomial(std::int64_t n, std::int64_t k) {
    // (n)_k / k! computed exactly in Z; valid for negative n as well.
    BigInt num = 1, den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= BigInt(n - i);
        den *= BigInt(i + 1);
    }
    return num / den; // divides exactly
}

Series::Prec min_prec(Series::Prec a, Series::Prec b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

std::string Monomial::str() const {
    return term_str(coeff, exponent);
}

Series Series::zero_truncated(const FieldSpec& spec, std::int64_t precision) {
    return Series(spec, precision, {}, precision);
}

Series Series::monomial(const FieldElement& coeff, std::int64_t exponent, Prec precision) {
    Series s(coeff.spec(), exponent, {coeff}, precision);
    s.normalize();
    return s;
}

Series Series::from_coeffs(const FieldSpec& spec, std::int64_t offset,
                           std::vector<FieldElement> coeffs, Prec precision) {
    Series s(spec, offset, std::move(coeffs), precision);
    s.normalize();
    return s;
}

void Series::normalize() {
    if (precision_) {
        const std::int64_t end = offset_ + static_cast<std::int64_t>(coeffs_.size());
        if (end > *precision_) {
            coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, *precision_ - offset_)));
        }
    }
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        offset_ += static_cast<std::int64_t>(lead);
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.empty()) {
        offset_ = precision_ ? *precision_ : 0;
    }
}

std::int64_t Series::valuation_offset() const { return offset_; }

FieldElement Series::coeff(std::int64_t e) const {
    if (precision_ && e >= *precision_) {
        throw PrecisionError("coefficient of x^" + std::to_string(e) +
                             " is beyond the known precision " + std::to_string(*precision_));
    }
    if (e < offset_ || e >= offset_ + static_cast<std::int64_t>(coeffs_.size())) {
        return FieldElement::zero(spec_);
    }
    return coeffs_[static_cast<std::size_t>(e - offset_)];
}

std::optional<std::int64_t> Series::order() const {
    if (coeffs_.empty()) return std::nullopt;
    return offset_;
}

Monomial Series::leading_monomial() const {
    if (coeffs_.empty()) throw Error("leading monomial of a series with no known order");
    return Monomial{coeffs_.front(), offset_};
}

std::int64_t Series::degree() const {
    if (!is_exact()) throw Error("degree of a truncated series is not defined");
    if (coeffs_.empty()) throw Error("degree of the zero polynomial is not defined");
    return offset_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
}

Series Series::truncated(std::int64_t new_precision) const {
    const std::int64_t p = precision_ ? std::min(*precision_, new_precision) : new_precision;
    Series s(spec_, offset_, coeffs_, p);
    s.normalize();
    return s;
}

Series Series::derivative() const {
    if (precision_ && coeffs_.empty()) {
        return zero_truncated(spec_, *precision_ - 1);
    }
    if (precision_ && offset_ == 0 && *precision_ == 1) {
        throw PrecisionError("derivative would have an empty precision window");
    }
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size());
    std::int64_t out_offset = offset_ - 1;
    bool started = false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const std::int64_t e = offset_ + static_cast<std::int64_t>(i);
        if (e == 0 && !started) continue; // constant term dies, no x^-1 appears
        if (!started) {
            out_offset = e - 1;
            started = true;
        }
        out.push_back(coeffs_[i] * FieldElement::from_integer(e, spec_));
    }
    Prec p = precision_ ? Prec(*precision_ - 1) : std::nullopt;
    Series s(spec_, out_offset, std::move(out), p);
    s.normalize();
    return s;
}

Series Series::scaled(const FieldElement& c) const {
    if (spec_ != c.spec()) throw SpecMismatchError("scaling coefficient from a different field");
    if (c.is_zero()) return zero(spec_); // 0 * unknown tail is still exactly 0
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size());
    for (const auto& a : coeffs_) out.push_back(a * c);
    Series s(spec_, offset_, std::move(out), precision_);
    s.normalize();
    return s;
}

Series Series::shifted(std::int64_t k) const {
    Series s(spec_, offset_ + k, coeffs_, precision_ ? Prec(*precision_ + k) : std::nullopt);
    s.normalize();
    return s;
}

Series Series::operator-() const {
    return scaled(-FieldElement::one(spec_));
}

Series operator+(const Series& a, const Series& b) {
    if (a.spec_ != b.spec_) throw SpecMismatchError("adding series over different fields");
    const Series::Prec p = min_prec(a.precision_, b.precision_);
    if (a.coeffs_.empty() && b.coeffs_.empty()) {
        return p ? Series::zero_truncated(a.spec_, *p) : Series::zero(a.spec_);
    }
    const std::int64_t a_end = a.offset_ + static_cast<std::int64_t>(a.coeffs_.size());
    const std::int64_t b_end = b.offset_ + static_cast<std::int64_t>(b.coeffs_.size());
    std::int64_t lo = std::min(a.offset_, b.offset_);
    std::int64_t hi = std::max(a_end, b_end);
    if (p) {
        lo = std::min(lo, *p);
        hi = std::min(hi, *p);
    }
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo)));
    for (std::int64_t e = lo; e < hi; ++e) {
        FieldElement c = FieldElement::zero(a.spec_);
        if (e >= a.offset_ && e < a_end) c += a.coeffs_[static_cast<std::size_t>(e - a.offset_)];
        if (e >= b.offset_ && e < b_end) c += b.coeffs_[static_cast<std::size_t>(e - b.offset_)];
        out.push_back(std::move(c));
    }
    Series s(a.spec_, lo, std::move(out), p);
    s.normalize();
    return s;
}

Series operator-(const Series& a, const Series& b) {
    return a + (-b);
}

Series operator*(const Series& a, const Series& b) {
    if (a.spec_ != b.spec_) throw SpecMismatchError("multiplying series over different fields");
    if (a.is_zero() || b.is_zero()) return Series::zero(a.spec_);
    // valuation lower bounds; empty truncated windows sit at their precision
    const std::int64_t va = a.offset_;
    const std::int64_t vb = b.offset_;
    Series::Prec p;
    if (a.precision_) p = min_prec(p, Series::Prec(*a.precision_ + vb));
    if (b.precision_) p = min_prec(p, Series::Prec(*b.precision_ + va));
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        // zero up to precision times anything: known zero below p
        return p ? Series::zero_truncated(a.spec_, *p) : Series::zero(a.spec_);
    }
    const std::int64_t lo = va + vb;
    std::int64_t hi = lo + static_cast<std::int64_t>(a.coeffs_.size() + b.coeffs_.size()) - 1;
    if (p) hi = std::min(hi, *p);
    std::vector<FieldElement> out(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo)),
                                  FieldElement::zero(a.spec_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            const std::int64_t e = va + static_cast<std::int64_t>(i) + vb + static_cast<std::int64_t>(j);
            if (e >= hi) break;
            out[static_cast<std::size_t>(e - lo)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    Series s(a.spec_, lo, std::move(out), p);
    s.normalize();
    return s;
}

bool Series::identical_to(const Series& other) const {
    return spec_ == other.spec_ && offset_ == other.offset_ && precision_ == other.precision_ &&
           coeffs_ == other.coeffs_;
}

bool equal_on_common_window(const Series& a, const Series& b) {
    if (a.spec() != b.spec()) throw SpecMismatchError("comparing series over different fields");
    const Series::Prec p = min_prec(a.precision(), b.precision());
    if (a.is_zero_up_to_precision() && b.is_zero_up_to_precision()) return true;
    const std::int64_t lo = std::min(a.valuation_offset(), b.valuation_offset());
    std::int64_t cap = std::max(a.support_end(), b.support_end());
    if (p) cap = std::min(cap, *p);
    for (std::int64_t e = lo; e < cap; ++e) {
        if (a.coeff(e) != b.coeff(e)) return false;
    }
    return true;
}

Series series_linear_combine(const std::vector<Series>& family,
                             const std::vector<FieldElement>& weights) {
    if (family.empty()) throw Error("linear combination of an empty family");
    if (family.size() != weights.size()) throw Error("family/weights size mismatch");
    Series::Prec p;
    for (const auto& f : family) p = min_prec(p, f.precision());
    Series acc = family.front().scaled(weights.front());
    for (std::size_t i = 1; i < family.size(); ++i) {
        acc = acc + family[i].scaled(weights[i]);
    }
    // pessimistic: never report more precision than the weakest member
    return p ? acc.truncated(*p) : acc;
}

Series series_translate(const Series& f, const FieldElement& c,
                        std::optional<std::int64_t> out_precision) {
    if (!f.is_exact()) throw Error("translation is defined for exact (Laurent) polynomials only");
    if (f.spec() != c.spec()) throw SpecMismatchError("translation point from a different field");
    if (f.is_zero()) return f;
    const bool has_negative = f.valuation_offset() < 0;
    if (c.is_zero()) {
        if (has_negative) throw Error("translation by 0 leaves the pole at the origin");
        return f;
    }
    if (has_negative && !out_precision) {
        throw Error("translating negative exponents requires an output precision");
    }
    const FieldSpec& spec = f.spec();
    Series acc = has_negative ? Series::zero_truncated(spec, *out_precision) : Series::zero(spec);
    const std::int64_t lo = f.valuation_offset();
    const std::int64_t hi = f.degree();
    for (std::int64_t e = lo; e <= hi; ++e) {
        const FieldElement ce = f.coeff(e);
        if (ce.is_zero()) continue;
        std::vector<FieldElement> coeffs;
        if (e >= 0) {
            // (x+c)^e by the binomial theorem: sum_k C(e,k) c^(e-k) x^k
            coeffs.reserve(static_cast<std::size_t>(e) + 1);
            for (std::int64_t k = 0; k <= e; ++k) {
                FieldElement ck = FieldElement::from_integer(integer_binomial(e, k), spec);
                FieldElement cpow = FieldElement::one(spec);
                for (std::int64_t t = 0; t < e - k; ++t) cpow *= c;
                coeffs.push_back(ce * ck * cpow);
            }
            acc = acc + Series::from_coeffs(spec, 0, std::move(coeffs));
        } else {
            // (x+c)^e = c^e * sum_k C(e,k) (x/c)^k, a power series since c != 0
            const std::int64_t terms = std::max<std::int64_t>(0, *out_precision);
            coeffs.reserve(static_cast<std::size_t>(terms));
            FieldElement cinv = c.inverse();
            FieldElement cpow = FieldElement::one(spec);
            for (std::int64_t t = 0; t > e; --t) cpow *= cinv; // c^e with e < 0
            FieldElement xfac = FieldElement::one(spec);
            for (std::int64_t k = 0; k < terms; ++k) {
                FieldElement ck = FieldElement::from_integer(integer_binomial(e, k), spec);
                coeffs.push_back(ce * cpow * ck * xfac);
                xfac *= cinv;
            }
            acc = acc + Series::from_coeffs(spec, 0, std::move(coeffs), *out_precision);
        }
    }
    return acc;
}

Series series_inverse(const Series& f, std::int64_t precision) {
    auto o = f.order();
    if (!o || *o != 0) throw Error("series inversion requires a unit (nonzero constant term)");
    std::int64_t p = precision;
    if (f.precision()) p = std::min(p, *f.precision());
    if (p <= 0) throw PrecisionError("no room to invert: precision window is empty");
    const FieldSpec& spec = f.spec();
    const FieldElement inv0 = f.coeff(0).inverse();
    std::vector<FieldElement> g;
    g.reserve(static_cast<std::size_t>(p));
    g.push_back(inv0);
    for (std::int64_t k = 1; k < p; ++k) {
        FieldElement s = FieldElement::zero(spec);
        for (std::int64_t i = 1; i <= k; ++i) {
            s += f.coeff(i) * g[static_cast<std::size_t>(k - i)];
        }
        g.push_back(-s * inv0);
    }
    return Series::from_coeffs(spec, 0, std::move(g), p);
}

Series series_div_exact(const Series& f, const Series& g) {
    if (!f.is_exact() || !g.is_exact()) throw Error("exact division needs exact operands");
    if (g.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    if (f.is_zero()) return f;
    const FieldSpec& spec = f.spec();
    const std::int64_t fo = f.valuation_offset();
    const std::int64_t go = g.valuation_offset();
    std::vector<FieldElement> rem;
    for (std::int64_t e = fo; e < f.support_end(); ++e) rem.push_back(f.coeff(e));
    std::vector<FieldElement> den;
    for (std::int64_t e = go; e < g.support_end(); ++e) den.push_back(g.coeff(e));
    if (rem.size() < den.size()) throw Error("inexact polynomial division");
    std::vector<FieldElement> quot(rem.size() - den.size() + 1, FieldElement::zero(spec));
    const FieldElement lead_inv = den.back().inverse();
    for (std::size_t qi = quot.size(); qi-- > 0;) {
        FieldElement q = rem[qi + den.size() - 1] * lead_inv;
        quot[qi] = q;
        if (q.is_zero()) continue;
        for (std::size_t k = 0; k < den.size(); ++k) {
            rem[qi + k] -= q * den[k];
        }
    }
    for (const auto& r : rem) {
        if (!r.is_zero()) throw Error("inexact polynomial division");
    }
    return Series::from_coeffs(spec, fo - go, std::move(quot));
}

std::optional<Series> series_try_div_exact(const Series& f, const Series& g) {
    try {
        return series_div_exact(f, g);
    } catch (const DivisionByZeroError&) {
        throw;
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::string Series::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const FieldElement& c = coeffs_[i];
        if (c.is_zero()) continue;
        const std::int64_t e = offset_ + static_cast<std::int64_t>(i);
        if (out.empty()) {
            out = term_str(c, e);
        } else {
            const bool neg = c.spec().is_rationals() && c.rational() < 0;
            out += neg ? " - " : " + ";
            out += term_str(neg ? -c : c, e);
        }
    }
    if (out.empty()) out = "0";
    if (precision_) out += " @prec=" + std::to_string(*precision_);
    return out;
}

} // namespace wrindep
